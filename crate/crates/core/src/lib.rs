//! Simplicial replacements of covered spaces, exact rational homology,
//! persistence barcodes of finite filtrations, and a univariate toolkit of
//! Thom encodings used to reduce one-dimensional semi-algebraic sub-level
//! filtrations to finite ones.
//!
//! The main entry points are:
//!
//! * [`replacement::build_poset`] and [`replacement::simplicial_replacement`]
//!   for the recursive poset construction over a [`covers::CoverOracle`];
//! * [`simplicial::SimplicialComplex`] for complexes, nerves and Betti numbers;
//! * [`persistence::barcode`] for barcodes of finite filtrations;
//! * [`realroots`] for root isolation, Thom encodings and closed formulas;
//! * [`sa_filtration::sa_barcode_1d`] for the end-to-end one-variable pipeline.

pub mod covers;
pub mod error;
pub mod linalg;
pub mod persistence;
pub mod poset;
pub mod realroots;
pub mod replacement;
pub mod sa_filtration;
pub mod simplicial;

pub use covers::{BoxCoverOracle, BoxSet, CoverOracle, DeclaredCoverOracle, FormulaKey, IntBox};
pub use error::{Error, Result};
pub use persistence::{Bar, Barcode, Death, Filtration};
pub use poset::{Poset, PosetElement};
pub use realroots::{ThomEncoding, UPoly};
pub use replacement::{ReplacementResult, TupleOfFormulas};
pub use simplicial::SimplicialComplex;
