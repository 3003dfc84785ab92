use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("inconsistent intersection predicate: {0}")]
    InconsistentPredicate(String),
    #[error("poset elements come from different constructions")]
    MixedPoset,
    #[error("element {0} is not in the poset")]
    ElementNotInPoset(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("no cover declared for key {0}")]
    MissingCoverEntry(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("poset construction exceeded its work budget of {0}")]
    RecursionBudgetExceeded(usize),
    #[error("filtration index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("input set contains the zero polynomial")]
    ZeroPolynomialInInput,
    #[error("invalid Thom encoding: {0}")]
    InvalidThomEncoding(String),
    #[error("realization is not closed: endpoint {witness} is a limit point but not a member")]
    NotClosed { witness: String },
    #[error("the set is unbounded and no bounding radius was given")]
    UnboundedSet,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
