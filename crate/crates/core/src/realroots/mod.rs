//! Exact univariate real algebra: polynomials over the rationals, root
//! isolation, Thom encodings, one-variable formulas with closed
//! rewriting, removal of infinitesimals, and resultants.

mod eps;
mod formula;
mod poly;
mod resultant;
mod roots;
mod thom;

pub use eps::{remove_infinitesimals, EpsMonomial, EpsPolynomial};
pub use formula::{
    ball, make_closed, realize, sublevel, Atom, Bound, Component, Formula, Realization, Rel,
};
pub use poly::UPoly;
pub use resultant::{resultant, BiPoly};
pub use roots::{
    cauchy_bound, isolate_roots, sturm_count, sturm_count_in, sturm_sequence, IsolatedRoot,
    RootInterval,
};
pub use thom::{compare, sign_at, thom_encode, ThomEncoding, ThomJson};

pub(crate) use roots::real_roots;

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(c: &num_rational::BigRational) -> String {
    poly::fmt_rational(c)
}

/// Parses `a`, `-a`, `a/b` or a decimal such as `0.25`.
pub fn parse_rational(s: &str) -> crate::Result<num_rational::BigRational> {
    let p = UPoly::parse(s)?;
    if !p.is_constant() {
        return Err(crate::Error::Parse(format!("`{s}` is not a number")));
    }
    Ok(p.coeff(0))
}
