//! Sparse multivariate polynomials over Q or F_p.

mod format;
mod monomial;
mod parse;
mod poly;

pub use format::IdealFile;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use poly::{s_polynomial, PolyRing, Polynomial};

pub(crate) use poly::same_ring;
