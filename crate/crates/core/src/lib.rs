//! Exact combinatorics of the singular Riemann-Roch correction term
//! together with a Gröbner basis and Hilbert polynomial engine for
//! computing Euler characteristics of thickened diagonals.

pub mod check;
pub mod diagonal;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod lambdaring;
pub mod numeric;
pub mod polyring;
pub mod rrcombinatorics;

pub use error::{Error, GroebnerStats, Result};
