//! Stirling, Euler and Bernoulli numbers, the coefficient tables of the
//! correction term, and the closed-form identities built on them.

mod coefficients;
mod identities;
mod numbers;

pub use coefficients::{
    gti_coefficients, gti_tail, gti_tail_check, gti_tail_with, theta2_inverse_coefficients,
    tt_coefficients, GtiCoefficients, TTCoefficients,
};
pub use identities::{
    alternating_power_sum, divisibility_check, kim_check, kim_formula, surface_identity_check,
    surface_identity_sides,
};
pub use numbers::{
    bernoulli_numbers, euler_from_bernoulli, euler_numbers, euler_vs_bernoulli_check,
    euler_vs_bernoulli_check_with, stirling_check, stirling_first, StirlingTable,
};
