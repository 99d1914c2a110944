//! Exact arithmetic: rationals, word-sized prime fields, binomials and a
//! small dense univariate polynomial type over Q.

mod binomial;
mod prime;
mod rational;
mod upoly;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

pub use binomial::{binomial, binomial_poly, binomial_rational, factorial, falling_factorial};
pub use prime::{is_prime, PrimeField, PrimeFieldElement};
pub use rational::Rational;
pub use upoly::UniPoly;

use crate::error::{Error, Result};

/// Coefficient domain of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Rationals,
    Prime(PrimeField),
}

impl Domain {
    /// Builds the domain for characteristic `p`, where `0` means Q.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(Domain::Rationals)
        } else {
            Ok(Domain::Prime(PrimeField::new(p)?))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Rationals => 0,
            Domain::Prime(f) => f.modulus(),
        }
    }
}

/// A field usable as polynomial coefficients.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Maps an integer into the field described by `domain`; fails if the
    /// domain does not match the coefficient type.
    fn from_integer(n: &BigInt, domain: &Domain) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    fn domain(&self) -> Domain;

    fn zero_in(domain: &Domain) -> Result<Self> {
        Self::from_integer(&BigInt::from(0), domain)
    }

    fn one_in(domain: &Domain) -> Result<Self> {
        Self::from_integer(&BigInt::from(1), domain)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

impl Field for Rational {
    fn from_integer(n: &BigInt, domain: &Domain) -> Result<Self> {
        match domain {
            Domain::Rationals => Ok(Rational::from(n)),
            Domain::Prime(f) => Err(Error::DomainMismatch(format!(
                "rational coefficients requested in characteristic {}",
                f.modulus()
            ))),
        }
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn inv(&self) -> Result<Self> {
        Rational::inv(self)
    }
    fn domain(&self) -> Domain {
        Domain::Rationals
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Field for PrimeFieldElement {
    fn from_integer(n: &BigInt, domain: &Domain) -> Result<Self> {
        match domain {
            Domain::Prime(f) => Ok(f.from_bigint(n)),
            Domain::Rationals => Err(Error::DomainMismatch(
                "prime-field coefficients requested over Q".into(),
            )),
        }
    }
    fn is_zero(&self) -> bool {
        PrimeFieldElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        PrimeFieldElement::is_one(self)
    }
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn domain(&self) -> Domain {
        Domain::Prime(PrimeField::new(self.modulus()).expect("modulus was validated"))
    }
    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }
}
