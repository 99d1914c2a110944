use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// A prime field `F_p` with a word-sized modulus (`p < 2^63`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// Like [`PrimeField::new`], but also rejects characteristic 2.
    pub fn odd(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Self::new(p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, n: i64) -> PrimeFieldElement {
        PrimeFieldElement {
            residue: n.rem_euclid(self.p as i64) as u64,
            modulus: self.p,
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> PrimeFieldElement {
        let r = n.mod_floor(&BigInt::from(self.p));
        PrimeFieldElement {
            residue: r.to_u64().expect("residue fits in u64"),
            modulus: self.p,
        }
    }

    pub fn zero(&self) -> PrimeFieldElement {
        self.element(0)
    }

    pub fn one(&self) -> PrimeFieldElement {
        self.element(1)
    }
}

/// An element of `F_p`; carries its modulus so that arithmetic is
/// self-contained.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_one(&self) -> bool {
        self.residue == 1
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self> {
        if self.residue == 0 {
            return Err(Error::NotInvertible(format!("0 mod {}", self.modulus)));
        }
        let (mut a, mut b) = (self.residue as i128, self.modulus as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        debug_assert_eq!(a, 1);
        Ok(PrimeFieldElement {
            residue: x0.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = PrimeFieldElement {
            residue: 1 % self.modulus,
            modulus: self.modulus,
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// The representative in `(-p/2, p/2]`, handy for printing.
    pub fn symmetric(&self) -> i64 {
        if self.residue > self.modulus / 2 {
            self.residue as i64 - self.modulus as i64
        } else {
            self.residue as i64
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.residue + rhs.residue;
        let residue = if s >= self.modulus {
            s - self.modulus
        } else {
            s
        };
        PrimeFieldElement {
            residue,
            modulus: self.modulus,
        }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let residue = if self.residue >= rhs.residue {
            self.residue - rhs.residue
        } else {
            self.residue + self.modulus - rhs.residue
        };
        PrimeFieldElement {
            residue,
            modulus: self.modulus,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let residue = ((self.residue as u128 * rhs.residue as u128) % self.modulus as u128) as u64;
        PrimeFieldElement {
            residue,
            modulus: self.modulus,
        }
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let residue = if self.residue == 0 {
            0
        } else {
            self.modulus - self.residue
        };
        PrimeFieldElement {
            residue,
            modulus: self.modulus,
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
