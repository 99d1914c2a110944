use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// `Q[ε_1..ε_r]` modulo all monomials of total degree greater than `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationRing {
    nvars: usize,
    order: u32,
}

impl TruncationRing {
    pub fn new(nvars: usize, order: u32) -> Arc<Self> {
        Arc::new(TruncationRing { nvars, order })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

/// An element of a [`TruncationRing`], stored sparsely by ε-exponent
/// vector.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedElement {
    ring: Arc<TruncationRing>,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

fn check_ring(a: &TruncatedElement, b: &TruncatedElement) -> Result<()> {
    match Arc::ptr_eq(&a.ring, &b.ring) || a.ring == b.ring {
        true => Ok(()),
        false => Err(Error::RingMismatch),
    }
}

impl TruncatedElement {
    pub fn zero(ring: &Arc<TruncationRing>) -> Self {
        TruncatedElement {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<TruncationRing>, c: Rational) -> Self {
        let mut e = Self::zero(ring);
        if !c.is_zero() {
            e.coeffs.insert(vec![0; ring.nvars], c);
        }
        e
    }

    pub fn one(ring: &Arc<TruncationRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    /// `ε_i`; zero when the truncation order is 0.
    pub fn eps(ring: &Arc<TruncationRing>, i: usize) -> Result<Self> {
        if i >= ring.nvars {
            return Err(Error::OutOfRange(format!(
                "ε_{} in a ring with {} generators",
                i + 1,
                ring.nvars
            )));
        }
        let mut e = vec![0; ring.nvars];
        e[i] = 1;
        Self::from_terms(ring, [(e, Rational::one())])
    }

    /// Builds an element from (exponent vector, coefficient) pairs; terms
    /// beyond the truncation are dropped.
    pub fn from_terms(
        ring: &Arc<TruncationRing>,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} in a ring with {} generators",
                    e.len(),
                    ring.nvars
                )));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() || e.iter().sum::<u32>() > self.ring.order {
            return;
        }
        match self.coeffs.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<TruncationRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Constant term.
    pub fn augmentation(&self) -> Rational {
        self.coeffs
            .get(&vec![0; self.ring.nvars])
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of the given ε-monomial.
    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_ring(self, other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.ring);
        if !c.is_zero() {
            out.coeffs = self
                .coeffs
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_ring(self, other)?;
        let mut out = Self::zero(&self.ring);
        for (ea, ca) in &self.coeffs {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.coeffs {
                if da + eb.iter().sum::<u32>() > self.ring.order {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Inverse of a unit: `u = a (1 + n)` with `n` nilpotent gives
    /// `u^{-1} = a^{-1} Σ_{k<=N} (-n)^k`.
    pub fn invert(&self) -> Result<Self> {
        let a = self.augmentation();
        if a.is_zero() {
            return Err(Error::NotInvertible(format!("{self} (zero augmentation)")));
        }
        let a_inv = a.inv()?;
        let minus_n = self.scale(&a_inv).sub(&Self::one(&self.ring))?.neg();
        let mut sum = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for _ in 0..self.ring.order {
            power = power.mul(&minus_n)?;
            sum = sum.add(&power)?;
        }
        Ok(sum.scale(&a_inv))
    }

    /// JSON object mapping printed ε-monomials to rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| (monomial_name(e), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| **k > 0)
        .map(|(i, k)| {
            if *k == 1 {
                format!("e{}", i + 1)
            } else {
                format!("e{}^{k}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for TruncatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| match monomial_name(e).as_str() {
                "1" => c.to_string(),
                m => format!("{c}*{m}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for TruncatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedElement({self})")
    }
}
