use std::sync::Arc;

use super::truncated::{TruncatedElement, TruncationRing};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// A power series in `t` with coefficients in a truncation ring, kept to
/// a fixed number of terms.
type Series = Vec<TruncatedElement>;

fn series_mul(a: &Series, b: &Series, len: usize) -> Result<Series> {
    let ring = a[0].ring().clone();
    let mut out = vec![TruncatedElement::zero(&ring); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y)?)?;
        }
    }
    Ok(out)
}

/// `Σ_k (s ℓ)^k t^k`, the inverse of `1 - s ℓ t`.
fn geometric(l: &TruncatedElement, sign: i64, len: usize) -> Series {
    let step = l.scale(&Rational::from(sign));
    let mut out = Vec::with_capacity(len);
    let mut p = TruncatedElement::one(l.ring());
    for _ in 0..len {
        out.push(p.clone());
        p = p.mul(&step).expect("same ring");
    }
    out
}

/// `1 + s ℓ t`
fn linear(l: &TruncatedElement, sign: i64, len: usize) -> Series {
    let mut out = vec![TruncatedElement::zero(l.ring()); len.max(2)];
    out[0] = TruncatedElement::one(l.ring());
    out[1] = l.scale(&Rational::from(sign));
    out.truncate(len);
    out
}

/// A virtual sum of line elements `Σ ℓ_i - Σ m_j` in a truncation ring,
/// standing in for a split bundle by the splitting principle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBundle {
    ring: Arc<TruncationRing>,
    positive: Vec<TruncatedElement>,
    negative: Vec<TruncatedElement>,
}

impl VirtualBundle {
    pub fn new(
        ring: &Arc<TruncationRing>,
        positive: Vec<TruncatedElement>,
        negative: Vec<TruncatedElement>,
    ) -> Result<Self> {
        for l in positive.iter().chain(&negative) {
            if l.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if l.augmentation().is_zero() {
                return Err(Error::NotInvertible(format!(
                    "line {l} has zero augmentation"
                )));
            }
        }
        Ok(VirtualBundle {
            ring: ring.clone(),
            positive,
            negative,
        })
    }

    pub fn effective(ring: &Arc<TruncationRing>, lines: Vec<TruncatedElement>) -> Result<Self> {
        Self::new(ring, lines, Vec::new())
    }

    pub fn ring(&self) -> &Arc<TruncationRing> {
        &self.ring
    }

    pub fn positive(&self) -> &[TruncatedElement] {
        &self.positive
    }

    pub fn negative(&self) -> &[TruncatedElement] {
        &self.negative
    }

    pub fn rank(&self) -> i64 {
        self.positive.len() as i64 - self.negative.len() as i64
    }

    pub fn is_effective(&self) -> bool {
        self.negative.is_empty()
    }

    /// The class `Σ ℓ_i - Σ m_j` as a ring element.
    pub fn class(&self) -> TruncatedElement {
        let mut acc = TruncatedElement::zero(&self.ring);
        for l in &self.positive {
            acc = acc.add(l).expect("same ring");
        }
        for m in &self.negative {
            acc = acc.sub(m).expect("same ring");
        }
        acc
    }

    /// Direct sum.
    pub fn sum(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        out.positive.extend(other.positive.iter().cloned());
        out.negative.extend(other.negative.iter().cloned());
        Ok(out)
    }

    /// `Sym_t(V) = Π (1 - ℓ_i t)^{-1} · Π (1 - m_j t)`, first `len` terms.
    pub fn sym_series(&self, len: usize) -> Series {
        let mut acc = geometric(&TruncatedElement::zero(&self.ring), 1, len);
        for l in &self.positive {
            acc = series_mul(&acc, &geometric(l, 1, len), len).expect("same ring");
        }
        for m in &self.negative {
            acc = series_mul(&acc, &linear(m, -1, len), len).expect("same ring");
        }
        acc
    }

    /// `Λ_t(V) = Π (1 + ℓ_i t) · Π (1 + m_j t)^{-1}`, first `len` terms.
    pub fn lam_series(&self, len: usize) -> Series {
        let mut acc = geometric(&TruncatedElement::zero(&self.ring), 1, len);
        for l in &self.positive {
            acc = series_mul(&acc, &linear(l, 1, len), len).expect("same ring");
        }
        for m in &self.negative {
            acc = series_mul(&acc, &geometric(m, -1, len), len).expect("same ring");
        }
        acc
    }

    pub fn sym(&self, k: usize) -> TruncatedElement {
        self.sym_series(k + 1).pop().expect("nonempty")
    }

    pub fn lam(&self, k: usize) -> TruncatedElement {
        self.lam_series(k + 1).pop().expect("nonempty")
    }

    /// `ψ²(V) = Sym²(V) - Λ²(V)`.
    pub fn adams2(&self) -> TruncatedElement {
        self.sym(2).sub(&self.lam(2)).expect("same ring")
    }

    /// `Θ²(V) = Σ_i Λ^i(V) = Π (1 + ℓ_i)`; only for effective bundles.
    pub fn theta2(&self) -> Result<TruncatedElement> {
        if !self.is_effective() {
            return Err(Error::InvalidInput(
                "Θ² is only defined here for effective bundles".into(),
            ));
        }
        let mut acc = TruncatedElement::one(&self.ring);
        for l in &self.positive {
            acc = acc.mul(&TruncatedElement::one(&self.ring).add(l)?)?;
        }
        Ok(acc)
    }

    /// Smallest `δ` with `(h - 1)^{δ+1} = 0` in `R[h] / Π (h - ℓ_i)`, the
    /// Grothendieck ring of the projective bundle with `h = O(1)`.
    pub fn projective_bundle_nilpotency(&self) -> Result<usize> {
        if !self.is_effective() || self.positive.is_empty() {
            return Err(Error::InvalidInput(
                "projective bundle of a non-effective or zero bundle".into(),
            ));
        }
        let r = self.positive.len();
        let zero = TruncatedElement::zero(&self.ring);
        let one = TruncatedElement::one(&self.ring);
        // f(h) = Π (h - ℓ_i), coefficients ascending, monic of degree r
        let mut f = vec![one.clone()];
        for l in &self.positive {
            let mut next = vec![zero.clone(); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c)?;
                next[i] = next[i].sub(&c.mul(l)?)?;
            }
            f = next;
        }
        // p = (h - 1)^k reduced mod f, as a vector of length r
        let mut p = vec![zero.clone(); r];
        p[0] = one.clone();
        let bound = r * (self.ring.order() as usize + 1);
        for k in 1..=bound {
            let mut shifted = vec![zero.clone(); r + 1];
            for (i, c) in p.iter().enumerate() {
                shifted[i + 1] = shifted[i + 1].add(c)?;
                shifted[i] = shifted[i].sub(c)?;
            }
            let top = shifted.pop().expect("r + 1 entries");
            for (i, c) in shifted.iter_mut().enumerate() {
                *c = c.sub(&top.mul(&f[i])?)?;
            }
            p = shifted;
            if p.iter().all(TruncatedElement::is_zero) {
                return Ok(k - 1);
            }
        }
        Err(Error::InvalidInput(
            "(h - 1) is not nilpotent; lines must have augmentation 1".into(),
        ))
    }
}

/// A line `1 + Σ c_i ε_i` from its linear coefficients.
pub fn line(ring: &Arc<TruncationRing>, linear: &[Rational]) -> Result<TruncatedElement> {
    if linear.len() > ring.nvars() {
        return Err(Error::OutOfRange(format!(
            "{} coefficients for {} generators",
            linear.len(),
            ring.nvars()
        )));
    }
    let mut terms = vec![(vec![0; ring.nvars()], Rational::one())];
    for (i, c) in linear.iter().enumerate() {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        terms.push((e, c.clone()));
    }
    TruncatedElement::from_terms(ring, terms)
}
