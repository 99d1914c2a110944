//! Hilbert series and Hilbert polynomials of graded quotients `k[x]/I`.
//!
//! The numerator of the Hilbert series of a monomial ideal is computed by
//! the usual pivot recursion; for a general homogeneous ideal the leading
//! term ideal of a Gröbner basis has the same Hilbert function.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Budget, GroebnerBasis, Ideal};
use crate::numeric::{binomial, Field, Rational, UniPoly};
use crate::polyring::{Monomial, MonomialOrder, PolyRing};

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

/// Keeps the divisibility-minimal elements, sorted by degree and then by
/// exponent vector.
pub fn minimalize(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.exponents().cmp(a.exponents()))
    });
    all.dedup();
    let mut kept: Vec<(Monomial, u64)> = Vec::with_capacity(all.len());
    for m in all {
        let mask = m.mask();
        if !kept.iter().any(|(k, km)| km & !mask == 0 && k.divides(&m)) {
            kept.push((m, mask));
        }
    }
    MonomialIdeal {
        nvars,
        generators: kept.into_iter().map(|(m, _)| m).collect(),
    }
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::InvalidInput(format!(
                "monomial in {} variables inside a {nvars}-variable ideal",
                g.nvars()
            )));
        }
        Ok(minimalize(nvars, gens))
    }

    /// Leading term ideal of a Gröbner basis.
    pub fn leading_terms<C: Field>(gb: &GroebnerBasis<C>) -> Self {
        minimalize(gb.ring().nvars(), gb.leading_monomials())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

type IntPoly = Vec<i64>;

fn overflow() -> Error {
    Error::OutOfRange("Hilbert numerator coefficient exceeds 64 bits".into())
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &[i64], b: &[i64]) -> Result<IntPoly> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x.checked_mul(*y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(overflow)?;
        }
    }
    Ok(trim(out))
}

fn add_shifted(a: &[i64], b: &[i64], shift: usize) -> Result<IntPoly> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len() + shift), 0);
    for (j, y) in b.iter().enumerate() {
        out[j + shift] = out[j + shift].checked_add(*y).ok_or_else(overflow)?;
    }
    Ok(trim(out))
}

/// `1 - t^e`
fn one_minus(e: u32) -> IntPoly {
    if e == 0 {
        return Vec::new();
    }
    let mut p = vec![0; e as usize + 1];
    p[0] = 1;
    p[e as usize] = -1;
    p
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    let mut seen = 0u64;
    for g in gens {
        let m = g.mask();
        if seen & m != 0 {
            // masks fold variables modulo 64, so confirm exactly
            return gens
                .iter()
                .enumerate()
                .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        }
        seen |= m;
    }
    true
}

/// The numerator `N(t)` with `HS(k[x]/I) = N(t) / (1-t)^nvars`.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> Result<IntPoly> {
    numerator_rec(&ideal.generators, ideal.nvars)
}

fn numerator_rec(gens: &[Monomial], nvars: usize) -> Result<IntPoly> {
    match gens {
        [] => return Ok(vec![1]),
        [g] => return Ok(one_minus(g.degree())),
        _ => {}
    }
    if pairwise_coprime(gens) {
        let mut acc = vec![1];
        for g in gens {
            acc = mul(&acc, &one_minus(g.degree()))?;
        }
        return Ok(acc);
    }
    // pivot on the variable that occurs in the most generators
    let mut counts = vec![0usize; nvars];
    for g in gens {
        for (i, e) in g.exponents().iter().enumerate() {
            if *e > 0 {
                counts[i] += 1;
            }
        }
    }
    let pivot = (0..nvars)
        .max_by(|a, b| counts[*a].cmp(&counts[*b]).then(b.cmp(a)))
        .expect("nvars > 0");
    let k = gens
        .iter()
        .map(|g| g.exponent(pivot))
        .filter(|e| *e > 0)
        .min()
        .expect("pivot occurs");
    // N(I) = N(I + (x^k)) + t^k N(I : x^k), and I + (x^k) splits off x^k
    let without: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exponent(pivot) == 0)
        .cloned()
        .collect();
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let e: Vec<u32> = g
                .exponents()
                .iter()
                .enumerate()
                .map(|(i, x)| if i == pivot { x.saturating_sub(k) } else { *x })
                .collect();
            Monomial::new(e)
        })
        .collect();
    let quotient = minimalize(nvars, quotient);
    let first = mul(&one_minus(k), &numerator_rec(&without, nvars)?)?;
    let second = numerator_rec(&quotient.generators, nvars)?;
    add_shifted(&first, &second, k as usize)
}

/// Hilbert numerator, pole order and Hilbert polynomial of `k[x]/I`,
/// with `χ = HP(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub dim: usize,
    pub hp: UniPoly,
    pub chi: i64,
}

impl HilbertData {
    pub fn from_numerator(numerator: Vec<i64>, nvars: usize) -> Result<Self> {
        let numerator = trim(numerator);
        let (q, dim) = reduce_pole(&numerator, nvars);
        let hp = hilbert_polynomial_from_reduced(&q, dim);
        let chi = hp.coeff(0).to_i64().ok_or_else(|| {
            Error::OutOfRange(format!("χ = {} is not a 64-bit integer", hp.coeff(0)))
        })?;
        Ok(HilbertData {
            numerator,
            dim,
            hp,
            chi,
        })
    }

    pub fn of_monomial_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        Self::from_numerator(hilbert_numerator(ideal)?, ideal.nvars)
    }

    pub fn of_groebner_basis<C: Field>(gb: &GroebnerBasis<C>) -> Result<Self> {
        Self::of_monomial_ideal(&MonomialIdeal::leading_terms(gb))
    }

    /// The Hilbert function value `dim (k[x]/I)_m` read off the series.
    pub fn hilbert_function(&self, m: usize, nvars: usize) -> BigInt {
        // coefficient of t^m in N(t) / (1-t)^nvars
        self.numerator
            .iter()
            .enumerate()
            .take_while(|(i, _)| *i <= m)
            .map(|(i, c)| match nvars {
                0 => BigInt::from(if i == m { *c } else { 0 }),
                _ => binomial((m - i + nvars - 1) as i64, nvars as u32 - 1) * c,
            })
            .sum()
    }
}

/// Divides `N` by `(1-t)` as often as possible: returns `Q` and
/// `d = nvars - (number of divisions)`. The zero numerator gives `d = 0`.
fn reduce_pole(numerator: &[i64], nvars: usize) -> (IntPoly, usize) {
    if numerator.is_empty() {
        return (Vec::new(), 0);
    }
    let mut q = numerator.to_vec();
    let mut d = nvars;
    while d > 0 && q.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q = (1-t) r means r_i = sum_{j<=i} q_j
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0i64;
        for c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = trim(r);
        d -= 1;
    }
    (q, d)
}

fn hilbert_polynomial_from_reduced(q: &[i64], dim: usize) -> UniPoly {
    if dim == 0 {
        return UniPoly::zero();
    }
    let mut hp = UniPoly::zero();
    for (i, c) in q.iter().enumerate() {
        let term =
            UniPoly::binomial(dim as i64 - 1 - i as i64, dim as u32 - 1).scale(&Rational::from(*c));
        hp = &hp + &term;
    }
    hp
}

/// Hilbert polynomial of `k[x]/I` from the numerator `N(t)`.
pub fn hilbert_polynomial(numerator: &[i64], nvars: usize) -> UniPoly {
    let (q, d) = reduce_pole(&trim(numerator.to_vec()), nvars);
    hilbert_polynomial_from_reduced(&q, d)
}

/// Runs Buchberger under `order` and returns the Hilbert data of the
/// quotient; `χ` is `HP(0)`.
pub fn euler_characteristic<C: Field>(
    ideal: &Ideal<C>,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<HilbertData> {
    let gb = buchberger(ideal, order, budget)?;
    HilbertData::of_groebner_basis(&gb)
}

/// Hilbert data of the quotient by the monomials listed as exponent
/// vectors, as stored in the Gröbner cache.
pub fn from_leading_exponents(ring: &Arc<PolyRing>, lms: &[Vec<u32>]) -> Result<HilbertData> {
    let ideal = MonomialIdeal::new(
        ring.nvars(),
        lms.iter().map(|e| Monomial::new(e.iter().copied())),
    )?;
    HilbertData::of_monomial_ideal(&ideal)
}
