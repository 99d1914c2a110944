use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::numeric::{Domain, Field};

/// Variables, coefficient domain and monomial order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    domain: Domain,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        domain: Domain,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing {
            vars,
            domain,
            order,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn characteristic(&self) -> u64 {
        self.domain.characteristic()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and domain under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }
}

/// A sparse polynomial: nonzero terms strictly descending in the ring's
/// monomial order. The zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial<C: Field> {
    ring: Arc<PolyRing>,
    pub(crate) terms: Vec<(Monomial, C)>,
}

impl<C: Field> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Field> Eq for Polynomial<C> {}

impl<C: Field> std::hash::Hash for Polynomial<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Field> Polynomial<C> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: C) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Result<Self> {
        Ok(Self::constant(
            ring,
            C::from_integer(&BigInt::from(n), ring.domain())?,
        ))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Result<Self> {
        Self::from_int(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Result<Self> {
        let one = C::one_in(ring.domain())?;
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), one)],
        })
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: C) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.remove(&m) {
                Some(old) => {
                    let s = old + c;
                    if !s.is_zero() {
                        acc.insert(m, s);
                    }
                }
                None if !c.is_zero() => {
                    acc.insert(m, c);
                }
                None => {}
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already sorted, nonzero and distinct.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &C)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.leading_term().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Result<&C> {
        self.leading_term().map(|t| t.1)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &C| if negate_other { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), sign(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a.1.clone() + sign(&b.1);
                    if !s.is_zero() {
                        out.push((a.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul_ref(cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul_ref(c)))
                .collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial keeps the term order.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.mul_ref(c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading_coeff()?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.inv()?))
    }

    /// Re-sorts into a ring with the same variables and domain but another
    /// order.
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Result<Self> {
        if ring.vars() != self.ring.vars() || ring.domain() != self.ring.domain() {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Evaluates with all variables substituted by field elements.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidInput(
                "evaluation point has wrong length".into(),
            ));
        }
        let mut acc = C::zero_in(self.ring.domain())?;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

/// `S(f, g) = (L/lt(f)) f - (L/lt(g)) g` with `L = lcm(lm f, lm g)`,
/// scaled so both leading terms cancel.
pub fn s_polynomial<C: Field>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    f.check_ring(g)?;
    let (mf, cf) = f.leading_term()?;
    let (mg, cg) = g.leading_term()?;
    let l = mf.lcm(mg);
    let uf = mf.divide_into(&l).expect("lcm is a multiple");
    let ug = mg.divide_into(&l).expect("lcm is a multiple");
    let a = f.mul_term(&uf, &cf.inv()?);
    let b = g.mul_term(&ug, &cg.inv()?);
    a.sub(&b)
}

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.display(self.ring.vars()))?;
            } else {
                write!(f, "{mag}*{}", m.display(self.ring.vars()))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
