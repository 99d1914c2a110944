use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::Field;
use crate::polyring::{same_ring, PolyRing, Polynomial};

/// A finitely generated ideal; generators are nonzero and share a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<C: Field> {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial<C>>,
}

impl<C: Field> Ideal<C> {
    /// Zero generators are dropped; repeated generators are kept.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial<C>>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// Removes generators that agree up to a nonzero scalar, keeping the
    /// first occurrence.
    pub fn dedup(self) -> Self {
        let mut seen = HashSet::new();
        let generators = self
            .generators
            .into_iter()
            .filter(|g| seen.insert(g.monic().expect("nonzero generator")))
            .collect();
        Ideal {
            ring: self.ring,
            generators,
        }
    }

    /// `self + other`: concatenated generators, deduplicated.
    pub fn sum(&self, other: &Ideal<C>) -> Result<Ideal<C>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(Ideal {
            ring: self.ring.clone(),
            generators,
        }
        .dedup())
    }

    /// `self^n`, generated by all products of `n` generators taken as a
    /// multiset, deduplicated.
    pub fn power(&self, n: u32) -> Result<Ideal<C>> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "ideal power with exponent 0; build the unit ideal explicitly".into(),
            ));
        }
        let base = self.clone().dedup();
        // (product, index of the last factor used); factors are taken in
        // non-decreasing index order so each multiset appears once.
        let mut level: Vec<(Polynomial<C>, usize)> = base
            .generators
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for (p, last) in &level {
                for (i, g) in base.generators.iter().enumerate().skip(*last) {
                    next.push((p.mul(g)?, i));
                }
            }
            level = next;
        }
        let generators = level
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| !p.is_zero())
            .collect();
        Ok(Ideal {
            ring: self.ring.clone(),
            generators,
        }
        .dedup())
    }
}
