//! Multivariate division with a heap-backed accumulator.
//!
//! The polynomial being reduced lives in a hash map keyed by monomial,
//! with a max-heap (in the ring order) over the keys to find the current
//! leading term. Subtracting `c * m * g` then costs `O(|g| log n)` instead of
//! a full merge.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use crate::numeric::Field;
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial};

struct Key {
    m: Monomial,
    order: MonomialOrder,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.m, &other.m)
    }
}

/// A reducer polynomial with its leading data cached.
pub(crate) struct Reducer<'a, C: Field> {
    pub lm: &'a Monomial,
    pub mask: u64,
    pub poly: &'a Polynomial<C>,
}

/// Finds a reducer for `m`: among those whose leading monomial divides it,
/// the one with fewest terms, lowest index first.
fn find_reducer<'a, C: Field>(
    m: &Monomial,
    reducers: &'a [Reducer<'a, C>],
) -> Option<&'a Reducer<'a, C>> {
    let mask = m.mask();
    let mut best: Option<&Reducer<C>> = None;
    for r in reducers {
        if r.mask & !mask == 0
            && r.lm.divides(m)
            && best.is_none_or(|b| r.poly.len() < b.poly.len())
        {
            best = Some(r);
        }
    }
    best
}

#[derive(Default, Debug, Clone, Copy)]
pub(crate) struct ReduceStats {
    pub steps: usize,
}

/// Computes a normal form of `f` modulo the reducers. With
/// `full == false` only the leading term is reduced (top reduction) and
/// the tail is returned untouched.
pub(crate) fn reduce<C: Field>(
    f: &Polynomial<C>,
    reducers: &[Reducer<'_, C>],
    full: bool,
    stats: &mut ReduceStats,
) -> Polynomial<C> {
    let ring: &Arc<PolyRing> = f.ring();
    let order = ring.order();
    if f.is_zero() {
        return f.clone();
    }
    let mut coeffs: HashMap<Monomial, C> = HashMap::with_capacity(f.len() * 4);
    let mut heap: BinaryHeap<Key> = BinaryHeap::with_capacity(f.len() * 4);
    for (m, c) in f.terms() {
        coeffs.insert(m.clone(), c.clone());
        heap.push(Key {
            m: m.clone(),
            order,
        });
    }
    let mut out: Vec<(Monomial, C)> = Vec::new();

    while let Some(Key { m, .. }) = heap.pop() {
        let Some(c) = coeffs.remove(&m) else {
            continue; // cancelled earlier
        };
        if c.is_zero() {
            continue;
        }
        let reducible = full || out.is_empty();
        match reducible.then(|| find_reducer(&m, reducers)).flatten() {
            Some(r) => {
                stats.steps += 1;
                let quotient = r.lm.divide_into(&m).expect("reducer divides");
                let (_, lc) = r.poly.leading_term().expect("reducers are nonzero");
                let factor = -(c.mul_ref(&lc.inv().expect("field coefficient")));
                for (n, d) in &r.poly.terms()[1..] {
                    let mono = n.mul(&quotient);
                    let delta = d.mul_ref(&factor);
                    match coeffs.entry(mono) {
                        Entry::Occupied(mut e) => {
                            let s = e.get().clone() + delta;
                            *e.get_mut() = s;
                        }
                        Entry::Vacant(e) => {
                            heap.push(Key {
                                m: e.key().clone(),
                                order,
                            });
                            e.insert(delta);
                        }
                    }
                }
            }
            None => out.push((m, c)),
        }
    }
    Polynomial::from_sorted_terms(ring, out)
}
