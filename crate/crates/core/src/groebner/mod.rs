//! Buchberger's algorithm with Gebauer–Möller pair elimination.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, then
//! smallest lcm in the monomial order, then insertion indices), which
//! makes the run fully deterministic.

mod cache;
mod ideal;
mod reduce;

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

pub use cache::{canonical_hash, GbCacheEntry, ALGORITHM_VERSION};
pub use ideal::Ideal;

use crate::error::{Error, GroebnerStats, Result};
use crate::numeric::Field;
use crate::polyring::{s_polynomial, same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};
use reduce::{reduce, ReduceStats, Reducer};

pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Resource limits for a Gröbner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    pub max_pairs: Option<usize>,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_time: None,
            max_pairs: None,
            max_degree: DEFAULT_DEGREE_CAP,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_time(secs: f64) -> Self {
        Budget {
            max_time: Some(Duration::from_secs_f64(secs)),
            ..Self::default()
        }
    }
}

/// A reduced Gröbner basis: monic, auto-reduced, sorted by leading
/// monomial (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C: Field> {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial<C>>,
    stats: GroebnerStats,
}

impl<C: Field> GroebnerBasis<C> {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<C>] {
        &self.elements
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, f: &Polynomial<C>) -> Result<Polynomial<C>> {
        normal_form(f, self)
    }

    /// Gröbner basis of `self + (extra)`, reusing the fact that all pairs
    /// inside `self` already reduce to zero.
    pub fn extend(&self, extra: &[Polynomial<C>], budget: &Budget) -> Result<GroebnerBasis<C>> {
        for g in extra {
            if !same_ring(g.ring(), &self.ring) {
                return Err(Error::RingMismatch);
            }
        }
        let mut engine = Engine::new(&self.ring, *budget);
        for g in &self.elements {
            engine.insert_known(g.clone());
        }
        engine.run(extra.to_vec())
    }
}

/// Computes the reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger<C: Field>(
    ideal: &Ideal<C>,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<C>> {
    let ring = if ideal.ring().order() == order {
        ideal.ring().clone()
    } else {
        ideal.ring().with_order(order)
    };
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.to_ring(&ring))
        .collect::<Result<Vec<_>>>()?;
    Engine::new(&ring, *budget).run(gens)
}

/// Remainder of `f` on division by `gb`: no term is divisible by a
/// leading monomial of the basis, and `f - result` lies in the ideal.
pub fn normal_form<C: Field>(f: &Polynomial<C>, gb: &GroebnerBasis<C>) -> Result<Polynomial<C>> {
    if !same_ring(f.ring(), &gb.ring) {
        return Err(Error::RingMismatch);
    }
    let reducers: Vec<_> = gb.elements.iter().map(reducer).collect();
    Ok(reduce(f, &reducers, true, &mut ReduceStats::default()))
}

fn reducer<C: Field>(p: &Polynomial<C>) -> Reducer<'_, C> {
    let lm = p.leading_monomial().expect("basis elements are nonzero");
    Reducer {
        lm,
        mask: lm.mask(),
        poly: p,
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

enum Task<C: Field> {
    Pair(Pair),
    Generator(Polynomial<C>),
}

impl<C: Field> Task<C> {
    fn degree(&self) -> u32 {
        match self {
            Task::Pair(p) => p.lcm.degree(),
            Task::Generator(g) => g.total_degree().unwrap_or(0),
        }
    }
}

struct Element<C: Field> {
    poly: Polynomial<C>,
    lm: Monomial,
    mask: u64,
    active: bool,
}

struct Engine<C: Field> {
    ring: Arc<PolyRing>,
    budget: Budget,
    basis: Vec<Element<C>>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
    start: Instant,
    unit: bool,
}

impl<C: Field> Engine<C> {
    fn new(ring: &Arc<PolyRing>, budget: Budget) -> Self {
        Engine {
            ring: ring.clone(),
            budget,
            basis: Vec::new(),
            pairs: Vec::new(),
            stats: GroebnerStats::default(),
            start: Instant::now(),
            unit: false,
        }
    }

    fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    /// Adds an element of an existing Gröbner basis: no pairs with the
    /// other known elements are needed.
    fn insert_known(&mut self, g: Polynomial<C>) {
        let lm = g.leading_monomial().expect("nonzero").clone();
        if lm.is_one() {
            self.unit = true;
        }
        let mask = lm.mask();
        self.basis.push(Element {
            poly: g,
            lm,
            mask,
            active: true,
        });
    }

    fn exhausted(&self, reason: &str) -> Error {
        let mut stats = self.stats.clone();
        stats.elapsed_ms = self.start.elapsed().as_millis();
        stats.basis_size = self.basis.iter().filter(|e| e.active).count();
        Error::BudgetExhausted {
            reason: reason.to_string(),
            stats,
        }
    }

    fn check_budget(&self, degree: u32) -> Result<()> {
        if degree > self.budget.max_degree {
            return Err(self.exhausted(&format!("degree cap {} exceeded", self.budget.max_degree)));
        }
        if let Some(t) = self.budget.max_time {
            if self.start.elapsed() > t {
                return Err(self.exhausted(&format!("time limit of {:.1}s", t.as_secs_f64())));
            }
        }
        if let Some(n) = self.budget.max_pairs {
            if self.stats.pairs_processed >= n {
                return Err(self.exhausted(&format!("pair limit of {n}")));
            }
        }
        Ok(())
    }

    fn reduce(&self, f: &Polynomial<C>) -> Polynomial<C> {
        let reducers: Vec<_> = self
            .basis
            .iter()
            .filter(|e| e.active)
            .map(|e| Reducer {
                lm: &e.lm,
                mask: e.mask,
                poly: &e.poly,
            })
            .collect();
        reduce(f, &reducers, true, &mut ReduceStats::default())
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: Polynomial<C>) {
        let hl = h.leading_monomial().expect("nonzero").clone();
        let k = self.basis.len();
        if hl.is_one() {
            self.unit = true;
        }

        // Candidate pairs (g, h) with the active elements, as (index, lcm, coprime).
        let cand: Vec<(usize, Monomial, bool)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| (i, e.lm.lcm(&hl), e.lm.is_coprime(&hl)))
            .collect();

        // Chain criterion among the new pairs: drop (g1, h) if some other
        // candidate's lcm properly divides lcm(g1, h), or divides it and
        // comes first. Coprime pairs survive this step so they can still
        // shadow others, then are removed by the product criterion.
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].2 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Among coprime-shadowed groups with equal lcm: if any pair with a
        // given lcm is coprime, all pairs with that lcm are redundant.
        let new_pairs: Vec<Pair> = cand
            .iter()
            .zip(&keep)
            .filter(|((_, l, coprime), k)| {
                **k && !*coprime && !cand.iter().any(|(_, l2, c2)| *c2 && l2 == l)
            })
            .map(|((i, l, _), _)| Pair {
                i: *i,
                j: k,
                lcm: l.clone(),
            })
            .collect();
        self.stats.pairs_pruned += cand.len() - new_pairs.len();

        // Prune old pairs (i, j) with lm(h) | lcm(i, j) whose lcm differs
        // from both lcm(i, h) and lcm(j, h).
        let before = self.pairs.len();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(&hl);
            let lj = basis[p.j].lm.lcm(&hl);
            li == p.lcm || lj == p.lcm
        });
        self.stats.pairs_pruned += before - self.pairs.len();
        self.pairs.extend(new_pairs);

        for e in self.basis.iter_mut() {
            if e.active && hl.divides(&e.lm) {
                e.active = false;
            }
        }
        let mask = hl.mask();
        self.basis.push(Element {
            poly: h,
            lm: hl,
            mask,
            active: true,
        });
        self.stats.basis_size = self.basis.iter().filter(|e| e.active).count();
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(i, _)| i)?;
        Some(self.pairs.swap_remove(best))
    }

    fn run(mut self, generators: Vec<Polynomial<C>>) -> Result<GroebnerBasis<C>> {
        let mut pending: Vec<Polynomial<C>> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        // Generators are fed in by ascending degree, then descending leading
        // monomial, so that the run is independent of input permutation
        // up to ties of identical polynomials.
        let order = self.order();
        pending.sort_by(|a, b| {
            let (da, db) = (a.total_degree(), b.total_degree());
            da.cmp(&db).then_with(|| {
                order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
            })
        });
        pending.reverse(); // pop from the back

        while !self.unit {
            let next_pair_deg = self.pairs.iter().map(|p| p.lcm.degree()).min();
            let next_gen_deg = pending.last().map(|g| g.total_degree().unwrap_or(0));
            let task = match (next_pair_deg, next_gen_deg) {
                (None, None) => break,
                (Some(_), None) => Task::Pair(self.pop_pair().expect("nonempty")),
                (None, Some(_)) => Task::Generator(pending.pop().expect("nonempty")),
                (Some(p), Some(g)) if g <= p => Task::Generator(pending.pop().expect("nonempty")),
                (Some(_), Some(_)) => Task::Pair(self.pop_pair().expect("nonempty")),
            };
            let deg = task.degree();
            self.check_budget(deg)?;
            self.stats.max_degree = self.stats.max_degree.max(deg);
            let poly = match task {
                Task::Pair(p) => {
                    self.stats.pairs_processed += 1;
                    s_polynomial(&self.basis[p.i].poly, &self.basis[p.j].poly)?
                }
                Task::Generator(g) => g,
            };
            let h = self.reduce(&poly);
            if h.is_zero() {
                self.stats.reductions_to_zero += 1;
                continue;
            }
            self.update(h.monic()?);
        }
        self.finish()
    }

    fn finish(self) -> Result<GroebnerBasis<C>> {
        let mut stats = self.stats.clone();
        stats.elapsed_ms = self.start.elapsed().as_millis();
        if self.unit {
            let one = Polynomial::one(&self.ring)?;
            stats.basis_size = 1;
            return Ok(GroebnerBasis {
                ring: self.ring,
                elements: vec![one],
                stats,
            });
        }
        let order = self.order();
        let mut active: Vec<&Element<C>> = self.basis.iter().filter(|e| e.active).collect();
        active.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
        // Inter-reduce: each element's tail against all other leading terms.
        let mut elements = Vec::with_capacity(active.len());
        for (idx, e) in active.iter().enumerate() {
            let others: Vec<_> = active
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, o)| Reducer {
                    lm: &o.lm,
                    mask: o.mask,
                    poly: &o.poly,
                })
                .collect();
            let (lm, lc) = e.poly.leading_term()?;
            let head = Polynomial::monomial(&self.ring, lm.clone(), lc.clone());
            let tail = e.poly.sub(&head)?;
            let tail = reduce(&tail, &others, true, &mut ReduceStats::default());
            elements.push(head.add(&tail)?.monic()?);
        }
        debug_assert!(elements.windows(2).all(|w| {
            order.cmp(
                w[0].leading_monomial().unwrap(),
                w[1].leading_monomial().unwrap(),
            ) == Ordering::Less
        }));
        stats.basis_size = elements.len();
        Ok(GroebnerBasis {
            ring: self.ring,
            elements,
            stats,
        })
    }
}
