use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::numeric::Field;
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// A ring, the ambient ideal and the diagonal forms in that ring.
pub type Adapted<C> = (Arc<PolyRing>, Ideal<C>, Vec<Polynomial<C>>);

/// `Y ×_S Y` for a projective scheme `Y ⊂ P^{k-1}`, embedded in
/// `P^{k²-1}` by the Segre map, together with the linear forms that cut
/// out the diagonal.
#[derive(Clone, Debug)]
pub struct DiagonalScenario<C: Field> {
    curve_ring: Arc<PolyRing>,
    curve: Vec<Polynomial<C>>,
    ring: Arc<PolyRing>,
    ambient: Ideal<C>,
    diagonal: Vec<Polynomial<C>>,
}

/// Segre variable `z_ij` for `x_i y_j`.
fn z(k: usize, i: usize, j: usize) -> usize {
    i * k + j
}

fn segre_var_names(k: usize) -> Vec<String> {
    let sep = if k > 10 { "_" } else { "" };
    (0..k)
        .flat_map(|i| (0..k).map(move |j| format!("z{i}{sep}{j}")))
        .collect()
}

/// Exponent vector of `x^a` as a sorted list of variable indices.
fn index_list(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| std::iter::repeat_n(i, *e as usize))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial::one(0)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for rest in monomials_of_degree(nvars - 1, degree - first) {
            let mut e = vec![first];
            e.extend_from_slice(rest.exponents());
            out.push(Monomial::new(e));
        }
    }
    out
}

impl<C: Field> DiagonalScenario<C> {
    /// Builds the scenario from homogeneous generators of `Y` in the ring
    /// of `curve`'s variables. The ambient ideal consists of the 2×2
    /// minors of `(z_ij)` and, for every generator `g` of degree `d`, the
    /// Segre images of `g(x)·m(y)` and `m(x)·g(y)` for all monomials `m`
    /// of degree `d`, over every way of pairing the `x` and `y` factors.
    pub fn build(curve_ring: &Arc<PolyRing>, curve: Vec<Polynomial<C>>) -> Result<Self> {
        if curve_ring.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let k = curve_ring.nvars();
        if k < 2 {
            return Err(Error::InvalidInput(
                "the curve ring needs at least two variables".into(),
            ));
        }
        let curve: Vec<Polynomial<C>> = curve.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &curve {
            if !crate::polyring::same_ring(g.ring(), curve_ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidInput(format!(
                    "generator {g} is not homogeneous"
                )));
            }
            if g.is_constant() {
                return Err(Error::InvalidInput(format!("generator {g} has degree 0")));
            }
        }
        let ring = PolyRing::new(
            segre_var_names(k),
            *curve_ring.domain(),
            MonomialOrder::Grevlex,
        )?;
        let n = k * k;
        let one = C::one_in(ring.domain())?;
        let var = |i: usize, j: usize| Monomial::var(n, z(k, i, j));

        let mut gens: Vec<Polynomial<C>> = Vec::new();
        for i in 0..k {
            for l in i + 1..k {
                for j in 0..k {
                    for m in j + 1..k {
                        let a = var(i, j).mul(&var(l, m));
                        let b = var(i, m).mul(&var(l, j));
                        gens.push(Polynomial::from_terms(
                            &ring,
                            vec![(a, one.clone()), (b, -one.clone())],
                        ));
                    }
                }
            }
        }

        let mut seen: HashSet<Polynomial<C>> =
            gens.iter().map(|g| g.monic().expect("nonzero")).collect();
        for g in &curve {
            let d = g.total_degree().expect("nonzero");
            for other in monomials_of_degree(k, d) {
                let other_idx = index_list(&other);
                for sigma in permutations(d as usize) {
                    for generator_on_x in [true, false] {
                        let terms = g
                            .terms()
                            .iter()
                            .map(|(t, c)| {
                                let gi = index_list(t);
                                let mut e = vec![0u32; n];
                                for (p, s) in sigma.iter().enumerate() {
                                    let (i, j) = if generator_on_x {
                                        (gi[p], other_idx[*s])
                                    } else {
                                        (other_idx[*s], gi[p])
                                    };
                                    e[z(k, i, j)] += 1;
                                }
                                (Monomial::new(e), c.clone())
                            })
                            .collect();
                        let p = Polynomial::from_terms(&ring, terms);
                        if !p.is_zero() && seen.insert(p.monic()?) {
                            gens.push(p);
                        }
                    }
                }
            }
        }

        let mut diagonal = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                diagonal.push(Polynomial::from_terms(
                    &ring,
                    vec![(var(i, j), one.clone()), (var(j, i), -one.clone())],
                ));
            }
        }
        let ambient = Ideal::new(&ring, gens)?;
        Ok(DiagonalScenario {
            curve_ring: curve_ring.clone(),
            curve,
            ring,
            ambient,
            diagonal,
        })
    }

    /// `P¹ × P¹`: the empty generator list in two variables.
    pub fn p1_squared(domain: crate::numeric::Domain) -> Result<Self> {
        let ring = PolyRing::new(["x", "y"], domain, MonomialOrder::Grevlex)?;
        Self::build(&ring, Vec::new())
    }

    pub fn curve_ring(&self) -> &Arc<PolyRing> {
        &self.curve_ring
    }

    pub fn curve(&self) -> &[Polynomial<C>] {
        &self.curve
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &Ideal<C> {
        &self.ambient
    }

    pub fn diagonal(&self) -> &[Polynomial<C>] {
        &self.diagonal
    }

    /// The same scenario after the linear change of coordinates
    /// `w_ij = z_ij - z_ji` (i < j), under which the diagonal forms are
    /// variables. The new variables are placed last, so under grevlex
    /// they are the cheapest. Euler characteristics are unchanged.
    pub fn adapted(&self) -> Result<Adapted<C>> {
        let k = self.curve_ring.nvars();
        let n = k * k;
        let mut names = Vec::with_capacity(n);
        let mut position = vec![0usize; n];
        let sep = if k > 10 { "_" } else { "" };
        for i in 0..k {
            for j in 0..k {
                if i >= j {
                    position[z(k, i, j)] = names.len();
                    names.push(format!("z{i}{sep}{j}"));
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                position[z(k, i, j)] = names.len();
                names.push(format!("w{i}{sep}{j}"));
            }
        }
        let ring = PolyRing::new(names, *self.ring.domain(), MonomialOrder::Grevlex)?;
        let one = C::one_in(ring.domain())?;
        // images of the old variables: z_ij for i < j becomes w_ij + z_ji
        let image: Vec<Polynomial<C>> = (0..n)
            .map(|v| {
                let (i, j) = (v / k, v % k);
                let own = Polynomial::monomial(&ring, Monomial::var(n, position[v]), one.clone());
                if i < j {
                    own.add(&Polynomial::monomial(
                        &ring,
                        Monomial::var(n, position[z(k, j, i)]),
                        one.clone(),
                    ))
                    .expect("same ring")
                } else {
                    own
                }
            })
            .collect();
        let map = |p: &Polynomial<C>| -> Result<Polynomial<C>> {
            let mut acc = Polynomial::zero(&ring);
            for (m, c) in p.terms() {
                let mut t = Polynomial::constant(&ring, c.clone());
                for (v, e) in m.exponents().iter().enumerate() {
                    if *e > 0 {
                        t = t.mul(&image[v].pow(*e)?)?;
                    }
                }
                acc = acc.add(&t)?;
            }
            Ok(acc)
        };
        let gens = self
            .ambient
            .generators()
            .iter()
            .map(map)
            .collect::<Result<Vec<_>>>()?;
        let diagonal = self.diagonal.iter().map(map).collect::<Result<Vec<_>>>()?;
        Ok((ring.clone(), Ideal::new(&ring, gens)?, diagonal))
    }
}
