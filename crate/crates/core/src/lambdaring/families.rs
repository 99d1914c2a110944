//! Fixed families of split bundles for the suite-level checks.

use std::sync::Arc;

use super::{
    tt_identity_check, verify_rde, verify_sym_lambda_duality, TruncatedElement, TruncationRing,
    VirtualBundle,
};
use crate::check::CheckReport;
use crate::error::Result;
use crate::numeric::Rational;

/// Five unipotent lines in `Q[ε1, ε2]/(deg > N)`, one of them trivial;
/// terms above the truncation order are dropped.
pub fn sample_lines(ring: &Arc<TruncationRing>) -> Vec<TruncatedElement> {
    let q = Rational::frac;
    let specs: [&[(&[u32], Rational)]; 5] = [
        &[],
        &[(&[1, 0], q(1, 1))],
        &[(&[1, 0], q(2, 1)), (&[0, 1], q(-1, 1))],
        &[(&[1, 0], q(-1, 2)), (&[0, 1], q(1, 1)), (&[2, 0], q(1, 1))],
        &[(&[0, 1], q(1, 1)), (&[1, 1], q(-1, 1)), (&[0, 3], q(3, 2))],
    ];
    specs
        .iter()
        .map(|terms| {
            let inc = std::iter::once((vec![0, 0], Rational::one()));
            TruncatedElement::from_terms(
                ring,
                inc.chain(terms.iter().map(|(e, c)| (e.to_vec(), c.clone()))),
            )
            .expect("two generators")
        })
        .collect()
}

/// Multisets of size `1..=rank_max` drawn from `pool`, as index lists.
fn multisets(pool: usize, rank_max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..pool).map(|i| vec![i]).collect();
    while let Some(m) = stack.pop() {
        if m.len() < rank_max {
            let last = *m.last().expect("nonempty");
            for i in last..pool {
                let mut next = m.clone();
                next.push(i);
                stack.push(next);
            }
        }
        out.push(m);
    }
    out.sort();
    out
}

/// Every effective split bundle of rank `<= rank_max` built from
/// [`sample_lines`].
pub fn split_bundles(ring: &Arc<TruncationRing>, rank_max: usize) -> Vec<VirtualBundle> {
    let pool = sample_lines(ring);
    multisets(pool.len(), rank_max)
        .into_iter()
        .map(|m| {
            VirtualBundle::effective(ring, m.iter().map(|&i| pool[i].clone()).collect())
                .expect("unipotent")
        })
        .collect()
}

/// The Bott-inverse identity over [`split_bundles`] for truncation
/// orders `0..=order_max`: equality at `δ₀(V)`, `δ₀(V) + 2` and `N + 2`
/// with identical sides, `δ₀(V) <= N + rank - 1`, and equality at `δ = N`
/// for lines.
pub fn rde_family_check(order_max: u32, rank_max: usize) -> Result<CheckReport> {
    const NAME: &str = "eqrde";
    let mut cases = 0;
    for n in 0..=order_max {
        let ring = TruncationRing::new(2, n);
        for v in split_bundles(&ring, rank_max) {
            let rank = v.rank() as usize;
            let base = verify_rde(&v, 0)?.delta0;
            if base > n as usize + rank - 1 {
                return Ok(CheckReport::failed(
                    NAME,
                    cases,
                    format!("N = {n}, rank {rank}: δ₀ = {base} exceeds N + rank - 1"),
                ));
            }
            let mut deltas = vec![base, base + 2, n as usize + 2];
            if rank == 1 {
                deltas.push(n as usize);
            }
            let first = verify_rde(&v, deltas[0])?;
            for delta in deltas {
                let rep = verify_rde(&v, delta)?;
                cases += 1;
                if !rep.equal || rep.lhs != first.lhs {
                    return Ok(CheckReport::failed(
                        NAME,
                        cases,
                        format!(
                            "N = {n}, V = {:?}, δ = {delta}: lhs {} rhs {}",
                            v.positive(),
                            rep.lhs,
                            rep.rhs
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::passed(NAME, cases))
}

/// [`tt_identity_check`] for every sample line in truncation orders
/// `0..=order_max`.
pub fn tt_family_check(order_max: u32, n_max: u32) -> Result<CheckReport> {
    const NAME: &str = "tt_identity";
    let mut cases = 0;
    for n in 0..=order_max {
        let ring = TruncationRing::new(2, n);
        for u in sample_lines(&ring) {
            let rep = tt_identity_check(&u, n_max)?;
            cases += rep.cases;
            if !rep.pass {
                return Ok(CheckReport::failed(
                    NAME,
                    cases,
                    format!("N = {n}, u = {u}: {}", rep.failure.unwrap_or_default()),
                ));
            }
        }
    }
    Ok(CheckReport::passed(NAME, cases))
}

/// [`verify_sym_lambda_duality`] for effective bundles of rank
/// `<= rank_max` and their differences with a sample line, in
/// `Q[ε1, ε2]/(deg > 3)`.
pub fn duality_family_check(rank_max: usize, order: usize) -> CheckReport {
    const NAME: &str = "sym_lambda_duality";
    let ring = TruncationRing::new(2, 3);
    let lines = sample_lines(&ring);
    let mut cases = 0;
    for v in split_bundles(&ring, rank_max) {
        let virt = VirtualBundle::new(&ring, v.positive().to_vec(), vec![lines[3].clone()])
            .expect("unipotent");
        for w in [v, virt] {
            let rep = verify_sym_lambda_duality(&w, order);
            cases += rep.cases;
            if !rep.pass {
                return CheckReport::failed(NAME, cases, rep.failure.unwrap_or_default());
            }
        }
    }
    CheckReport::passed(NAME, cases)
}
