//! Split λ-ring computations in nilpotent truncations: symmetric and
//! exterior powers, the Adams operation ψ², the Bott class Θ² and exact
//! checks of the identities relating them.

mod bundle;
mod families;
mod truncated;

pub use bundle::{line, VirtualBundle};
pub use families::{
    duality_family_check, rde_family_check, sample_lines, split_bundles, tt_family_check,
};
pub use truncated::{TruncatedElement, TruncationRing};

use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::numeric::{binomial, Rational};
use crate::rrcombinatorics::{theta2_inverse_coefficients, tt_coefficients};

/// `u^n` against the Stirling route `Σ_j n^j Σ_v T[j][v] u^v` and the
/// binomial route `Σ_k C(n,k) (u-1)^k`, for `n = 0..n_max`. `u` must
/// have augmentation 1.
pub fn tt_identity_check(u: &TruncatedElement, n_max: u32) -> Result<CheckReport> {
    const NAME: &str = "tt_identity";
    if !u.augmentation().is_one() {
        return Err(Error::InvalidInput(format!(
            "{u} does not have augmentation 1"
        )));
    }
    let ring = u.ring();
    let delta = ring.order() as usize;
    let tt = tt_coefficients(delta);
    let powers: Vec<TruncatedElement> = (0..=delta as u32).map(|v| u.pow(v)).collect();
    let nil = u.sub(&TruncatedElement::one(ring))?;
    for n in 0..=n_max {
        let direct = u.pow(n);
        let mut stirling = TruncatedElement::zero(ring);
        for j in 0..=delta {
            let nj = Rational::from(n as i64).pow(j as u32);
            for (v, p) in powers.iter().enumerate() {
                stirling = stirling.add(&p.scale(&(&nj * tt.get(j, v))))?;
            }
        }
        let mut binom = TruncatedElement::zero(ring);
        for k in 0..=delta as u32 {
            binom = binom.add(
                &nil.pow(k)
                    .scale(&Rational::from_integer(binomial(n as i64, k))),
            )?;
        }
        if direct != stirling || direct != binom {
            return Ok(CheckReport::failed(
                NAME,
                n as usize + 1,
                format!(
                    "n = {n}: u^n = {direct}, Stirling route {stirling}, binomial route {binom}"
                ),
            ));
        }
    }
    Ok(CheckReport::passed(NAME, n_max as usize + 1))
}

/// Both sides of `Θ²(V)^{-1} = Σ_u c_u(δ) Sym^u(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RdeReport {
    pub delta: usize,
    /// Smallest `δ` for which the identity is guaranteed for this `V`.
    pub delta0: usize,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub equal: bool,
}

/// Compares the inverse Bott class of an effective split bundle with the
/// Stirling/Euler combination of its symmetric powers. The identity holds
/// whenever `δ >= δ₀(V)`, the nilpotency order of `O(1) - 1` on the
/// projective bundle; for a line `δ₀ <= N`, and in general
/// `δ₀ <= N + rank - 1`.
pub fn verify_rde(v: &VirtualBundle, delta: usize) -> Result<RdeReport> {
    let lhs = v.theta2()?.invert()?;
    let coeffs = theta2_inverse_coefficients(delta);
    let sym = v.sym_series(delta + 1);
    let mut rhs = TruncatedElement::zero(v.ring());
    for (c, s) in coeffs.iter().zip(&sym) {
        rhs = rhs.add(&s.scale(c))?;
    }
    Ok(RdeReport {
        delta,
        delta0: v.projective_bundle_nilpotency()?,
        equal: lhs == rhs,
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
    })
}

/// Checks `Sym_t(V) · Λ_{-t}(V) = 1` through `t^order`.
pub fn verify_sym_lambda_duality(v: &VirtualBundle, order: usize) -> CheckReport {
    const NAME: &str = "sym_lambda_duality";
    let sym = v.sym_series(order + 1);
    let lam = v.lam_series(order + 1);
    for n in 0..=order {
        let mut c = TruncatedElement::zero(v.ring());
        for k in 0..=n {
            let term = sym[n - k]
                .mul(&lam[k])
                .expect("same ring")
                .scale(&Rational::sign_power(k as u64));
            c = c.add(&term).expect("same ring");
        }
        let expected = if n == 0 {
            TruncatedElement::one(v.ring())
        } else {
            TruncatedElement::zero(v.ring())
        };
        if c != expected {
            return CheckReport::failed(NAME, n + 1, format!("coefficient of t^{n} is {c}"));
        }
    }
    CheckReport::passed(NAME, order + 1)
}

/// `χ(P^n, ·)` on `K(P^n) = Z[ε]/(ε^{n+1})` with `ε = O(1) - 1`:
/// `χ(ε^k) = C(n, k)`. The element must live in one generator with
/// truncation order `n`.
pub fn chi_projective_space(x: &TruncatedElement) -> Result<Rational> {
    let ring = x.ring();
    if ring.nvars() != 1 {
        return Err(Error::InvalidInput(
            "χ on P^n needs a single-generator truncation".into(),
        ));
    }
    let n = ring.order() as i64;
    Ok(x.terms()
        .map(|(e, c)| c * &Rational::from_integer(binomial(n, e[0])))
        .sum())
}

/// The cotangent bundle of `P²` as `3·O(-1) - O` in `K(P²)`.
pub fn cotangent_projective_plane() -> VirtualBundle {
    let ring = TruncationRing::new(1, 2);
    let h = line(&ring, &[Rational::one()]).expect("one generator");
    let h_inv = h.invert().expect("unit");
    VirtualBundle::new(
        &ring,
        vec![h_inv.clone(), h_inv.clone(), h_inv],
        vec![TruncatedElement::one(&ring)],
    )
    .expect("units")
}
