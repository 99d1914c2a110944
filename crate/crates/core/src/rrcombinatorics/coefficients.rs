use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::numbers::{euler_numbers, stirling_first};
use crate::check::CheckReport;
use crate::numeric::{factorial, Rational, UniPoly};

/// `T[j][u] = Σ_{k=u}^{δ} (-1)^{k-u} s(k, j) / (u! (k-u)!)`, the
/// coefficient of `x^j r^u` in `TT(x, r - 1)` truncated after `(r-1)^δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTCoefficients {
    pub delta: usize,
    /// `t[j][u]` for `0 <= j, u <= δ`.
    pub t: Vec<Vec<Rational>>,
}

impl TTCoefficients {
    pub fn get(&self, j: usize, u: usize) -> &Rational {
        &self.t[j][u]
    }
}

pub fn tt_coefficients(delta: usize) -> TTCoefficients {
    let s = stirling_first(delta);
    let fact = |n: usize| Rational::from_integer(factorial(n as u32));
    let t = (0..=delta)
        .map(|j| {
            (0..=delta)
                .map(|u| {
                    (u..=delta)
                        .map(|k| {
                            Rational::sign_power((k - u) as u64)
                                * Rational::from_integer(s.get(k, j))
                                / (fact(u) * fact(k - u))
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    TTCoefficients { delta, t }
}

/// Tail weights `c_u(δ) = (1/2) Σ_j E_j T[j][u]` for `u = 0..δ`, computed
/// with the given Euler table.
pub fn gti_tail_with(delta: usize, euler: &[Rational]) -> Vec<Rational> {
    let tt = tt_coefficients(delta);
    (0..=delta)
        .map(|u| {
            (0..=delta)
                .map(|j| &euler[j] * tt.get(j, u))
                .sum::<Rational>()
                * Rational::frac(1, 2)
        })
        .collect()
}

fn tail_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<Rational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Rational>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `c_0(δ) .. c_δ(δ)`, memoized per `δ`.
pub fn gti_tail(delta: usize) -> Arc<Vec<Rational>> {
    if let Some(t) = tail_cache().lock().expect("cache lock").get(&delta) {
        return t.clone();
    }
    let tail = Arc::new(gti_tail_with(delta, &euler_numbers(delta)));
    tail_cache()
        .lock()
        .expect("cache lock")
        .entry(delta)
        .or_insert(tail)
        .clone()
}

/// Weights of the correction term with parameters `δ` and `λ`: the
/// value on graded pieces `a_k` is
/// `(-1)^λ Σ_u c_u(δ) a_{u+λ} + Σ_{k<λ} (-1)^k a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtiCoefficients {
    pub delta: usize,
    pub lambda: usize,
    /// `c_u(δ)`, before the sign `(-1)^λ`.
    pub tail: Vec<Rational>,
    pub prefix_signs: Vec<i64>,
}

impl GtiCoefficients {
    pub fn tail_sign(&self) -> Rational {
        Rational::sign_power(self.lambda as u64)
    }

    /// The coefficient of `a_k` in the assembled combination.
    pub fn weight(&self, k: usize) -> Rational {
        let mut w = Rational::zero();
        if k < self.lambda {
            w += Rational::from(self.prefix_signs[k]);
        }
        if k >= self.lambda && k - self.lambda <= self.delta {
            w += self.tail_sign() * &self.tail[k - self.lambda];
        }
        w
    }

    /// Number of graded pieces the combination reads.
    pub fn support_len(&self) -> usize {
        self.lambda + self.delta + 1
    }
}

pub fn gti_coefficients(delta: usize, lambda: usize) -> GtiCoefficients {
    GtiCoefficients {
        delta,
        lambda,
        tail: gti_tail(delta).as_ref().clone(),
        prefix_signs: (0..lambda)
            .map(|k| if k % 2 == 0 { 1 } else { -1 })
            .collect(),
    }
}

/// Coefficients of the `Sym^u` combination inverting the Bott class; they
/// coincide with the correction-term tail.
pub fn theta2_inverse_coefficients(delta: usize) -> Arc<Vec<Rational>> {
    gti_tail(delta)
}

/// `Σ_u c_u(δ) = 1/2` and `Σ_u c_u(δ) x^u ≡ (1+x)^{-1} mod (x-1)^{δ+1}`
/// for `δ = 0..=delta_max`, the latter checked as
/// `(1+x) Σ_u c_u x^u ≡ 1`.
pub fn gti_tail_check(delta_max: usize, euler: &[Rational]) -> CheckReport {
    const NAME: &str = "gti_tail";
    if euler.len() <= delta_max {
        return CheckReport::failed(
            NAME,
            0,
            format!("Euler table has only {} entries", euler.len()),
        );
    }
    for delta in 0..=delta_max {
        let tail = gti_tail_with(delta, euler);
        let sum: Rational = tail.iter().sum();
        if sum != Rational::frac(1, 2) {
            return CheckReport::failed(NAME, delta, format!("δ = {delta}: Σ c_u = {sum}"));
        }
        let modulus = UniPoly::new(vec![-Rational::one(), Rational::one()]).pow(delta as u32 + 1);
        let times =
            &(&UniPoly::new(tail) * &UniPoly::from_ints(&[1, 1])) - &UniPoly::from_ints(&[1]);
        let rem = times.rem(&modulus).expect("monic modulus");
        if !rem.is_zero() {
            return CheckReport::failed(
                NAME,
                delta,
                format!(
                    "δ = {delta}: (1+x)·Σ c_u x^u - 1 ≡ {rem} mod (x-1)^{}",
                    delta + 1
                ),
            );
        }
    }
    CheckReport::passed(NAME, delta_max + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::UniPoly;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn tail_check_passes_and_catches_a_bad_table() {
        let euler = euler_numbers(8);
        assert!(gti_tail_check(8, &euler).pass);
        let mut bad = euler.clone();
        bad[2] = r(1, 1);
        let rep = gti_tail_check(8, &bad);
        assert!(!rep.pass);
        assert!(rep.failure.unwrap().starts_with("δ = 2"));
    }

    #[test]
    fn tt_examples() {
        assert_eq!(tt_coefficients(0).t, vec![vec![r(1, 1)]]);
        let t1 = tt_coefficients(1);
        assert_eq!(
            (t1.get(0, 0), t1.get(1, 0), t1.get(1, 1), t1.get(0, 1)),
            (&r(1, 1), &r(-1, 1), &r(1, 1), &r(0, 1))
        );
        for d in 0..=8 {
            let t = tt_coefficients(d);
            for j in 0..=d {
                let row: Rational = t.t[j].iter().cloned().sum();
                assert_eq!(row, if j == 0 { r(1, 1) } else { r(0, 1) });
            }
        }
    }

    #[test]
    fn tail_tables() {
        assert_eq!(*gti_tail(1), [r(3, 4), r(-1, 4)]);
        assert_eq!(*gti_tail(3), [r(15, 16), r(-11, 16), r(5, 16), r(-1, 16)]);
        assert_eq!(*gti_tail(2), [r(7, 8), r(-1, 2), r(1, 8)]);
        assert_eq!(*gti_tail(0), [r(1, 2)]);
    }

    /// Oracle: `1/(1+x) = 1/(2 + (x-1)) = Σ_k (-1)^k (x-1)^k / 2^{k+1}`,
    /// truncated at `(x-1)^δ` and expanded in the monomial basis.
    fn tail_oracle(delta: usize) -> Vec<Rational> {
        let shifted = UniPoly::linear(r(-1, 1));
        let mut acc = UniPoly::zero();
        for k in 0..=delta {
            let c = Rational::sign_power(k as u64) / Rational::from(2).pow(k as u32 + 1);
            acc = &acc + &shifted.pow(k as u32).scale(&c);
        }
        (0..=delta).map(|u| acc.coeff(u)).collect()
    }

    #[test]
    fn tail_matches_geometric_oracle() {
        for d in 0..=10 {
            assert_eq!(*gti_tail(d), tail_oracle(d), "δ = {d}");
        }
    }

    #[test]
    fn tail_properties() {
        for d in 0..=10 {
            let tail = gti_tail(d);
            assert_eq!(tail.iter().cloned().sum::<Rational>(), r(1, 2));
            if d <= 8 {
                let c = UniPoly::new(tail.to_vec());
                let lhs = &(&c * &UniPoly::linear(r(1, 1))) - &UniPoly::constant(r(1, 1));
                let modulus = UniPoly::linear(r(-1, 1)).pow(d as u32 + 1);
                assert!(lhs.rem(&modulus).unwrap().is_zero(), "δ = {d}");
            }
        }
    }

    #[test]
    fn assembled_weights_and_json() {
        let g = gti_coefficients(0, 2);
        assert_eq!(g.prefix_signs, [1, -1]);
        assert_eq!(g.tail, [r(1, 2)]);
        assert_eq!(
            (g.weight(0), g.weight(1), g.weight(2), g.weight(3)),
            (r(1, 1), r(-1, 1), r(1, 2), r(0, 1))
        );
        let v = serde_json::to_value(gti_coefficients(1, 0)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"delta": 1, "lambda": 0, "tail": ["3/4", "-1/4"], "prefix_signs": []})
        );
        assert_eq!(*theta2_inverse_coefficients(4), *gti_tail(4));
    }

    #[test]
    fn memoization_is_transparent() {
        let fresh = gti_tail_with(6, &euler_numbers(6));
        assert_eq!(*gti_tail(6), fresh);
        assert_eq!(*gti_tail(6), fresh);
        let handles: Vec<_> = (0..4)
            .map(|_| std::thread::spawn(|| gti_tail(7).as_ref().clone()))
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), gti_tail_with(7, &euler_numbers(7)));
        }
    }
}
