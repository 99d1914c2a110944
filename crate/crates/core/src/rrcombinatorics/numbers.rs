use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::check::CheckReport;
use crate::numeric::{factorial, Rational};

/// Stirling numbers of the first kind (signed):
/// `t(t-1)...(t-l+1) = Σ_j s(l, j) t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn l_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(l, j)`, zero outside `0 <= j <= l`.
    pub fn get(&self, l: usize, j: usize) -> BigInt {
        self.rows
            .get(l)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, l: usize) -> &[BigInt] {
        &self.rows[l]
    }
}

pub fn stirling_first(l_max: usize) -> StirlingTable {
    let mut rows = vec![vec![BigInt::one()]];
    for l in 0..l_max {
        // multiply the falling factorial by (t - l)
        let prev = &rows[l];
        let mut next = vec![BigInt::zero(); l + 2];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(l);
        }
        rows.push(next);
    }
    StirlingTable { rows }
}

/// Evaluates `Σ_j s(l, j) t^j` against the falling factorial at
/// `t = -2..=l+2` for every `l <= l_max`.
pub fn stirling_check(l_max: usize) -> CheckReport {
    const NAME: &str = "stirling_first";
    let s = stirling_first(l_max);
    let mut cases = 0;
    for l in 0..=l_max {
        for t in -2..=(l as i64 + 2) {
            let t_big = BigInt::from(t);
            let falling: BigInt = (0..l as i64).map(|i| BigInt::from(t - i)).product();
            let mut power = BigInt::one();
            let mut sum = BigInt::zero();
            for c in s.row(l) {
                sum += c * &power;
                power *= &t_big;
            }
            cases += 1;
            if sum != falling {
                return CheckReport::failed(
                    NAME,
                    cases,
                    format!("l = {l}, t = {t}: Σ s(l,j) t^j = {sum}, falling factorial {falling}"),
                );
            }
        }
    }
    CheckReport::passed(NAME, cases)
}

/// Inverts a power series with constant term 1, to `len` coefficients.
fn invert_series(f: &[Rational], len: usize) -> Vec<Rational> {
    debug_assert!(f[0].is_one());
    let mut g: Vec<Rational> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            g.push(Rational::one());
            continue;
        }
        let s: Rational = (1..=n.min(f.len() - 1)).map(|k| &f[k] * &g[n - k]).sum();
        g.push(-s);
    }
    g
}

/// `E_0 .. E_jmax` defined by `2/(e^t + 1) = Σ E_j t^j / j!`, computed by
/// inverting `(e^t + 1)/2` as a truncated series.
pub fn euler_numbers(j_max: usize) -> Vec<Rational> {
    let f: Vec<Rational> = (0..=j_max)
        .map(|k| match k {
            0 => Rational::one(),
            _ => Rational::frac(1, 2) / Rational::from_integer(factorial(k as u32)),
        })
        .collect();
    invert_series(&f, j_max + 1)
        .into_iter()
        .enumerate()
        .map(|(j, a)| a * Rational::from_integer(factorial(j as u32)))
        .collect()
}

/// `B_0 .. B_nmax` with `t/(e^t - 1) = Σ B_n t^n / n!`, so `B_1 = -1/2`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let f: Vec<Rational> = (0..=n_max)
        .map(|k| {
            Rational::from_integer(factorial(k as u32 + 1))
                .inv()
                .expect("nonzero")
        })
        .collect();
    invert_series(&f, n_max + 1)
        .into_iter()
        .enumerate()
        .map(|(n, a)| a * Rational::from_integer(factorial(n as u32)))
        .collect()
}

/// `2 (-1)^j (2^{1+j} - 1) B_{j+1} / (j+1)`.
pub fn euler_from_bernoulli(j: usize, bernoulli: &[Rational]) -> Rational {
    let two_pow = Rational::from_integer(BigInt::from(2).pow(j as u32 + 1) - 1);
    Rational::from(2) * Rational::sign_power(j as u64) * two_pow * &bernoulli[j + 1]
        / Rational::from(j as i64 + 1)
}

/// Compares the series-defined Euler numbers against the Bernoulli
/// expression for `1 <= j <= j_max`.
pub fn euler_vs_bernoulli_check(j_max: usize) -> CheckReport {
    euler_vs_bernoulli_check_with(&euler_numbers(j_max), j_max)
}

/// As [`euler_vs_bernoulli_check`] but against a supplied Euler table.
pub fn euler_vs_bernoulli_check_with(euler: &[Rational], j_max: usize) -> CheckReport {
    const NAME: &str = "euler_vs_bernoulli";
    if euler.len() <= j_max {
        return CheckReport::failed(
            NAME,
            0,
            format!("Euler table has only {} entries", euler.len()),
        );
    }
    let b = bernoulli_numbers(j_max + 1);
    for j in 1..=j_max {
        let expected = euler_from_bernoulli(j, &b);
        if euler[j] != expected {
            return CheckReport::failed(
                NAME,
                j,
                format!(
                    "j = {j}: series gives {}, Bernoulli gives {expected}",
                    euler[j]
                ),
            );
        }
    }
    CheckReport::passed(NAME, j_max)
}
