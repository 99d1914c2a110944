use num_bigint::BigInt;
use num_traits::Zero;

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::numeric::{binomial, Domain, Rational};
use crate::polyring::{parse_polynomial, MonomialOrder, PolyRing, Polynomial};

/// `Σ_{k=0}^{n-1} (-1)^k k^j` by direct summation, with `0^0 = 1`.
pub fn alternating_power_sum(n: u64, j: u32) -> BigInt {
    (0..n)
        .map(|k| {
            let p = BigInt::from(k).pow(j);
            if k % 2 == 0 {
                p
            } else {
                -p
            }
        })
        .sum()
}

/// Closed form of the alternating power sum in terms of Euler numbers:
/// `((-1)^{n+1}/2) Σ_{l<j} C(j,l) E_l n^{j-l} + (E_j/2)(1 + (-1)^{n+1})`.
/// `euler` must hold at least `E_0..E_j`.
pub fn kim_formula(n: u64, j: u32, euler: &[Rational]) -> Result<Rational> {
    if euler.len() <= j as usize {
        return Err(Error::OutOfRange(format!(
            "Euler table too short for j = {j}"
        )));
    }
    let sign = Rational::sign_power(n + 1);
    let nn = Rational::from_integer(BigInt::from(n));
    let head: Rational = (0..j)
        .map(|l| Rational::from_integer(binomial(j as i64, l)) * &euler[l as usize] * nn.pow(j - l))
        .sum();
    let half = Rational::frac(1, 2);
    Ok(&sign * &half * head + &euler[j as usize] * &half * (Rational::one() + sign))
}

/// Compares [`kim_formula`] with [`alternating_power_sum`] for
/// `1 <= n <= n_max`, `0 <= j <= j_max`.
pub fn kim_check(n_max: u64, j_max: u32, euler: &[Rational]) -> CheckReport {
    const NAME: &str = "kim_alternating_sums";
    let mut cases = 0;
    for n in 1..=n_max {
        for j in 0..=j_max {
            cases += 1;
            let brute = Rational::from_integer(alternating_power_sum(n, j));
            match kim_formula(n, j, euler) {
                Ok(v) if v == brute => {}
                Ok(v) => {
                    return CheckReport::failed(
                        NAME,
                        cases,
                        format!("n = {n}, j = {j}: formula {v}, sum {brute}"),
                    )
                }
                Err(e) => return CheckReport::failed(NAME, cases, e.to_string()),
            }
        }
    }
    CheckReport::passed(NAME, cases)
}

// Both sides scaled by 16 so that the integer grammar of the parser applies.
const SURFACE_LHS: &str = "15 - 11*(x + y) + 5*(x^2 + x*y + y^2) - (x^3 + x^2*y + y^2*x + y^3)";
const SURFACE_RHS: &str =
    "4 - 2*(x + y - 2) - (x - 1)*(y - 1) + 2*((x - 1)*(y - 1)*(x + y - 2)) + (x + y - 2)^2 - (x + y - 2)^3";

/// Both sides of the rank-two surface identity as polynomials over Q.
pub fn surface_identity_sides() -> (Polynomial<Rational>, Polynomial<Rational>) {
    let ring =
        PolyRing::new(["x", "y"], Domain::Rationals, MonomialOrder::Grevlex).expect("valid ring");
    let sixteenth = Rational::frac(1, 16);
    let side = |text: &str| {
        parse_polynomial::<Rational>(text, &ring)
            .expect("valid polynomial")
            .scale(&sixteenth)
    };
    (side(SURFACE_LHS), side(SURFACE_RHS))
}

/// Expands both sides of the surface identity and compares them
/// coefficientwise.
pub fn surface_identity_check() -> CheckReport {
    const NAME: &str = "surface_identity";
    let (lhs, rhs) = surface_identity_sides();
    let diff = lhs.sub(&rhs).expect("same ring");
    match diff.is_zero() {
        true => CheckReport::passed(NAME, lhs.len().max(rhs.len())),
        false => CheckReport::failed(NAME, 1, format!("lhs - rhs = {diff}")),
    }
}

/// Whether `15 a_λ - 11 a_{λ+1} + 5 a_{λ+2} - a_{λ+3}` is divisible by 16.
pub fn divisibility_check(a: &[i64], lambda: usize) -> Result<bool> {
    if a.len() < lambda + 4 {
        return Err(Error::OutOfRange(format!(
            "need {} graded pieces for λ = {lambda}, have {}",
            lambda + 4,
            a.len()
        )));
    }
    let w = [15, -11, 5, -1];
    let s: BigInt = w
        .iter()
        .zip(&a[lambda..lambda + 4])
        .map(|(c, x)| BigInt::from(*c) * BigInt::from(*x))
        .sum();
    Ok((s % BigInt::from(16)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rrcombinatorics::euler_numbers;

    #[test]
    fn kim_examples() {
        let e = euler_numbers(12);
        assert_eq!(alternating_power_sum(3, 2), BigInt::from(3));
        assert_eq!(kim_formula(3, 2, &e).unwrap(), Rational::from(3));
        assert_eq!(alternating_power_sum(2, 0), BigInt::zero());
        assert_eq!(kim_formula(2, 0, &e).unwrap(), Rational::zero());
        for j in 1..=10 {
            assert_eq!(alternating_power_sum(1, j), BigInt::zero());
            assert!(kim_formula(1, j, &e).unwrap().is_zero());
        }
        assert!(kim_check(40, 10, &e).pass);
        assert!(kim_formula(5, 13, &e).is_err());
    }

    #[test]
    fn surface_identity() {
        let (lhs, rhs) = surface_identity_sides();
        let at = |p: &Polynomial<Rational>, x: i64, y: i64| {
            p.eval(&[Rational::from(x), Rational::from(y)]).unwrap()
        };
        assert_eq!(at(&lhs, 1, 1), Rational::frac(1, 4));
        assert_eq!(at(&rhs, 1, 1), Rational::frac(1, 4));
        assert_eq!(at(&lhs, 0, 0), Rational::frac(15, 16));
        assert_eq!(at(&rhs, 0, 0), Rational::frac(15, 16));
        assert!(surface_identity_check().pass);
    }

    #[test]
    fn divisibility_examples() {
        assert!(!divisibility_check(&[1, 1, 1, 1], 0).unwrap());
        assert!(divisibility_check(&[16, 16, 16, 16], 0).unwrap());
        assert!(divisibility_check(&[1, 1, 1], 0).is_err());
        assert!(divisibility_check(&[0, 0, 0, 0, 0], 2).is_err());
    }
}
