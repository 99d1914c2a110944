use num_bigint::BigInt;
use num_traits::One;

use super::Rational;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Falling factorial `x (x-1) ... (x-k+1)`, equal to 1 for `k = 0`.
pub fn falling_factorial(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * (x - &Rational::from(i as i64))
    })
}

/// `C(x, k) = x (x-1) ... (x-k+1) / k!` for any rational `x`, including
/// negative integers.
pub fn binomial_rational(x: &Rational, k: u32) -> Rational {
    falling_factorial(x, k) / Rational::from_integer(factorial(k))
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n`.
pub fn binomial(n: i64, k: u32) -> BigInt {
    if n >= 0 && (k as i64) > n {
        return BigInt::from(0);
    }
    binomial_rational(&Rational::from(n), k)
        .to_integer()
        .expect("binomial of an integer is an integer")
}

/// Evaluates the polynomial `m -> C(m + shift, k)` at `at`.
pub fn binomial_poly(shift: i64, k: u32, at: &Rational) -> Rational {
    binomial_rational(&(at + &Rational::from(shift)), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial_poly(1, 2, &Rational::zero()), Rational::zero());
        assert_eq!(binomial_poly(0, 2, &Rational::from(-1)), Rational::one());
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }

    #[test]
    fn integer_and_polynomial_agree_up_to_30() {
        for n in 0..=30i64 {
            for k in 0..=n as u32 {
                let exact: BigInt =
                    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (n - i)) / factorial(k);
                assert_eq!(binomial(n, k), exact);
                assert_eq!(
                    binomial_poly(0, k, &Rational::from(n)),
                    Rational::from(exact)
                );
            }
        }
    }

    #[test]
    fn rational_argument() {
        // C(1/2, 2) = (1/2)(-1/2)/2 = -1/8
        assert_eq!(
            binomial_rational(&Rational::frac(1, 2), 2),
            Rational::frac(-1, 8)
        );
    }
}
