//! Exact scalars and the combinatorial functions built on them.

pub mod linalg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn factorial_int(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial(n: u32) -> Rational {
    from_bigint(factorial_int(n))
}

/// C(n,k), zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    from_bigint(acc)
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1).
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        if term.is_zero() {
            return Rational::zero();
        }
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// 2^e for any integer e.
pub fn pow2(e: i32) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        from_bigint(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// "num/den", or just "num" for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(from_bigint),
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(4), int(24));
        assert_eq!(factorial(10), int(3628800));
        assert_eq!(
            factorial(30).to_string(),
            "265252859812191058636308480000000"
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial(6, 3), int(20));
        assert_eq!(binomial(3, 4), int(0));
        for n in 0..12 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(-1), 0), int(1));
        assert_eq!(pochhammer(&int(-1), 1), int(-1));
        assert_eq!(pochhammer(&int(-3), 2), int(6));
        assert_eq!(pochhammer(&frac(1, 2), 2), frac(3, 4));
    }

    #[test]
    fn pochhammer_terminates_at_negative_integers() {
        for m in 0..8i64 {
            for n in (m as u32 + 1)..12 {
                assert!(pochhammer(&int(-m), n).is_zero());
            }
        }
    }

    #[test]
    fn factorial_is_rising_factorial_of_one() {
        for n in 0..15 {
            assert_eq!(factorial(n), pochhammer(&int(1), n));
        }
    }

    #[test]
    fn rational_text_round_trip() {
        for q in [int(0), int(-7), frac(3, 4), frac(-22, 6)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(format_rational(&frac(-2, 4)), "-1/2");
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), frac(1, 4));
        assert_eq!(pow2(0), int(1));
    }
}
