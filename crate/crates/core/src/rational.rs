//! Exact rational scalars and their conversions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced arbitrary-precision fraction with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`; rejects zero denominators.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` rendering (`"p"` for integers).
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `serialize_with` adapter writing a rational as its `p/q` string.
pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale through the bit lengths.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
        let n = r.numer() >> shift.max(0) as usize;
        let d = r.denom() >> shift.max(0) as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Exact dyadic value of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// Returns `r^(1/n)` when it is rational.
pub fn nth_root_exact(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let root = |x: &BigInt| {
        let c = x.nth_root(n);
        (num_traits::pow(c.clone(), n as usize) == *x).then_some(c)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
pub fn approximate(x: f64, max_den: i64) -> Rational {
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let f = v - a as f64;
        if f < 1e-12 {
            break;
        }
        v = 1.0 / f;
    }
    if q1 == 0 {
        return int(0);
    }
    frac(sign * p1, q1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse(" -7 ").unwrap(), int(-7));
        assert_eq!(format(&frac(-6, 4)), "-3/2");
        assert_eq!(format(&int(5)), "5");
        assert!(matches!(parse("1/0"), Err(Error::Parse(_))));
        assert!(parse("a/2").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(nth_root_exact(&frac(8, 27), 3), Some(frac(2, 3)));
        assert_eq!(nth_root_exact(&int(2), 2), None);
        assert_eq!(nth_root_exact(&int(0), 4), Some(int(0)));
    }

    #[test]
    fn approximation() {
        assert_eq!(approximate(0.333333333, 100), frac(1, 3));
        assert_eq!(approximate(-1.5, 10), frac(-3, 2));
        assert_eq!(approximate(0.0, 10), int(0));
    }
}
