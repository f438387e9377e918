//! Exact rational scalars and the small integer helpers shared by every module.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps values in lowest
//! terms with a positive denominator (zero is `0/1`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `num / den`, reduced.
///
/// Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any signed exponent, with `0^0 = 1`.
///
/// Panics on `0^exp` with `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let magnitude = exp.unsigned_abs();
    let mut acc = Rational::one();
    let mut square = base.clone();
    let mut e = magnitude;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &square;
        }
        e >>= 1;
        if e > 0 {
            square = &square * &square;
        }
    }
    if exp < 0 {
        assert!(!acc.is_zero(), "zero raised to a negative power");
        acc.recip()
    } else {
        acc
    }
}

/// `(-1)^n`.
pub fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
        row.push(c.clone());
    }
    row
}

pub(crate) fn binomial_r(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

pub(crate) fn factorial_r(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Parses `"3"`, `"-1/2"` or `" 4 / 6 "`; the denominator must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `num/den` string; integers print without a denominator.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Nearest `f64`; huge values saturate to infinity.
pub fn to_f64(value: &Rational) -> f64 {
    if let Some(f) = value.to_f64() {
        return f;
    }
    // Fall back on a scaled quotient when numerator or denominator overflows.
    let num = value.numer();
    let den = value.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let scaled_num = (num.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let scaled_den = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    let f = scaled_num / scaled_den;
    if num.is_negative() {
        -f
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("1/-2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-6, 1)), "-6");
        assert_eq!(format_rational(&ratio(3, 4)), "3/4");
    }

    #[test]
    fn lowest_terms() {
        let r = ratio(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(ratio(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(sign(3), int(-1));
        assert_eq!(sign(-2), int(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn float_conversion_of_large_values() {
        let big = Rational::from_integer(BigInt::from(10).pow(400)) / int(3);
        assert!(to_f64(&big).is_infinite());
        let ratio_big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(400) * 4);
        assert_eq!(to_f64(&ratio_big), 0.25);
    }
}
