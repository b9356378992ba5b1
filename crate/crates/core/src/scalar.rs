//! Exact rationals for the polyhedral mode and the tagged scalar used by
//! value functions that may also be backed by a binary64 oracle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the polyhedral mode.
pub type Rational = num_rational::BigRational;

/// Comparison tolerance of the numeric mode.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Dot product of two equally long rational vectors.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    dot_small(a, b).unwrap_or_else(|| a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

// Machine-word accumulation; `None` on anything that might overflow.
fn dot_small(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    let (mut num, mut den) = (0i128, 1i128);
    for (x, y) in a.iter().zip(b) {
        let n = i128::from(x.numer().to_i64()?) * i128::from(y.numer().to_i64()?);
        let d = i128::from(x.denom().to_i64()?) * i128::from(y.denom().to_i64()?);
        let l = (den / den.gcd(&d)).checked_mul(d)?;
        num = num
            .checked_mul(l / den)?
            .checked_add(n.checked_mul(l / d)?)?;
        den = l;
    }
    Some(Rational::new(num.into(), den.into()))
}

/// Parses `"7"`, `"-5"`, `"1/3"`, `"-2.75"` or `"1e-3"` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// Renders a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Smallest positive integer that clears every denominator in `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// A value that is either exact or a binary64 approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => to_f64(q),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => f.write_str(&format_rational(q)),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Extended-real result of evaluating a value function or support function.
#[derive(Clone, Debug, PartialEq)]
pub enum Extended {
    NegInfinity,
    Finite(Scalar),
    PosInfinity,
}

impl Extended {
    pub fn finite_exact(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(s) => s.exact(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::NegInfinity => f64::NEG_INFINITY,
            Extended::Finite(s) => s.to_f64(),
            Extended::PosInfinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInfinity => f.write_str("-inf"),
            Extended::Finite(s) => s.fmt(f),
            Extended::PosInfinity => f.write_str("+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("-5"), Some(int(-5)));
        assert_eq!(parse_rational("1/3"), Some(ratio(1, 3)));
        assert_eq!(parse_rational(" -2/4 "), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-2.75"), Some(ratio(-11, 4)));
        assert_eq!(parse_rational("1e-3"), Some(ratio(1, 1000)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(-8)), "-8");
        assert_eq!(format_rational(&ratio(13, 7)), "13/7");
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [ratio(1, 4), ratio(5, 6), int(3)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
