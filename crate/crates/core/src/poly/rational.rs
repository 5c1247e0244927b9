use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// A point in flat coordinates `(t1, ..., tn)`.
pub type RationalPoint = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`, the inverse of [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses a rational string of the form `-?\d+(/\d+)?`.
///
/// Returns `Ok(None)` when the text does not match the grammar and
/// `Err(ZeroDenominator)` when it matches but the denominator is zero.
pub fn parse_rational(s: &str) -> Result<Option<Rational>> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    let is_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !is_digits(digits) || !den.map_or(true, is_digits) {
        return Ok(None);
    }
    let n: BigInt = num.parse().expect("validated digits");
    let d: BigInt = match den {
        Some(d) => d.parse().expect("validated digits"),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Some(Rational::new(n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), Some(int(3)));
        assert_eq!(parse_rational("-2/4").unwrap(), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
        assert_eq!(parse_rational("1.5").unwrap(), None);
        assert_eq!(parse_rational("").unwrap(), None);
        assert_eq!(parse_rational("1/-2").unwrap(), None);
        assert_eq!(parse_rational("+1").unwrap(), None);
    }

    #[test]
    fn canonical_zero_and_format() {
        let z = rat(0, -5);
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(format_rational(&z), "0");
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }
}
