//! The exact rational scalar used throughout the crate.

use num_bigint::BigInt;
use num_traits::Zero;

/// Every quantity in this crate is an exact rational.  `Rat` is always stored
/// in lowest terms with a positive denominator; there is no floating point
/// anywhere.
pub type Rat = num_rational::BigRational;

/// The fraction `p/q`.  Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `p` as a `Rat`.
pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Shorthand for a small `BigInt`.
pub fn big(p: i64) -> BigInt {
    BigInt::from(p)
}

/// Parses `"p"` or `"p/q"` (optional leading sign, ASCII digits) into an
/// exact rational.  Returns `None` on malformed input or a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rat("5"), Some(int(5)));
        assert_eq!(parse_rat("-5"), Some(int(-5)));
        assert_eq!(parse_rat("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rat(" -7 / 2 "), Some(rat(-7, 2)));
        assert_eq!(parse_rat("3/-6"), Some(rat(-1, 2)));
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominators() {
        for bad in ["", "x", "1/0", "1/", "/2", "1/2/3", "1.5", "1 2"] {
            assert_eq!(parse_rat(bad), None, "{bad:?} should not parse");
        }
    }
}
