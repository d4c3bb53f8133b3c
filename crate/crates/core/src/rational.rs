//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate runs over arbitrary-precision
//! rationals. `num_rational::BigRational` already maintains the invariants we
//! need (reduced fraction, positive denominator), so this module only adds
//! construction, parsing and formatting helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"P"` or `"P/Q"` with `Q > 0`. Floats are rejected by construction.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| CoreError::InvalidInput(format!("not a rational: {s:?}")))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| CoreError::InvalidInput(format!("not a rational: {s:?}")))?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(CoreError::InvalidInput(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rat::new(num, den))
}

/// Formats as `"P"` when the denominator is 1, `"P/Q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a nonnegative perfect-square rational.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

pub fn rat_pow(r: &Rat, e: i32) -> Rat {
    if e >= 0 {
        let mut out = Rat::one();
        for _ in 0..e {
            out *= r;
        }
        out
    } else {
        let mut out = Rat::one();
        let inv = r.recip();
        for _ in 0..(-e) {
            out *= &inv;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat_int(-5));
        assert_eq!(parse_rat(" 7/2 ").unwrap(), rat(7, 2));
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rat_int(12)), "12");
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
        assert_eq!(rat_sqrt(&Rat::zero()), Some(Rat::zero()));
    }

    #[test]
    fn pow_negative() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(2, 3), 0), Rat::one());
    }
}
