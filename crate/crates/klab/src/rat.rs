//! Exact rational arithmetic helpers.
//!
//! `Rat` is an arbitrary-precision rational, always in lowest terms with a
//! positive denominator (guaranteed by the underlying `num` representation).
//! It carries every exact-mode identity in the crate. Serialization for
//! reports is the string `"p/q"` in lowest terms.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Rational from a signed numerator / denominator pair.
///
/// Panics if `den == 0` (division by zero is an error everywhere in this
/// crate, there is no infinity value).
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rint(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Non-negative integer power, by repeated multiplication (exponents here
/// never exceed single digits).
pub fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational is always convertible to f64")
}

/// Format as `"p/q"` in lowest terms ("3/1" for integers, so the format is
/// uniform and round-trips).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/q"` or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = |reason: &str| Error::ParseRational {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// True iff `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(-6, -4);
        assert_eq!(format_rat(&r), "3/2");
        let r = rat(2, -4);
        assert_eq!(format_rat(&r), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/2", "-7/3", "0/1", "5/1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4").unwrap()), "4/1");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x/2").is_err());
    }

    #[test]
    fn pow_small_exponents() {
        let r = rat(2, 3);
        assert_eq!(pow_rat(&r, 0), rint(1));
        assert_eq!(pow_rat(&r, 3), rat(8, 27));
    }
}
