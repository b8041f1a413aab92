//! Exact rational carrier and its text forms.
//!
//! Every numeric quantity in the crate is a [`Rational`]. Text input accepts
//! `a/b` or a bare integer; text output always uses `a/b` so that printing and
//! re-parsing is lossless. Decimal renderings are correctly rounded (half away
//! from zero) and carry a trailing `…` whenever digits were dropped.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{parse, Result};

pub type Rational = num_rational::BigRational;

/// Marker appended to decimal renderings that are not exact.
pub const INEXACT_MARKER: char = '…';

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^-e` exactly.
pub fn pow2_neg(e: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << e)
}

/// `2^e` exactly.
pub fn pow2(e: u64) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

/// `base^e` for a non-negative integer exponent.
pub fn powi(base: &Rational, e: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Parses `a/b`, `-a/b` or an integer literal. No decimal points, no floats.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(parse("empty rational literal"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| parse(format!("bad numerator in `{t}`")))?;
    let den = BigInt::from_str(den).map_err(|_| parse(format!("bad denominator in `{t}`")))?;
    if den.is_zero() {
        return Err(parse(format!("zero denominator in `{t}`")));
    }
    Ok(Rational::new(num, den))
}

/// Always `a/b`, including integers (`0/1`, `1/1`).
pub fn fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Fixed-point rendering with at most `precision` fractional digits.
///
/// Exact values print with trailing zeros trimmed; inexact ones print all
/// `precision` digits followed by [`INEXACT_MARKER`].
pub fn decimal_string(x: &Rational, precision: usize) -> String {
    let negative = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    let scale = BigInt::from(10u32).pow(precision as u32);
    let scaled_num = &num * &scale;
    let (q, r) = scaled_num.div_rem(&den);
    let exact = r.is_zero();
    // half away from zero
    let rounded = if (&r << 1usize) >= den { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let mut frac = frac_part.to_string();
    while frac.len() < precision {
        frac.insert(0, '0');
    }
    if exact {
        while frac.ends_with('0') {
            frac.pop();
        }
    }
    let mut out = String::new();
    if negative && !(int_part.is_zero() && frac.chars().all(|c| c == '0')) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    if !exact {
        out.push(INEXACT_MARKER);
    }
    out
}

/// Nearest `f64`; good enough for statistics, never for identities.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_integer() {
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational(" 0/1 ").unwrap(), int(0));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1/0", "0.5", "a/b", "1/2/3", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fraction_string_round_trips() {
        for x in [ratio(6, 7), int(0), int(1), ratio(-24, 217)] {
            assert_eq!(parse_rational(&fraction_string(&x)).unwrap(), x);
        }
        assert_eq!(fraction_string(&int(1)), "1/1");
    }

    #[test]
    fn decimal_exact_and_inexact() {
        assert_eq!(decimal_string(&ratio(1, 2), 30), "0.5");
        assert_eq!(decimal_string(&int(1), 5), "1");
        assert_eq!(decimal_string(&int(0), 5), "0");
        assert_eq!(decimal_string(&ratio(2, 3), 3), "0.667…");
        assert_eq!(decimal_string(&ratio(1, 3), 3), "0.333…");
        assert_eq!(decimal_string(&ratio(-1, 8), 2), "-0.13…");
        assert_eq!(decimal_string(&ratio(-1, 1000), 2), "0.00…");
        assert_eq!(decimal_string(&ratio(999, 1000), 2), "1.00…");
    }

    #[test]
    fn powers() {
        assert_eq!(pow2_neg(3), ratio(1, 8));
        assert_eq!(pow2(10), int(1024));
        assert_eq!(powi(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(powi(&ratio(2, 3), 0), int(1));
    }
}
