//! Exact rational scalars: parsing, small helpers, and rendering.
//!
//! Every quantity in this crate is a [`Scalar`] — an arbitrary-precision
//! rational. Decimal strings are a *rendering* concern only; nothing is ever
//! computed in floating point, so every equality or ordering the library
//! reports is a true statement about the underlying rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number. `BigRational` keeps itself in lowest
/// terms with a positive denominator, which is exactly the canonical form the
/// renderers below rely on.
pub type Scalar = BigRational;

/// The integer `n` as a scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `n/d` as a scalar.
///
/// Panics on `d == 0`; this is for literals in code, not for user input
/// (that goes through [`parse`]).
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `x^e` (non-negative integer exponent).
pub fn pow(x: &Scalar, e: usize) -> Scalar {
    num::pow::pow(x.clone(), e)
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let value = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    Some(if negative { -value } else { value })
}

/// Parse a rational literal: `p/q`, an integer, or a finite decimal.
///
/// Accepted: `3`, `-7`, `1/2`, `-19/6`, `0.125`, `-2.5`. Everything else —
/// scientific notation, repeating-decimal shorthands, zero denominators,
/// bare `.5` — is rejected as an input error.
pub fn parse(text: &str) -> Result<Scalar> {
    let bad = || {
        Error::Input(format!(
            "cannot parse `{text}` as a rational; want `p/q`, an integer, or a finite decimal"
        ))
    };
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let numer = parse_integer(n).ok_or_else(bad)?;
        let denom = parse_integer(d).ok_or_else(bad)?;
        if denom.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{text}`")));
        }
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((whole, fractional)) = s.split_once('.') {
        let whole_part = parse_integer(whole).ok_or_else(bad)?;
        if fractional.is_empty() || !fractional.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let scale = BigInt::from(10u8).pow(fractional.len() as u32);
        let frac_digits = BigInt::parse_bytes(fractional.as_bytes(), 10).ok_or_else(bad)?;
        let magnitude =
            BigRational::new(whole_part.abs() * &scale + frac_digits, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    parse_integer(s).map(BigRational::from_integer).ok_or_else(bad)
}

/// Canonical exact form: `p` when integral, otherwise `p/q` in lowest terms
/// with a positive denominator. [`parse`] inverts this exactly.
pub fn to_exact(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Shortest exact form: the integer when integral, the terminating decimal
/// when the denominator is `2^a * 5^b` (`13/2` is `6.5`, `313/32` is
/// `9.78125`), and `p/q` otherwise (`17/3` stays `17/3`). Nothing is ever
/// rounded; [`parse`] inverts this exactly.
pub fn to_shortest_exact(x: &Scalar) -> String {
    if x.is_integer() {
        return x.numer().to_string();
    }
    let mut rest = x.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&rest % &two).is_zero() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if rest == BigInt::from(1) {
        // `max(twos, fives)` digits are exactly enough, so `to_decimal`
        // never has anything to round and the last digit is nonzero.
        to_decimal(x, twos.max(fives))
    } else {
        to_exact(x)
    }
}

/// `x * 10^places`, rounded half-to-even to an integer.
fn scaled_round_half_even(x: &Scalar, places: usize) -> BigInt {
    let scale = BigInt::from(10u8).pow(places as u32);
    let scaled = x * BigRational::from_integer(scale);
    let negative = scaled.is_negative();
    let magnitude = scaled.abs();
    let (mut quotient, remainder) = magnitude.numer().div_rem(magnitude.denom());
    let twice = &remainder * BigInt::from(2);
    let round_up = match twice.cmp(magnitude.denom()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => quotient.is_odd(),
        std::cmp::Ordering::Less => false,
    };
    if round_up {
        quotient += 1;
    }
    if negative {
        -quotient
    } else {
        quotient
    }
}

/// Fixed-point decimal with exactly `places` fractional digits,
/// round-half-even. `to_decimal(&frac(2047, 512), 3) == "3.998"`.
pub fn to_decimal(x: &Scalar, places: usize) -> String {
    let scaled = scaled_round_half_even(x, places);
    let negative = scaled.is_negative();
    let digits = scaled.magnitude().to_string();
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - places;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{padded}")
    } else {
        format!("{sign}{}.{}", &padded[..split], &padded[split..])
    }
}

/// Largest `e` with `10^e <= |x|`; caller guarantees `x != 0`.
fn floor_log10_abs(x: &Scalar) -> i64 {
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    // Digit counts give the answer within one; fix up by exact comparison.
    let mut e = p.to_string().len() as i64 - q.to_string().len() as i64;
    let ten = BigInt::from(10u8);
    let at_least = |e: i64| -> bool {
        // 10^e <= p/q ?
        if e >= 0 {
            BigInt::from(q.clone()) * ten.pow(e as u32) <= BigInt::from(p.clone())
        } else {
            BigInt::from(q.clone()) <= BigInt::from(p.clone()) * ten.pow((-e) as u32)
        }
    };
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }
    e
}

/// Decimal rendering at `digits` significant digits, round-half-even, with
/// trailing fractional zeros trimmed (`13/2` at 6 digits is `6.5`, not
/// `6.50000`). This is the default CLI rendering at 6 digits.
pub fn to_significant(x: &Scalar, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if x.is_zero() {
        return "0".into();
    }
    let exponent = floor_log10_abs(x);
    let places = digits as i64 - 1 - exponent;
    if places >= 0 {
        let rendered = to_decimal(x, places as usize);
        if rendered.contains('.') {
            rendered.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            rendered
        }
    } else {
        // Rounding coarser than the units digit: snap to a power-of-ten grid.
        let unit = BigInt::from(10u8).pow((-places) as u32);
        let snapped = scaled_round_half_even(
            &(x / BigRational::from_integer(unit.clone())),
            0,
        );
        (snapped * unit).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse("-19/6").unwrap(), frac(-19, 6));
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse("-2.5").unwrap(), frac(-5, 2));
        assert_eq!(parse("-0.5").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 10 ").unwrap(), int(10));
        assert_eq!(parse("2/-4").unwrap(), frac(-1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "abc", "1/0", "1e5", "1.2.3", ".5", "2.", "1/2/3", "+3", "1 /2"] {
            assert!(parse(bad).is_err(), "`{bad}` should not parse");
        }
    }

    #[test]
    fn exact_rendering_is_canonical_and_round_trips() {
        assert_eq!(to_exact(&frac(17, 3)), "17/3");
        assert_eq!(to_exact(&frac(-1, 2)), "-1/2");
        assert_eq!(to_exact(&int(4)), "4");
        assert_eq!(to_exact(&int(0)), "0");
        assert_eq!(to_exact(&frac(6, 4)), "3/2");
        for s in ["17/3", "-1/2", "4", "0", "313/32"] {
            assert_eq!(to_exact(&parse(s).unwrap()), s);
        }
    }

    #[test]
    fn shortest_exact_prefers_terminating_decimals() {
        assert_eq!(to_shortest_exact(&int(4)), "4");
        assert_eq!(to_shortest_exact(&int(0)), "0");
        assert_eq!(to_shortest_exact(&frac(13, 2)), "6.5");
        assert_eq!(to_shortest_exact(&frac(313, 32)), "9.78125");
        assert_eq!(to_shortest_exact(&frac(2047, 512)), "3.998046875");
        assert_eq!(to_shortest_exact(&frac(1, 10)), "0.1");
        assert_eq!(to_shortest_exact(&frac(-1, 8)), "-0.125");
        assert_eq!(to_shortest_exact(&frac(19, 4)), "4.75");
        assert_eq!(to_shortest_exact(&frac(17, 3)), "17/3");
        assert_eq!(to_shortest_exact(&frac(22, 7)), "22/7");
        assert_eq!(to_shortest_exact(&frac(1, 12)), "1/12");
        assert_eq!(to_shortest_exact(&frac(7, 50)), "0.14");
        for s in ["6.5", "9.78125", "17/3", "-0.125", "4", "0.1"] {
            assert_eq!(to_shortest_exact(&parse(s).unwrap()), s);
        }
    }

    #[test]
    fn fixed_decimals_round_half_even() {
        assert_eq!(to_decimal(&frac(2047, 512), 3), "3.998");
        assert_eq!(to_decimal(&frac(1, 3), 6), "0.333333");
        assert_eq!(to_decimal(&frac(1, 8), 2), "0.12"); // 0.125 -> even
        assert_eq!(to_decimal(&frac(3, 8), 2), "0.38"); // 0.375 -> even
        assert_eq!(to_decimal(&frac(5, 2), 0), "2"); // 2.5 -> even
        assert_eq!(to_decimal(&frac(7, 2), 0), "4"); // 3.5 -> even
        assert_eq!(to_decimal(&frac(-5, 2), 0), "-2");
        assert_eq!(to_decimal(&frac(-1, 800), 2), "0.00"); // no negative zero
        assert_eq!(to_decimal(&int(3), 2), "3.00");
    }

    #[test]
    fn significant_digit_rendering() {
        assert_eq!(to_significant(&frac(17, 3), 6), "5.66667");
        assert_eq!(to_significant(&frac(313, 32), 6), "9.78125");
        assert_eq!(to_significant(&frac(2047, 512), 6), "3.99805");
        assert_eq!(to_significant(&frac(13, 2), 6), "6.5");
        assert_eq!(to_significant(&int(10), 6), "10");
        assert_eq!(to_significant(&int(0), 6), "0");
        assert_eq!(to_significant(&frac(1, 300), 2), "0.0033");
        assert_eq!(to_significant(&frac(10_000_000, 3), 6), "3333330");
        assert_eq!(to_significant(&frac(-17, 3), 3), "-5.67");
        assert_eq!(to_significant(&frac(22, 7), 3), "3.14");
        assert_eq!(to_significant(&frac(41, 21), 3), "1.95");
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = frac(2, 3);
        let mut acc = int(1);
        for e in 0..8 {
            assert_eq!(pow(&x, e), acc);
            acc *= &x;
        }
    }
}
