//! Exact rational numbers and the few conversions the rest of the crate needs.
//!
//! Values are `num_rational::BigRational`, which keeps every number in lowest
//! terms with a positive denominator.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MajorError, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// Parses `"num/den"`, an integer, or a plain decimal such as `"0.4"` or
/// `"-1.25e-3"`. Decimals are read digit by digit, so `"0.4"` is exactly `2/5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(MajorError::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| MajorError::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| MajorError::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(MajorError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || MajorError::Parse(format!("not a number: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rounds `r` to `digits` decimal places (half away from zero) without going
/// through floating point.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let abs = scaled.abs();
    let (q, rem) = abs.numer().div_rem(abs.denom());
    let twice = rem * BigInt::from(2u32);
    let rounded = if twice >= *abs.denom() { q + BigInt::one() } else { q };
    let text = rounded.to_string();
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{text}");
    }
    let padded = format!("{:0>width$}", text, width = digits + 1);
    let (i, f) = padded.split_at(padded.len() - digits);
    format!("{sign}{i}.{f}")
}

pub fn to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    match r.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => v,
        _ => {
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            sign * log2_abs(r).exp2()
        }
    }
}

/// Binary logarithm of a positive big integer, accurate for any size.
pub fn log2_big(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::log2).unwrap_or(f64::NAN)
    } else {
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        top.to_f64().map(f64::log2).unwrap_or(f64::NAN) + shift as f64
    }
}

pub fn log2_biguint(n: &BigUint) -> f64 {
    log2_big(&BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// `log2 |r|` for nonzero `r`, computed from numerator and denominator separately
/// so that tiny or huge values do not underflow.
pub fn log2_abs(r: &Rational) -> f64 {
    debug_assert!(!r.is_zero());
    let n = r.numer().abs();
    let d = r.denom();
    // Ratios close to one lose precision as a difference of two logs.
    if let Some(v) = r.abs().to_f64() {
        if v.is_normal() && (0.5..2.0).contains(&v) {
            let diff = (&n - d).to_f64().unwrap_or(f64::NAN);
            let den = d.to_f64().unwrap_or(f64::NAN);
            if diff.is_finite() && den.is_finite() {
                return (diff / den).ln_1p() / std::f64::consts::LN_2;
            }
            return v.log2();
        }
    }
    log2_big(&n) - log2_big(d)
}

/// Converts an `f64` to the exactly equal rational (every finite float is dyadic).
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| MajorError::InvalidValue(format!("{x} is not finite")))
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse_rational("0.4").unwrap(), rat(2, 5));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2e2").unwrap(), rat(200, 1));
    }

    #[test]
    fn fraction_literals_are_reduced() {
        let r = parse_rational("6/8").unwrap();
        assert_eq!(format_rational(&r), "3/4");
        assert_eq!(format_rational(&parse_rational("4/-2").unwrap()), "-2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_up() {
        assert_eq!(to_decimal_string(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal_string(&rat(2, 3), 2), "0.67");
        assert_eq!(to_decimal_string(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal_string(&rat(256, 1), 1), "256.0");
        assert_eq!(to_decimal_string(&rat(1, 1000), 2), "0.00");
    }

    #[test]
    fn log2_of_extreme_rationals() {
        let tiny = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), 3000));
        assert!((log2_abs(&tiny) + 3000.0).abs() < 1e-9);
        assert!((log2_abs(&rat(4097, 4096)) - (4097.0f64 / 4096.0).log2()).abs() < 1e-16);
        assert_eq!(log2_abs(&rat(8, 1)), 3.0);
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 12), rat(1, 6), rat(1, 3), rat(5, 12)];
        assert_eq!(common_denominator(v.iter()), BigInt::from(12));
    }
}
