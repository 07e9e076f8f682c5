//! Text renderings of exact rationals.
//!
//! Rationals are written as `p/q` in lowest terms. Decimal renderings round
//! half to even and are produced only at output time.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// `p/q`, always with an explicit denominator.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational p/q"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

/// `round(num / den)`, ties to even.
fn round_half_even(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    let twice = r << 1u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q + 1u32,
        _ => q,
    }
}

fn split_sign(r: &BigRational) -> (bool, BigUint, BigUint) {
    let neg = r.is_negative();
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    (neg, num, den)
}

fn insert_point(digits: String, places: usize) -> String {
    if places == 0 {
        return digits;
    }
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{int}.{frac}")
}

/// Fixed-point rendering with `places` digits after the point.
pub fn to_fixed(r: &BigRational, places: usize) -> String {
    let (neg, num, den) = split_sign(r);
    let scaled = round_half_even(&(num * pow10(places as u32)), &den);
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    format!("{sign}{}", insert_point(scaled.to_str_radix(10), places))
}

/// Decimal exponent `e` with `10^e <= |r| < 10^(e+1)`; `r` must be nonzero.
fn decimal_exponent(num: &BigUint, den: &BigUint) -> i64 {
    let mut e = num.to_str_radix(10).len() as i64 - den.to_str_radix(10).len() as i64;
    // now 10^(e-1) < num/den < 10^(e+1)
    loop {
        let below = if e >= 0 {
            num >= &(den * pow10(e as u32))
        } else {
            &(num * pow10((-e) as u32)) >= den
        };
        if below {
            return e;
        }
        e -= 1;
    }
}

/// `round(|r| * 10^shift)` for any sign of `shift`.
fn scaled_round(num: &BigUint, den: &BigUint, shift: i64) -> BigUint {
    if shift >= 0 {
        round_half_even(&(num * pow10(shift as u32)), den)
    } else {
        round_half_even(num, &(den * pow10((-shift) as u32)))
    }
}

/// Mantissa digits and exponent for `digits` significant digits.
fn significant_parts(num: &BigUint, den: &BigUint, digits: usize) -> (String, i64) {
    let mut e = decimal_exponent(num, den);
    let mut m = scaled_round(num, den, digits as i64 - 1 - e);
    if m.to_str_radix(10).len() > digits {
        // rounding carried into a new leading digit
        e += 1;
        m = scaled_round(num, den, digits as i64 - 1 - e);
    }
    (m.to_str_radix(10), e)
}

/// Rendering with `digits` significant digits, e.g. `2.78769`, `3`, `0.00123`.
pub fn to_significant(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let (neg, num, den) = split_sign(r);
    let (m, e) = significant_parts(&num, &den, digits);
    let sign = if neg { "-" } else { "" };
    let body = if e >= digits as i64 - 1 {
        format!("{m}{}", "0".repeat((e - (digits as i64 - 1)) as usize))
    } else {
        insert_point(m, (digits as i64 - 1 - e) as usize)
    };
    format!("{sign}{body}")
}

/// Scientific rendering such as `1.2346e-5`.
pub fn to_scientific(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return format!("{}e0", to_fixed(r, digits - 1));
    }
    let (neg, num, den) = split_sign(r);
    let (m, e) = significant_parts(&num, &den, digits);
    let sign = if neg { "-" } else { "" };
    let mantissa = if digits > 1 {
        format!("{}.{}", &m[..1], &m[1..])
    } else {
        m
    };
    format!("{sign}{mantissa}e{e}")
}

/// Exact value of a decimal literal (`-12.5`, `3e-4`, `0.30685`).
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a decimal number"));
    let t = s.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigUint = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i64;
    let (num, den) = if shift >= 0 {
        (digits * pow10(shift as u32), BigUint::one())
    } else {
        (digits, pow10((-shift) as u32))
    };
    let sign = if neg { Sign::Minus } else { Sign::Plus };
    Ok(BigRational::new(
        BigInt::from_biguint(sign, num),
        BigInt::from(den),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fixed_rounds_half_to_even() {
        assert_eq!(to_fixed(&q(13, 5), 3), "2.600");
        assert_eq!(to_fixed(&q(5, 2), 0), "2");
        assert_eq!(to_fixed(&q(7, 2), 0), "4");
        assert_eq!(to_fixed(&q(1, 8), 2), "0.12");
        assert_eq!(to_fixed(&q(3, 8), 2), "0.38");
        assert_eq!(to_fixed(&q(-1, 3), 4), "-0.3333");
        assert_eq!(to_fixed(&q(-1, 1000), 2), "0.00");
    }

    #[test]
    fn significant_digits() {
        let r = q(7025, 2520);
        assert_eq!(to_significant(&r, 6), "2.78770");
        assert_eq!(to_significant(&r, 1), "3");
        assert_eq!(to_significant(&r, 2), "2.8");
        assert_eq!(to_significant(&q(9995, 1000), 3), "10.0");
        assert_eq!(to_significant(&q(123, 100_000), 2), "0.0012");
        assert_eq!(to_significant(&q(2787, 1), 2), "2800");
    }

    #[test]
    fn scientific() {
        assert_eq!(to_scientific(&q(123_456, 10_000_000_000), 3), "1.23e-5");
        assert_eq!(to_scientific(&q(-5, 1), 2), "-5.0e0");
        assert_eq!(to_scientific(&q(0, 1), 2), "0.0e0");
    }

    #[test]
    fn parse_round_trips() {
        assert_eq!(parse_decimal("2.6").unwrap(), q(13, 5));
        assert_eq!(parse_decimal("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_decimal("1e3").unwrap(), q(1000, 1));
        assert_eq!(parse_decimal("1.5E-2").unwrap(), q(3, 200));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal(".").is_err());
        assert_eq!(parse_ratio("26/10").unwrap(), q(13, 5));
        assert_eq!(ratio_string(&q(26, 10)), "13/5");
        assert_eq!(ratio_string(&q(2, 1)), "2/1");
    }
}
