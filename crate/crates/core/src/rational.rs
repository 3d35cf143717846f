//! Exact rational values and their decimal text forms.
//!
//! Game values travel as decimal strings (`"1000"`, `"-12.75"`) and are held
//! as [`BigRational`] so that efficiency checks are equalities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used for every game value and payoff.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    #[error("empty number")]
    Empty,
    #[error("malformed decimal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn pow10(exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), exp)
}

fn digits_only(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `[+-]digits[.digits]` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    if text.is_empty() {
        return Err(DecimalError::Empty);
    }
    let malformed = || DecimalError::Malformed(text.to_string());
    let (negative, body) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if !digits_only(int_part) || (body.contains('.') && !digits_only(frac_part)) {
        return Err(malformed());
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let numer: BigInt = all.parse().map_err(|_| malformed())?;
    let value = Rational::new(numer, pow10(frac_part.len()));
    Ok(if negative { -value } else { value })
}

/// Parses either a decimal or a `p/q` fraction (both sides decimals).
pub fn parse_ratio(text: &str) -> Result<Rational, DecimalError> {
    match text.split_once('/') {
        None => parse_decimal(text),
        Some((p, q)) => {
            let p = parse_decimal(p.trim())?;
            let q = parse_decimal(q.trim())?;
            if q.is_zero() {
                return Err(DecimalError::ZeroDenominator(text.to_string()));
            }
            Ok(p / q)
        }
    }
}

/// True when the reduced denominator has no prime factors besides 2 and 5.
fn is_terminating(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while d.is_multiple_of(&p) {
            d /= &p;
        }
    }
    d.is_one()
}

/// Exact text: a terminating decimal when possible, otherwise `p/q`.
pub fn to_exact_string(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    if !is_terminating(r) {
        return format!("{}/{}", r.numer(), r.denom());
    }
    // smallest k with denom | 10^k
    let mut k = 0usize;
    while !(pow10(k) % r.denom()).is_zero() {
        k += 1;
    }
    let scaled = (r * Rational::from_integer(pow10(k))).to_integer();
    render_scaled(&scaled, k)
}

fn render_scaled(scaled: &BigInt, places: usize) -> String {
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Fixed-point rendering, rounding half away from zero. Never prints `-0.000`.
pub fn format_fixed(r: &Rational, places: usize) -> String {
    let scaled = r * Rational::from_integer(pow10(places));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let magnitude = (scaled.abs() + half).floor().to_integer();
    let rounded = if scaled.is_negative() {
        -magnitude
    } else {
        magnitude
    };
    render_scaled(&rounded, places)
}

/// Fixed-point rendering for floats, with the same no-negative-zero rule.
pub fn format_fixed_f64(x: f64, places: usize) -> String {
    let s = format!("{x:.places$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float; `None` for NaN and infinities.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
