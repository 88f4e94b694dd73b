//! Exact rational arithmetic for distance values.
//!
//! Every distance in this crate is a ratio of machine integers. The
//! reference tables this library is tested against are exact integers and
//! small fractions, and exact arithmetic keeps comparisons (symmetry,
//! triangle inequality, upper bounds) free of tolerance tuning. Floating
//! point appears only at the display boundary.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A nonnegative rational distance value.
///
/// `i128` components leave ample headroom: the largest quantities in
/// practice are sums of n weighted label distances with n bounded by the
/// completion guard, and exponential weight denominators up to
/// base^depth for modest depths.
pub type Value = Ratio<i128>;

pub fn zero() -> Value {
    Value::zero()
}

pub fn one() -> Value {
    Value::one()
}

pub fn from_int(n: i128) -> Value {
    Value::from_integer(n)
}

/// Parses `8`, `-3`, `3/7`, or `0.25` into an exact rational.
pub fn parse_value(text: &str) -> Option<Value> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: i128 = num.trim().parse().ok()?;
        let d: i128 = den.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Value::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = whole.trim_start().starts_with('-');
        let w: i128 = if whole == "-" || whole.is_empty() {
            0
        } else {
            whole.parse().ok()?
        };
        let f: i128 = if frac.is_empty() {
            0
        } else {
            frac.parse().ok()?
        };
        let scale = 10i128.pow(frac.len() as u32);
        let magnitude = w.unsigned_abs() as i128 * scale + f;
        let signed = if negative { -magnitude } else { magnitude };
        return Some(Value::new(signed, scale));
    }
    text.parse::<i128>().ok().map(Value::from_integer)
}

/// Renders integers without a denominator: `8`, `3/7`, `-1/2`.
pub fn format_value(v: &Value) -> String {
    if v.denom() == &1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn value_to_f64(v: &Value) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Exact nonnegative integer power, used for exponential depth weights.
pub fn pow_value(base: &Value, exp: usize) -> Value {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn is_nonnegative(v: &Value) -> bool {
    !v.is_negative()
}
