use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// Exponent `e` with `10^e ≤ |x| < 10^{e+1}`, for nonzero `x`.
fn decade(x: &BigRational) -> i64 {
    let a = x.abs();
    let int = a.to_integer();
    if !int.is_zero() {
        return int.to_string().len() as i64 - 1;
    }
    let mut k = 0i64;
    let mut y = a;
    let ten = BigRational::from_integer(10.into());
    while y < BigRational::one() {
        y *= &ten;
        k += 1;
    }
    -k
}

fn place_point(digits: &str, point_after: i64) -> String {
    if point_after <= 0 {
        format!("0.{}{}", "0".repeat((-point_after) as usize), digits)
    } else if point_after as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point_after as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point_after as usize);
        format!("{a}.{b}")
    }
}

/// `|x|` truncated to `sig` significant digits, returned as (digits, decade).
fn trunc_digits(x: &BigRational, sig: u32) -> (String, i64) {
    let e = decade(x);
    let shift = sig as i64 - 1 - e;
    let a = x.abs();
    let scaled = if shift >= 0 {
        (a * BigRational::from_integer(pow10(shift as u32))).to_integer()
    } else {
        (a / BigRational::from_integer(pow10((-shift) as u32))).to_integer()
    };
    (scaled.to_string(), e)
}

/// Decimal string of `x` truncated toward zero to `sig` significant digits.
pub fn truncate_sig(x: &BigRational, sig: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let (d, e) = trunc_digits(x, sig);
    let s = place_point(&d, e + 1);
    if x.is_negative() {
        format!("-{s}")
    } else {
        s
    }
}

/// Fixed-point decimal with `frac` digits, rounded down (`up = false`) or up.
pub fn fixed(x: &BigRational, frac: u32, up: bool) -> String {
    let scaled = x * BigRational::from_integer(pow10(frac));
    let n = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let padded = if digits.len() <= frac as usize {
        format!("{}{}", "0".repeat(frac as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let body = if frac == 0 {
        padded
    } else {
        let (a, b) = padded.split_at(padded.len() - frac as usize);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `|x|` in scientific notation (`1.2345e-7`) with `sig` digits, rounded
/// down or up.
pub fn scientific(x: &BigRational, sig: u32, up: bool) -> String {
    let a = x.abs();
    if a.is_zero() {
        return "0".to_string();
    }
    let mut e = decade(&a);
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        &a * BigRational::from_integer(pow10(shift as u32))
    } else {
        &a / BigRational::from_integer(pow10((-shift) as u32))
    };
    let mut n = if up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    if n == pow10(sig) {
        n = pow10(sig - 1);
        e += 1;
    }
    let d = n.to_string();
    let (head, tail) = d.split_at(1);
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

impl Interval {
    /// The first `sig` significant digits when both endpoints share them.
    pub fn certain_digits(&self, sig: u32) -> Option<String> {
        if self.contains_zero() {
            return None;
        }
        let (lo, hi) = (self.lower(), self.upper());
        let a = truncate_sig(&lo, sig);
        let b = truncate_sig(&hi, sig);
        (a == b).then_some(a)
    }

    /// `[lo, hi]` as outward-rounded decimals with `frac` fractional digits.
    pub fn decimal_bounds(&self, frac: u32) -> (String, String) {
        (fixed(&self.lower(), frac, false), fixed(&self.upper(), frac, true))
    }
}

/// Exact decimal expansion of a dyadic-or-terminating rational, else
/// `frac` digits truncated.
pub fn rational_decimal(x: &BigRational, frac: u32) -> String {
    let mut d = x.denom().clone();
    for p in [2u32, 5] {
        while d.is_multiple_of(&BigInt::from(p)) {
            d /= p;
        }
    }
    if d.is_one() {
        for k in 0..=frac {
            let scaled = x * BigRational::from_integer(pow10(k));
            if scaled.is_integer() {
                return fixed(x, k, false);
            }
        }
    }
    fixed(x, frac, false)
}
