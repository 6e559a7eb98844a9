use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::number::ExactNumber;
use super::ring::{QuadField, QuadRat, Ring};
use crate::error::{Error, Result};

fn invalid(s: &str) -> Error {
    Error::InvalidParams(format!("cannot parse number '{s}'"))
}

/// Parses `7`, `-8/9`, `0.125` or `-2.5` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(invalid(s));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| invalid(s))?;
        let d: BigInt = d.trim().parse().map_err(|_| invalid(s))?;
        if d.is_zero() {
            return Err(invalid(s));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || fp.is_empty() {
            return Err(invalid(s));
        }
        let whole: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().map_err(|_| invalid(s))?
        };
        let frac: BigInt = fp.parse().map_err(|_| invalid(s))?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| invalid(s))?;
    Ok(BigRational::from_integer(n))
}

/// Parses `a+bi` (Gaussian) or `a+bw` (Eisenstein, `w = (−1+√−3)/2`) with
/// rational `a`, `b`; plain rationals are accepted as well.
pub fn parse_quad(s: &str, field: QuadField) -> Result<QuadRat> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let sym = match field {
        QuadField::Gaussian => 'i',
        QuadField::Eisenstein => 'w',
    };
    let (re, im) = if let Some(body) = t.strip_suffix(sym) {
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (re_s, im_s) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im_s {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.trim_start_matches('+')).map_err(|_| invalid(s))?,
        };
        let re = if re_s.is_empty() { BigRational::zero() } else { parse_rational(re_s)? };
        (re, im)
    } else {
        (parse_rational(&t)?, BigRational::zero())
    };
    Ok(match field {
        QuadField::Gaussian => QuadRat::new(field, re, im),
        // re + im·ω = (re − im) + im·τ
        QuadField::Eisenstein => QuadRat::new(field, &re - &im, im),
    })
}

/// Parses a scalar for the given ring.
pub fn parse_number(s: &str, ring: Ring) -> Result<ExactNumber> {
    match ring {
        Ring::Rational => Ok(ExactNumber::from_rational(parse_rational(s)?)),
        Ring::Quad(f) => Ok(ExactNumber::Quadratic(parse_quad(s, f)?)),
    }
}
