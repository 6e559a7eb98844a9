//! Counts of multiplicatively dependent vectors of bounded height and the
//! corresponding asymptotic main terms.

mod okcount;
mod zcount;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

pub use okcount::{canonical_elements, count_pairs_ok, primitive_classes};
pub use zcount::{common_base_pairs, count_by_rank, count_pairs, emit_lex, rank, ExponentMemo};

use crate::arith::{format_rational, QuadField};
use crate::real::{certify, pi, sqrt_rational, Interval};
use crate::{Error, Limits, Result};

/// Field selector for main terms: ℤ, or an imaginary quadratic ring given
/// by its number of roots of unity `w` and discriminant `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Integers,
    Imaginary { w: u32, d: i64 },
}

impl FieldSpec {
    pub fn of(field: QuadField) -> Self {
        FieldSpec::Imaginary { w: field.unit_order(), d: field.discriminant() }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Integers | FieldSpec::Imaginary { w: 4, d: -4 } | FieldSpec::Imaginary { w: 6, d: -3 } => Ok(self),
            FieldSpec::Imaginary { w, d } => Err(Error::UnsupportedField(format!("w={w}, D={d}"))),
        }
    }
}

/// Main term of the count, exact when rational.
#[derive(Debug, Clone)]
pub struct LeadingTerm {
    pub exact: Option<BigRational>,
    pub value: Interval,
    /// Certified significant digits of the value.
    pub decimal: String,
}

impl LeadingTerm {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"exact": self.exact.as_ref().map(format_rational), "value": self.decimal})
    }
}

const DIGITS: u32 = 15;

fn digits_of(v: &Interval) -> Option<String> {
    v.certain_digits(DIGITS)
}

/// Main term `n(n+1)(2H)^{n-1}` over ℤ, or `n(n+1)/2 · w · (2πH²/√|D|)^{n-1}`.
pub fn leading_term(n: u32, h: &BigRational, field: FieldSpec, limits: &Limits) -> Result<LeadingTerm> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    if !h.is_positive() {
        return Err(Error::InvalidParams("H must be positive".into()));
    }
    match field.validate()? {
        FieldSpec::Integers => {
            let two_h = h * BigRational::from_integer(2.into());
            let v = BigRational::from_integer(BigInt::from(n) * BigInt::from(n + 1)) * num_traits::pow(two_h, n as usize - 1);
            let value = Interval::from_rational(&v, 64);
            Ok(LeadingTerm { decimal: format_rational(&v), exact: Some(v), value })
        }
        FieldSpec::Imaginary { w, d } => {
            let (value, decimal) = certify(96, limits, |prec| {
                let v = imaginary_term(n, h, w, d, prec)?;
                let s = digits_of(&v)?;
                Some((v, s))
            })?;
            Ok(LeadingTerm { exact: None, value, decimal })
        }
    }
}

fn imaginary_term(n: u32, h: &BigRational, w: u32, d: i64, prec: u32) -> Option<Interval> {
    let coeff = BigRational::new(BigInt::from(n) * BigInt::from(n + 1) * BigInt::from(w), 2.into());
    let base = pi(prec + 16)
        .mul_rational(&(h * h * BigRational::from_integer(2.into())))
        .div(&sqrt_rational(&BigRational::from_integer(BigInt::from(-d)), prec + 16))?;
    Some(base.pow(n as u64 - 1).mul_rational(&coeff))
}

/// Outcome of a census run.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub ring: String,
    pub n: u32,
    #[serde(rename = "H")]
    pub bound: String,
    pub count: u64,
    pub leading: String,
    pub ratio: String,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

fn ratio_string(count: u64, n: u32, h: &BigRational, field: FieldSpec, limits: &Limits) -> Result<String> {
    if count == 0 {
        return Ok("0".into());
    }
    match field {
        FieldSpec::Integers => {
            let lead = leading_term(n, h, field, limits)?.exact.expect("rational main term");
            let r = BigRational::from_integer(count.into()) / lead;
            Ok(crate::real::truncate_sig(&r, 12))
        }
        FieldSpec::Imaginary { w, d } => certify(96, limits, |prec| {
            let c = Interval::from_int(count, prec);
            c.div(&imaginary_term(n, h, w, d, prec)?)?.certain_digits(12)
        }),
    }
}

/// Exact count of dependent `v ∈ ℤ^n` with `0 < |v_j| ≤ H`, optionally
/// streaming every vector in lexicographic order.
pub fn count_mn_z(n: u32, h: u64, limits: &Limits, emit: Option<&mut dyn FnMut(&[i64])>) -> Result<CensusReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParams("n must be in 2..=4".into()));
    }
    if h == 0 {
        return Err(Error::InvalidParams("H must be positive".into()));
    }
    zcount::check_budget(n as usize, h, limits)?;
    let start = Instant::now();
    let count = match emit {
        Some(sink) => {
            let memo = ExponentMemo::new(h);
            emit_lex(n as usize, h, &memo, sink)
        }
        None if n == 2 => count_pairs(h),
        None => count_by_rank(n as usize, h, &ExponentMemo::new(h)),
    };
    let hq = BigRational::from_integer(h.into());
    let lead = leading_term(n, &hq, FieldSpec::Integers, limits)?;
    Ok(CensusReport {
        ring: "Z".into(),
        n,
        bound: h.to_string(),
        count,
        ratio: ratio_string(count, n, &hq, FieldSpec::Integers, limits)?,
        leading: lead.decimal,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Exact count of dependent pairs in ℤ[i] or ℤ[ω] with Weil height ≤ `H`.
pub fn count_m2_ok(h: &BigRational, field: QuadField, limits: &Limits) -> Result<CensusReport> {
    if !h.is_positive() {
        return Err(Error::InvalidParams("H must be positive".into()));
    }
    let start = Instant::now();
    // height ≤ H with H ≥ 1 means N(α) ≤ H²; below 1 nothing qualifies
    let nmax = if *h < BigRational::one() { 0 } else { (h * h).floor().to_integer().to_u64().ok_or_else(|| Error::BudgetExceeded { budget: limits.budget })? };
    limits.meter().require(nmax as u128)?;
    let count = count_pairs_ok(field, nmax, limits)?;
    let lead = leading_term(2, h, FieldSpec::of(field), limits)?;
    let ring = if field == QuadField::Gaussian { "Zi" } else { "Zw" };
    Ok(CensusReport {
        ring: ring.into(),
        n: 2,
        bound: format_rational(h),
        count,
        ratio: ratio_string(count, 2, h, FieldSpec::of(field), limits)?,
        leading: lead.decimal,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests;
