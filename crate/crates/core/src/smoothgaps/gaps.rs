use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::stream::{ser_big, smooth_stream};
use crate::real::{certify, exp, ln, ln_rational, truncate_sig, Interval};
use crate::{Error, Limits, Result};

const SIG: u32 = 30;

/// One consecutive pair `m_j < m_{j+1}` with `g_j·(log m_j)^θ / m_j`.
#[derive(Debug, Clone, Serialize)]
pub struct GapRecord {
    pub j: usize,
    #[serde(serialize_with = "ser_big")]
    pub m: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub gap: BigUint,
    /// 30 certified significant digits, truncated.
    pub normalized: String,
    #[serde(skip)]
    pub value: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapExtreme {
    pub j: usize,
    pub m: String,
    pub normalized: String,
}

/// Extremes over `m_j ≥ √N`, with the fitted exponents
/// `c_lo = max log(m/g)/log log m` and `c_hi = min log(m/g)/log log m`, so
/// that `m/(log m)^{c_lo} ≤ g ≤ m/(log m)^{c_hi}` on the range. Report only.
#[derive(Debug, Clone, Serialize)]
pub struct GapSummary {
    pub theta: String,
    pub considered: usize,
    pub max: Option<GapExtreme>,
    pub min: Option<GapExtreme>,
    pub fitted_c_lo: Option<String>,
    pub fitted_c_hi: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapTable {
    pub primes: Vec<u64>,
    #[serde(serialize_with = "ser_big")]
    pub limit: BigUint,
    pub records: Vec<GapRecord>,
    pub summary: GapSummary,
}

impl GapTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,m_j,gap,normalized\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{},{}\n", r.j, r.m, r.gap, r.normalized));
        }
        out
    }
}

fn big(m: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(m.clone()))
}

/// `(log m)^θ` at working precision; `m ≥ 2`.
fn log_power(m: &BigRational, theta: &BigRational, prec: u32) -> Interval {
    let l = ln_rational(m, prec + 16);
    let v = if theta.is_integer() {
        l.pow(theta.to_integer().try_into().unwrap_or(u64::MAX))
    } else {
        exp(&ln(&l).expect("log m > 0").mul_rational(theta))
    };
    v.with_prec(prec)
}

fn normalized(m: &BigUint, g: &BigUint, theta: &BigRational, limits: &Limits) -> Result<(String, BigRational)> {
    let ratio = BigRational::new(BigInt::from(g.clone()), BigInt::from(m.clone()));
    if theta.is_zero() {
        let t = truncate_sig(&ratio, SIG);
        let t = if t.contains('.') { t.trim_end_matches('0').trim_end_matches('.').to_string() } else { t };
        return Ok((t, ratio));
    }
    if m == &BigUint::one() {
        return Ok(("0".into(), BigRational::zero()));
    }
    let mr = big(m);
    certify(128, limits, |prec| {
        let v = log_power(&mr, theta, prec).mul_rational(&ratio);
        v.certain_digits(SIG).map(|s| (s, v.lower()))
    })
}

/// `log(m/g) / log log m` to 10 digits, for `m ≥ 3`.
fn fitted(m: &BigUint, g: &BigUint, limits: &Limits) -> Result<(String, BigRational)> {
    let q = BigRational::new(BigInt::from(m.clone()), BigInt::from(g.clone()));
    let mr = big(m);
    certify(96, limits, |prec| {
        let num = ln_rational(&q, prec);
        let den = ln(&ln_rational(&mr, prec + 16))?;
        let v = num.div(&den)?;
        if v.contains_zero() {
            // only g = m, as for S = {2}, gives exactly zero
            return q.is_one().then(|| ("0".to_string(), BigRational::zero()));
        }
        v.certain_digits(10).map(|s| (s, v.lower()))
    })
}

/// Gap records for all consecutive stream terms `≤ N`, with extremes of the
/// normalized statistic over `m_j ≥ √N`.
pub fn gap_table(primes: &[u64], limit: &BigUint, theta: &BigRational, limits: &Limits) -> Result<GapTable> {
    if theta.is_negative() {
        return Err(Error::InvalidParams("theta must be nonnegative".into()));
    }
    let stream = smooth_stream(primes, limit)?;
    let ps = stream.primes().to_vec();
    let terms: Vec<BigUint> = stream.map(|t| t.value).collect();
    let mut records = Vec::with_capacity(terms.len().saturating_sub(1));
    let mut max: Option<(usize, BigRational)> = None;
    let mut min: Option<(usize, BigRational)> = None;
    let mut c_lo: Option<(String, BigRational)> = None;
    let mut c_hi: Option<(String, BigRational)> = None;
    let mut considered = 0;
    let three = BigUint::from(3u8);
    for (j, w) in terms.windows(2).enumerate() {
        let gap = &w[1] - &w[0];
        let (text, value) = normalized(&w[0], &gap, theta, limits)?;
        let idx = records.len();
        if &w[0] * &w[0] >= *limit {
            considered += 1;
            if max.as_ref().is_none_or(|(_, v)| value > *v) {
                max = Some((idx, value.clone()));
            }
            if min.as_ref().is_none_or(|(_, v)| value < *v) {
                min = Some((idx, value.clone()));
            }
            if w[0] >= three {
                let c = fitted(&w[0], &gap, limits)?;
                if c_lo.as_ref().is_none_or(|(_, v)| c.1 > *v) {
                    c_lo = Some(c.clone());
                }
                if c_hi.as_ref().is_none_or(|(_, v)| c.1 < *v) {
                    c_hi = Some(c);
                }
            }
        }
        records.push(GapRecord { j: j + 1, m: w[0].clone(), gap, normalized: text, value });
    }
    let extreme = |e: Option<(usize, BigRational)>| {
        e.map(|(i, _)| GapExtreme {
            j: records[i].j,
            m: records[i].m.to_string(),
            normalized: records[i].normalized.clone(),
        })
    };
    let summary = GapSummary {
        theta: crate::arith::format_rational(theta),
        considered,
        max: extreme(max),
        min: extreme(min),
        fitted_c_lo: c_lo.map(|c| c.0),
        fitted_c_hi: c_hi.map(|c| c.0),
    };
    Ok(GapTable { primes: ps, limit: limit.clone(), records, summary })
}
