use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::check_prime_pair;
use crate::real::{certify, ln, ln_rational, scientific, Interval};
use crate::{Error, Limits, Result};

/// `r_j / s_j` with a certified enclosure of `|x − r_j/s_j|`.
#[derive(Debug, Clone, Serialize)]
pub struct Convergent {
    pub j: usize,
    pub r: String,
    pub s: String,
    pub partial_quotient: String,
    pub err_lo: String,
    pub err_hi: String,
    /// `|x − r_j/s_j|·s_j·s_{j+1} < 1`, decided on the certified upper bound.
    pub law_holds: bool,
    #[serde(skip)]
    pub num: BigInt,
    #[serde(skip)]
    pub den: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergentReport {
    pub p: u64,
    pub q: u64,
    /// Precision (bits) of the final run and of the run before it.
    pub precision: u32,
    pub previous_precision: u32,
    pub convergents: Vec<Convergent>,
    #[serde(skip)]
    pub quotients: Vec<BigInt>,
    #[serde(skip)]
    pub previous_quotients: Vec<BigInt>,
}

/// Partial quotients certified by the enclosure `x`: stops as soon as the
/// interval straddles an integer or the remainder cannot be inverted.
pub fn certified_quotients(x: &Interval, max: usize) -> Vec<BigInt> {
    let (mut a, mut b) = (x.lower(), x.upper());
    let mut out = Vec::new();
    while out.len() < max {
        let f = a.floor();
        if b.floor() != f {
            break;
        }
        out.push(f.to_integer());
        let (ra, rb) = (&a - &f, &b - &f);
        if ra.is_zero() {
            break;
        }
        a = rb.recip();
        b = ra.recip();
    }
    out
}

pub(super) fn log_ratio(p: u64, q: u64, prec: u32) -> Interval {
    let lp = ln_rational(&BigRational::from_integer(p.into()), prec + 16);
    let lq = ln_rational(&BigRational::from_integer(q.into()), prec + 16);
    lp.div(&lq).expect("log q > 0").with_prec(prec)
}

/// Convergents `j = 0, …, count−1` of `log p / log q`, starting from `0/1`.
///
/// Precision doubles from 64 bits until two successive runs both certify
/// the first `count + 1` partial quotients and agree on them (the extra
/// quotient supplies `s_count` for the last convergent law check).
pub fn cf_convergents(p: u64, q: u64, count: usize, limits: &Limits) -> Result<ConvergentReport> {
    check_prime_pair(p, q)?;
    if count == 0 || count > 60 {
        return Err(Error::InvalidParams("count must be in 1..=60".into()));
    }
    let need = count + 1;
    let mut prec = 64u32;
    let mut prev: Option<(u32, Vec<BigInt>)> = None;
    let (x, quotients, previous) = loop {
        let x = log_ratio(p, q, prec);
        let qs = certified_quotients(&x, need);
        if qs.len() == need {
            if let Some((pp, pq)) = &prev {
                if pq.len() == need && pq == &qs {
                    break (x, qs, (*pp, pq.clone()));
                }
            }
        }
        if prec >= limits.max_precision {
            return Err(limits.precision_error());
        }
        prev = Some((prec, qs));
        prec = (prec * 2).min(limits.max_precision);
    };
    // r_{-1}/s_{-1} = 1/0, r_{-2}/s_{-2} = 0/1
    let (mut r0, mut s0) = (BigInt::zero(), BigInt::one());
    let (mut r1, mut s1) = (BigInt::one(), BigInt::zero());
    let mut rs = Vec::with_capacity(need);
    for a in &quotients {
        let r = a * &r1 + &r0;
        let s = a * &s1 + &s0;
        r0 = std::mem::replace(&mut r1, r.clone());
        s0 = std::mem::replace(&mut s1, s.clone());
        rs.push((r, s));
    }
    let convergents = (0..count)
        .map(|j| {
            let (r, s) = &rs[j];
            debug_assert!(r.gcd(s).is_one());
            let err = x.add_rational(&-BigRational::new(r.clone(), s.clone())).abs();
            let s_next = &rs[j + 1].1;
            let bound = err.upper() * BigRational::from_integer(s * s_next);
            Convergent {
                j,
                r: r.to_string(),
                s: s.to_string(),
                partial_quotient: quotients[j].to_string(),
                err_lo: scientific(&err.lower(), 6, false),
                err_hi: scientific(&err.upper(), 6, true),
                law_holds: bound < BigRational::one(),
                num: r.clone(),
                den: s.clone(),
            }
        })
        .collect();
    Ok(ConvergentReport {
        p,
        q,
        precision: prec,
        previous_precision: previous.0,
        convergents,
        quotients,
        previous_quotients: previous.1,
    })
}

/// `A = 36820.8·max(1, log p)·log q` and the exponent `c_0 = 1/⌈A⌉`.
#[derive(Debug, Clone, Serialize)]
pub struct GouillonConstant {
    pub p: u64,
    pub q: u64,
    /// 10 significant digits, truncated.
    pub value: String,
    pub c0: String,
    #[serde(skip)]
    pub enclosure: Interval,
    #[serde(skip)]
    pub c0_exact: BigRational,
}

impl GouillonConstant {
    /// `sig` certified significant digits followed by `...`.
    pub fn display(&self, sig: u32) -> Option<String> {
        self.enclosure.certain_digits(sig).map(|s| format!("{s}..."))
    }

    /// `{"A": 8 certified digits, "c0": "1/⌈A⌉"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"A": self.display(8).unwrap_or_else(|| self.value.clone()), "c0": self.c0})
    }
}

pub fn gouillon_a(p: u64, q: u64) -> Result<GouillonConstant> {
    check_prime_pair(p, q)?;
    let k = BigRational::new(368208.into(), 10.into());
    let prec = 160;
    let lq = ln_rational(&BigRational::from_integer(q.into()), prec);
    let a = if p == 2 {
        // log 2 < 1
        lq.mul_rational(&k)
    } else {
        ln_rational(&BigRational::from_integer(p.into()), prec).mul(&lq).mul_rational(&k)
    };
    let ceil = a.upper().ceil().to_integer();
    if a.lower().ceil().to_integer() != ceil {
        return Err(Error::PrecisionCeilingReached { bits: prec });
    }
    let c0_exact = BigRational::new(BigInt::one(), ceil);
    Ok(GouillonConstant {
        p,
        q,
        value: a.certain_digits(10).ok_or(Error::PrecisionCeilingReached { bits: prec })?,
        c0: crate::arith::format_rational(&c0_exact),
        enclosure: a,
        c0_exact,
    })
}

/// Certified `|r·log q − s·log p|` and the empirical exponent
/// `log(value)/log R`, `R = max(r, s)`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearForm {
    pub r: u64,
    pub s: u64,
    pub p: u64,
    pub q: u64,
    pub lower: String,
    pub upper: String,
    /// Certified leading digits of the value.
    pub value: String,
    /// `None` when `R = 1`.
    pub exponent: Option<String>,
    pub precision: u32,
    #[serde(skip)]
    pub enclosure: Interval,
}

pub fn linear_form(r: u64, s: u64, p: u64, q: u64, limits: &Limits) -> Result<LinearForm> {
    check_prime_pair(p, q)?;
    if r == 0 || s == 0 {
        return Err(Error::InvalidParams("r and s must be positive".into()));
    }
    let tol = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
    let big_r = r.max(s);
    let (enclosure, exponent) = certify(96, limits, |prec| {
        let lq = ln_rational(&BigRational::from_integer(q.into()), prec);
        let lp = ln_rational(&BigRational::from_integer(p.into()), prec);
        let v = lq.mul_int(&r.into()).sub(&lp.mul_int(&s.into())).abs();
        if v.relative_width()? > tol {
            return None;
        }
        let exponent = if big_r == 1 {
            None
        } else {
            let lr = ln_rational(&BigRational::from_integer(big_r.into()), prec);
            Some(ln(&v)?.div(&lr)?.certain_digits(10)?)
        };
        Some((v, exponent))
    })?;
    let value = enclosure.certain_digits(20).unwrap_or_else(|| scientific(&enclosure.lower(), 6, false));
    Ok(LinearForm {
        r,
        s,
        p,
        q,
        lower: scientific(&enclosure.lower(), 25, false),
        upper: scientific(&enclosure.upper(), 25, true),
        value,
        exponent,
        precision: enclosure.prec(),
        enclosure,
    })
}
