use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use super::catalog::{check_independent, Constant};
use crate::real::Interval;
use crate::{Error, Limits, Result};

pub const MAX_Q: u64 = 1_000_000_000;
const FIX: u32 = 100;

/// Smallest `q` with `lo < {q·r} < hi` and `{q·s} < smax`, each strict
/// inequality certified.
#[derive(Debug, Clone)]
pub struct KroneckerResult {
    pub q: u64,
    pub frac_qr: Interval,
    pub frac_qs: Interval,
    pub lo: BigRational,
    pub hi: BigRational,
    pub smax: BigRational,
    pub precision: u32,
}

impl KroneckerResult {
    pub fn to_json(&self) -> Value {
        let (rl, ru) = self.frac_qr.decimal_bounds(30);
        let (sl, su) = self.frac_qs.decimal_bounds(30);
        json!({
            "q": self.q,
            "frac_qr": [rl, ru],
            "frac_qs": [sl, su],
            "lower": crate::arith::format_rational(&self.lo),
            "upper": crate::arith::format_rational(&self.hi),
            "s_bound": crate::arith::format_rational(&self.smax),
            "precision": self.precision,
        })
    }

    /// Re-checks all three strict inequalities at `prec` bits.
    pub fn verify_at(&self, r: &Constant, s: &Constant, prec: u32) -> bool {
        matches!(decide(r, s, self.q, &self.lo, &self.hi, &self.smax, prec), Some((true, _, _)))
    }
}

/// `{q·c}` at `prec` bits, if the integer part is certified.
fn frac_of(c: &Constant, q: u64, prec: u32) -> Option<Interval> {
    let extra = 64 - q.leading_zeros();
    c.eval(prec + extra).mul_int(&BigInt::from(q)).fract().map(|f| f.with_prec(prec))
}

/// `Some((holds, {qr}, {qs}))` once every comparison is decided.
fn decide(
    r: &Constant,
    s: &Constant,
    q: u64,
    lo: &BigRational,
    hi: &BigRational,
    smax: &BigRational,
    prec: u32,
) -> Option<(bool, Interval, Interval)> {
    let fr = frac_of(r, q, prec)?;
    let fs = frac_of(s, q, prec)?;
    let a = fr.cmp_rational(lo)? == Ordering::Greater;
    let b = fr.cmp_rational(hi)? == Ordering::Less;
    let c = fs.cmp_rational(smax)? == Ordering::Less;
    Some((a && b && c, fr, fs))
}

fn fixed_frac(c: &Constant) -> u128 {
    let v = c.eval(FIX + 64);
    let lo = v.lower();
    let f = &lo - lo.floor();
    (f * BigRational::from_integer(BigInt::one() << FIX)).floor().to_integer().to_u128().unwrap()
}

fn fixed_of(x: &BigRational, up: bool) -> u128 {
    let t = x * BigRational::from_integer(BigInt::one() << FIX);
    let v = if up { t.ceil() } else { t.floor() };
    v.to_integer().to_u128().unwrap_or(1u128 << FIX)
}

/// Linear scan over `q = 1, 2, …`. Fixed-point fractional parts with
/// `FIX` bits screen candidates with a margin covering their accumulated
/// error; every candidate is then decided with certified intervals, so the
/// first accepted `q` is the smallest valid one.
pub(crate) fn kronecker_scan(
    r: &Constant,
    s: &Constant,
    lo: &BigRational,
    hi: &BigRational,
    smax: &BigRational,
    qmax: u64,
    limits: &Limits,
) -> Result<KroneckerResult> {
    let one = 1u128 << FIX;
    let mask = one - 1;
    let (rf, sf) = (fixed_frac(r), fixed_frac(s));
    let (lf, hf, sm) = (fixed_of(lo, false), fixed_of(hi, true), fixed_of(smax, true));
    let meter = limits.meter();
    let (mut ar, mut as_) = (0u128, 0u128);
    for q in 1..=qmax {
        ar = (ar + rf) & mask;
        as_ = (as_ + sf) & mask;
        if q & 0xffff == 0 {
            meter.charge(0x10000)?;
        }
        // true value lies in [acc, acc + 2q + 2] ulps (mod 1)
        let slack = 2 * q as u128 + 2;
        let r_ok = ar + slack > lf && ar < hf;
        let s_ok = as_ < sm || as_ + slack >= one;
        if !(r_ok && s_ok) {
            continue;
        }
        let mut prec = 128;
        loop {
            if let Some((holds, fr, fs)) = decide(r, s, q, lo, hi, smax, prec) {
                if holds {
                    return Ok(KroneckerResult {
                        q,
                        frac_qr: fr,
                        frac_qs: fs,
                        lo: lo.clone(),
                        hi: hi.clone(),
                        smax: smax.clone(),
                        precision: prec,
                    });
                }
                break;
            }
            if prec >= limits.max_precision {
                return Err(limits.precision_error());
            }
            prec = (prec * 2).min(limits.max_precision);
        }
    }
    Err(Error::SearchBudgetExceeded(format!("no q up to {qmax}")))
}

/// Smallest `q ≥ 1` with `ε/4 < {q r} < ε/2` and `{q s} < ε²/(20·max(a, b))`.
pub fn kronecker_q(
    r: &Constant,
    s: &Constant,
    eps: &BigRational,
    a: &BigRational,
    b: &BigRational,
    limits: &Limits,
) -> Result<KroneckerResult> {
    if !(eps.is_positive() && eps < &BigRational::one()) {
        return Err(Error::InvalidParams("epsilon must lie in (0, 1)".into()));
    }
    if !(a.is_positive() && b.is_positive()) {
        return Err(Error::InvalidParams("a and b must be positive".into()));
    }
    check_independent(r, s)?;
    let m = a.max(b).clone();
    let smax = eps * eps / (BigRational::from_integer(20.into()) * m);
    let lo = eps / BigRational::from_integer(4.into());
    let hi = eps / BigRational::from_integer(2.into());
    kronecker_scan(r, s, &lo, &hi, &smax, MAX_Q, limits)
}
