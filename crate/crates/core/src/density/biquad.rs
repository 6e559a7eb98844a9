use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{format_quad, format_rational, QuadRat};
use crate::real::{scientific, Surd};
use crate::{Error, Result};

/// Largest `|q|` tried by the scan before switching to convergents.
const SCAN: i64 = 4096;

/// How one coordinate was matched by `p + q·√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiquadStep {
    /// Smallest `|q|` found by scanning `0, 1, −1, 2, …`.
    Scan,
    /// `k` copies of a convergent gap `q√2 − p`.
    Convergent,
}

impl BiquadStep {
    fn name(self) -> &'static str {
        match self {
            BiquadStep::Scan => "scan",
            BiquadStep::Convergent => "convergent",
        }
    }
}

/// `a + b√2 + c·i + d·√2·i`, an algebraic integer of ℚ(√2, i), near `z`.
#[derive(Debug, Clone)]
pub struct BiquadApprox {
    pub target: QuadRat,
    pub eps: BigRational,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub steps: [BiquadStep; 2],
    /// Exact `|output − z|²` as `r + s√2`.
    pub dist2: Surd,
}

impl BiquadApprox {
    pub fn to_json(&self) -> Value {
        let (re, im) = self.target.re_im();
        json!({
            "target": format_quad(&re, &im, "i"),
            "eps": format_rational(&self.eps),
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "c": self.c.to_string(),
            "d": self.d.to_string(),
            "imag_step": self.steps[0].name(),
            "real_step": self.steps[1].name(),
            "dist2": [format_rational(&self.dist2.r), format_rational(&self.dist2.s)],
            "dist2_upper": scientific(&upper(&self.dist2), 6, true),
        })
    }
}

/// Rational upper bound on `x`, tight to about `2^-64` relative to `|s|`.
fn upper(x: &Surd) -> BigRational {
    let k = x.s.numer().bits() + x.s.denom().bits() + 64;
    let lo = (BigInt::from(2) << (2 * k)).sqrt();
    let den = BigInt::from(1) << k;
    let root = if x.s.is_negative() { lo } else { lo + 1 };
    &x.r + &x.s * BigRational::new(root, den)
}

fn gap(p: &BigInt, q: &BigInt, t: &BigRational) -> Surd {
    Surd::new(BigRational::from_integer(p.clone()) - t, BigRational::from_integer(q.clone()), 2)
}

fn within(p: &BigInt, q: &BigInt, t: &BigRational, tol: &BigRational) -> bool {
    gap(p, q, t).abs().cmp_exact(&Surd::rational(tol.clone(), 2)) == Ordering::Less
}

/// Integers `(p, q)` with `|p + q√2 − t| < tol`.
fn match_coordinate(t: &BigRational, tol: &BigRational) -> (BigInt, BigInt, BiquadStep) {
    let limit = (BigRational::from_integer(4.into()) / tol).ceil().to_integer().to_i64().unwrap_or(i64::MAX).min(SCAN);
    let (tf, tolf) = (t.to_f64().unwrap_or(f64::MAX), tol.to_f64().unwrap_or(f64::MAX));
    for i in 0..=2 * limit {
        let q = if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) };
        let rest = tf - q as f64 * std::f64::consts::SQRT_2;
        let p = rest.round();
        if (rest - p).abs() > tolf + 1e-9 * (1.0 + rest.abs()) || !p.is_finite() {
            continue;
        }
        let (qb, p) = (BigInt::from(q), BigInt::from(p as i64));
        for cand in [p.clone(), &p - 1, &p + 1] {
            if within(&cand, &qb, t, tol) {
                return (cand, qb, BiquadStep::Scan);
            }
        }
    }
    // convergents p/q < √2 have 0 < q√2 − p; take one below tol
    let (mut p, mut q) = (BigInt::from(1), BigInt::from(1));
    loop {
        let eta = gap(&-p.clone(), &q, &BigRational::zero());
        if eta.cmp_exact(&Surd::rational(tol.clone(), 2)) == Ordering::Less {
            break;
        }
        // two steps of p/q → (p + 2q)/(p + q)
        for _ in 0..2 {
            let np = &p + &q * 2;
            q = &p + &q;
            p = np;
        }
    }
    let n = t.floor().to_integer();
    let f = t - BigRational::from_integer(n.clone());
    // k·η ≤ f < (k+1)·η
    let eta = gap(&-p.clone(), &q, &BigRational::zero());
    // 2q² − p² = 1 for these convergents, so η = 1/(p + q√2) without cancellation
    let eta_f = 1.0 / (p.to_f64().unwrap() + q.to_f64().unwrap() * std::f64::consts::SQRT_2);
    let mut k = BigRational::from_float(f.to_f64().unwrap() / eta_f).map(|x| x.floor().to_integer()).unwrap_or_default();
    let scaled = |k: &BigInt| eta.scale(&BigRational::from_integer(k.clone()));
    while scaled(&k).cmp_exact(&Surd::rational(f.clone(), 2)) == Ordering::Greater {
        k -= 1;
    }
    while scaled(&(&k + 1)).cmp_exact(&Surd::rational(f.clone(), 2)) != Ordering::Greater {
        k += 1;
    }
    (n - &k * &p, &k * &q, BiquadStep::Convergent)
}

/// Approximates `z` within `ε` by `a + b√2 + (c + d√2)·i`: `c + d√2` matches
/// `Im z` and `a + b√2` matches `Re z`, each within `ε/2`.
pub fn approx_biquad(z: &QuadRat, eps: &BigRational) -> Result<BiquadApprox> {
    if !eps.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    if z.field != crate::arith::QuadField::Gaussian {
        return Err(Error::InvalidParams("target must be a Gaussian rational".into()));
    }
    let (x, y) = z.re_im();
    let tol = eps / BigRational::from_integer(2.into());
    let (c, d, s_im) = match_coordinate(&y, &tol);
    let (a, b, s_re) = match_coordinate(&x, &tol);
    let u = gap(&a, &b, &x);
    let v = gap(&c, &d, &y);
    let dist2 = u.mul(&u).add(&v.mul(&v));
    if dist2.cmp_exact(&Surd::rational(eps * eps, 2)) != Ordering::Less {
        return Err(Error::Precondition("biquadratic approximation missed the tolerance".into()));
    }
    Ok(BiquadApprox { target: z.clone(), eps: eps.clone(), a, b, c, d, steps: [s_im, s_re], dist2 })
}
