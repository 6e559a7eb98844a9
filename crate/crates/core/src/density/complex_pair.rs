use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::real_vec::pair_witness;
use crate::arith::{ExactNumber, QuadField, QuadRat};
use crate::dependence::is_dependent;
use crate::real::{certify, ln_rational, pi, scientific, sin_cos, sqrt_rational, ComplexInterval, Interval};
use crate::{Error, Limits, Result};

pub const MAX_M: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexBranch {
    /// The target pair is already dependent and is returned unchanged.
    RootsOfUnity,
    BothZero,
    /// One zero target, the other of modulus below 1: `(s^m, s)`.
    ZeroSmall,
    /// One zero target, the other of modulus at least 1: `(s^{−m²}, s)`.
    ZeroLarge,
    /// Powers of a rounding `t` of `ω_m = (1 + 1/m²)·e^{2πi/m}`.
    Main,
}

/// `base^exponent`, kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerForm {
    pub base: QuadRat,
    pub exponent: i64,
}

impl PowerForm {
    pub fn to_json(&self) -> Value {
        json!({"base": self.base.to_string(), "exponent": self.exponent})
    }

    pub fn enclosure(&self, prec: u32) -> ComplexInterval {
        let b = if self.exponent < 0 { self.base.inv() } else { self.base.clone() };
        let (re, im) = b.re_im();
        ComplexInterval::from_rationals(&re, &im, prec).pow(self.exponent.unsigned_abs())
    }

    /// Exact value; only sensible for small exponents.
    pub fn expand(&self) -> QuadRat {
        self.base.pow(self.exponent)
    }
}

/// `a ≡ r (mod m)`, `0 ≤ r < m`, `(b + r)/m ≤ θ < (b + r + 1)/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Digits {
    pub a: i64,
    pub r: i64,
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexApprox {
    pub target: [QuadRat; 2],
    pub eps: BigRational,
    pub branch: ComplexBranch,
    pub m: Option<u64>,
    pub digits: Option<[Digits; 2]>,
    /// Denominator exponent `k` of `t = (x + yi)/2^k`.
    pub t_bits: Option<u32>,
    pub coords: [PowerForm; 2],
    pub witness: Vec<i64>,
    /// Certified upper bounds on `|v_j − z_j|`.
    pub distance_bounds: [BigRational; 2],
    pub roots_of_unity: Vec<usize>,
}

impl ComplexApprox {
    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch,
            "m": self.m,
            "digits": self.digits,
            "t_bits": self.t_bits,
            "coords": [self.coords[0].to_json(), self.coords[1].to_json()],
            "witness": self.witness,
            "distance_bounds": [
                scientific(&self.distance_bounds[0], 6, true),
                scientific(&self.distance_bounds[1], 6, true),
            ],
            "roots_of_unity": self.roots_of_unity,
        })
    }
}

fn gauss(re: BigRational, im: BigRational) -> QuadRat {
    QuadRat::gaussian(re, im)
}

fn check_gaussian(z: &QuadRat) -> Result<()> {
    if z.field != QuadField::Gaussian {
        return Err(Error::WrongRing);
    }
    Ok(())
}

/// Certified `|v − z|² < ε²`: `Some(bound on |v − z|)` or `None` when the
/// distance is at least `ε`.
fn distance_below(v: &PowerForm, z: &QuadRat, eps: &BigRational, limits: &Limits) -> Result<Option<BigRational>> {
    let (zr, zi) = z.re_im();
    let e2 = eps * eps;
    let start = 96 + 2 * (64 - v.exponent.unsigned_abs().leading_zeros());
    certify(start, limits, |prec| {
        let d = v.enclosure(prec).sub(&ComplexInterval::from_rationals(&zr, &zi, prec)).norm2();
        match d.cmp_rational(&e2) {
            Some(Ordering::Less) => {
                let up = sqrt_rational(&d.upper(), 64).upper();
                Some(Some(up))
            }
            Some(_) => Some(None),
            None => None,
        }
    })
}

fn is_root_of_unity(p: &PowerForm) -> bool {
    if p.exponent == 0 {
        return true;
    }
    let (re, im) = p.base.re_im();
    let unit = |x: &BigRational| x.is_zero() || x.abs().is_one();
    p.base.norm().is_one() && unit(&re) && unit(&im)
}

fn finish(
    target: &[QuadRat; 2],
    eps: &BigRational,
    branch: ComplexBranch,
    coords: [PowerForm; 2],
    witness: Vec<i64>,
    extra: (Option<u64>, Option<[Digits; 2]>, Option<u32>),
    limits: &Limits,
) -> Result<Option<ComplexApprox>> {
    let mut bounds = Vec::with_capacity(2);
    for (c, z) in coords.iter().zip(target) {
        match distance_below(c, z, eps, limits)? {
            Some(b) => bounds.push(b),
            None => return Ok(None),
        }
    }
    let roots_of_unity = coords.iter().enumerate().filter(|(_, c)| is_root_of_unity(c)).map(|(j, _)| j).collect();
    Ok(Some(ComplexApprox {
        target: target.clone(),
        eps: eps.clone(),
        branch,
        m: extra.0,
        digits: extra.1,
        t_bits: extra.2,
        coords,
        witness,
        distance_bounds: [bounds[0].clone(), bounds[1].clone()],
        roots_of_unity,
    }))
}

fn ln_abs(z: &QuadRat, prec: u32) -> Interval {
    ln_rational(&z.norm(), prec + 2).mul_rational(&BigRational::new(1.into(), 2.into())).with_prec(prec)
}

/// `a` with `(1 + 1/m²)^a ≤ |z| < (1 + 1/m²)^{a+1}`.
fn modulus_digit(z: &QuadRat, m: u64, limits: &Limits) -> Result<i64> {
    let mu = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(m) * BigInt::from(m));
    certify(96, limits, |prec| {
        let wp = prec + 2 * (64 - m.leading_zeros());
        let q = ln_abs(z, wp).div(&ln_rational(&mu, wp))?;
        q.floor()?.to_i64()
    })
}

/// `⌊m·θ⌋` for `z = |z|·e^{2πiθ}`, `0 ≤ θ < 1`, `m ≥ 8`.
fn sector(z: &QuadRat, m: u64, limits: &Limits) -> Result<i64> {
    let (re, im) = z.re_im();
    let mi = m as i64;
    // arguments that are rational multiples of π: multiples of π/4
    let eighths = if im.is_zero() {
        Some(if re.is_positive() { 0 } else { 4 })
    } else if re.is_zero() {
        Some(if im.is_positive() { 2 } else { 6 })
    } else if re.abs() == im.abs() {
        Some(match (re.is_positive(), im.is_positive()) {
            (true, true) => 1,
            (false, true) => 3,
            (false, false) => 5,
            (true, false) => 7,
        })
    } else {
        None
    };
    if let Some(e) = eighths {
        return Ok(Integer::div_floor(&(mi * e), &8));
    }
    let guess = {
        let th = im.to_f64().unwrap_or(0.0).atan2(re.to_f64().unwrap_or(0.0)) / std::f64::consts::TAU;
        ((th.rem_euclid(1.0) * m as f64).floor() as i64).clamp(0, mi - 1)
    };
    let order: Vec<i64> = [guess, guess - 1, guess + 1]
        .into_iter()
        .map(|k| k.rem_euclid(mi))
        .chain((0..mi).filter(|k| (k - guess).abs() > 1))
        .collect();
    for k in order {
        let inside = certify(96, limits, |prec| {
            let wp = prec + 16;
            let two_pi_over_m = pi(wp).mul_int(&BigInt::from(2)).div_int(&BigInt::from(m));
            let (s0, c0) = sin_cos(&two_pi_over_m.mul_int(&BigInt::from(k)));
            let (s1, c1) = sin_cos(&two_pi_over_m.mul_int(&BigInt::from(k + 1)));
            let zr = Interval::from_rational(&re, wp);
            let zi = Interval::from_rational(&im, wp);
            // cross(u_k, z) ≥ 0 and cross(z, u_{k+1}) > 0
            let a = c0.mul(&zi).sub(&s0.mul(&zr));
            let b = zr.mul(&s1).sub(&zi.mul(&c1));
            let sa = if a.is_positive() { true } else if a.is_negative() { false } else { return None };
            let sb = if b.is_positive() { true } else if b.is_negative() { false } else { return None };
            Some(sa && sb)
        })?;
        if inside {
            return Ok(k);
        }
    }
    unreachable!("every nonzero z lies in some sector")
}

fn omega(m: u64, prec: u32) -> ComplexInterval {
    let wp = prec + 16;
    let mu = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(m) * BigInt::from(m));
    let (s, c) = sin_cos(&pi(wp).mul_int(&BigInt::from(2)).div_int(&BigInt::from(m)));
    ComplexInterval::new(c.mul_rational(&mu), s.mul_rational(&mu)).with_prec(prec)
}

fn omega_pow(m: u64, e: i64, prec: u32) -> ComplexInterval {
    let w = omega(m, prec);
    let base = if e < 0 {
        let n = w.norm2();
        ComplexInterval::new(w.re.div(&n).unwrap(), w.im.neg().div(&n).unwrap())
    } else {
        w
    };
    base.pow(e.unsigned_abs())
}

/// Nearest dyadic Gaussian rational `(x + yi)/2^k` to `ω_m`.
fn round_omega(m: u64, k: u32) -> QuadRat {
    let w = omega(m, k + 64);
    let scale = BigRational::from_integer(BigInt::one() << k);
    let mid = |i: &Interval| ((i.lower() + i.upper()) / BigRational::from_integer(2.into()) * &scale).round() / &scale;
    gauss(mid(&w.re), mid(&w.im))
}

/// `|t^A − ω_m^A| < 1/m`, certified.
fn close_to_omega(t: &QuadRat, m: u64, e: i64, limits: &Limits) -> Result<bool> {
    let bound = BigRational::new(BigInt::one(), BigInt::from(m) * BigInt::from(m));
    let start = 96 + 2 * (64 - e.unsigned_abs().leading_zeros());
    let tp = PowerForm { base: t.clone(), exponent: e };
    certify(start, limits, |prec| {
        let d = tp.enclosure(prec).sub(&omega_pow(m, e, prec)).norm2();
        d.cmp_rational(&bound).map(|o| o == Ordering::Less)
    })
}

fn main_branch(target: &[QuadRat; 2], eps: &BigRational, limits: &Limits) -> Result<ComplexApprox> {
    let mut schedule: Vec<u64> = (3..14).map(|k| 1u64 << k).collect();
    schedule.push(MAX_M);
    for &m in &schedule {
        let mut digits = [Digits { a: 0, r: 0, b: 0 }; 2];
        for (d, z) in digits.iter_mut().zip(target) {
            let a = modulus_digit(z, m, limits)?;
            let r = a.rem_euclid(m as i64);
            let b = sector(z, m, limits)? - r;
            *d = Digits { a, r, b };
        }
        let exps = [digits[0].a + digits[0].b, digits[1].a + digits[1].b];
        let mut found = None;
        for k in (24..=limits.max_precision.min(1024)).step_by(8) {
            let t = round_omega(m, k);
            if close_to_omega(&t, m, exps[0], limits)? && close_to_omega(&t, m, exps[1], limits)? {
                found = Some((t, k));
                break;
            }
        }
        let Some((t, k)) = found else {
            return Err(limits.precision_error());
        };
        let coords = [PowerForm { base: t.clone(), exponent: exps[0] }, PowerForm { base: t, exponent: exps[1] }];
        let witness = pair_witness(&exps);
        if let Some(out) =
            finish(target, eps, ComplexBranch::Main, coords, witness, (Some(m), Some(digits), Some(k)), limits)?
        {
            return Ok(out);
        }
    }
    Err(Error::PrecisionCeilingReached { bits: limits.max_precision })
}

/// One zero target: `(s^m, s)` when `|z| < 1`, `(s^{−m²}, s)` otherwise.
fn zero_branch(target: &[QuadRat; 2], zero: usize, eps: &BigRational, limits: &Limits) -> Result<ComplexApprox> {
    let z = &target[1 - zero];
    let n = z.norm();
    let e2 = eps * eps;
    let place = |s: &QuadRat, e_zero: i64| {
        let mut c = [PowerForm { base: s.clone(), exponent: 1 }, PowerForm { base: s.clone(), exponent: 1 }];
        c[zero].exponent = e_zero;
        c
    };
    if n < BigRational::one() {
        let mut m = 1i64;
        let mut p = n.clone();
        while p >= e2 {
            m += 1;
            p *= &n;
        }
        let coords = place(z, m);
        let witness = pair_witness(&[coords[0].exponent, coords[1].exponent]);
        return finish(target, eps, ComplexBranch::ZeroSmall, coords, witness, (Some(m as u64), None, None), limits)?
            .ok_or_else(|| Error::Precondition("zero branch missed the tolerance".into()));
    }
    // |z|/m < ε, then grow m until |s|^{−m²} < ε is certified
    let mut m = ((n.clone() / &e2).ceil().to_integer().sqrt() + 1u32).to_u64().unwrap_or(u64::MAX).max(1);
    loop {
        if m > MAX_M * MAX_M {
            return Err(limits.precision_error());
        }
        let s = z.scale(&(BigRational::one() + BigRational::new(1.into(), BigInt::from(m))));
        let m2 = BigInt::from(m) * BigInt::from(m);
        let small = certify(96, limits, |prec| {
            let lhs = ln_rational(&s.norm(), prec).mul_int(&m2);
            let rhs = ln_rational(&e2.recip(), prec);
            lhs.cmp_interval(&rhs).map(|o| o == Ordering::Greater)
        })?;
        if small && n < &e2 * BigRational::from_integer(m2.clone()) {
            let e = -m2.to_i64().ok_or_else(|| limits.precision_error())?;
            let coords = place(&s, e);
            let witness = pair_witness(&[coords[0].exponent, coords[1].exponent]);
            if let Some(out) =
                finish(target, eps, ComplexBranch::ZeroLarge, coords, witness, (Some(m), None, None), limits)?
            {
                return Ok(out);
            }
        }
        m += 1;
    }
}

/// Approximates `(z1, z2) ∈ ℚ(i)²` within `ε` in each coordinate by a
/// multiplicatively dependent pair.
pub fn approx_complex_pair(z1: &QuadRat, z2: &QuadRat, eps: &BigRational, limits: &Limits) -> Result<ComplexApprox> {
    check_gaussian(z1)?;
    check_gaussian(z2)?;
    if !eps.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let target = [z1.clone(), z2.clone()];
    match (z1.is_zero(), z2.is_zero()) {
        (true, true) => {
            let s = gauss((eps.recip().floor() + BigRational::one()).recip(), BigRational::zero());
            let coords = [PowerForm { base: s.clone(), exponent: 1 }, PowerForm { base: s, exponent: 1 }];
            return finish(&target, eps, ComplexBranch::BothZero, coords, vec![1, -1], (None, None, None), limits)?
                .ok_or_else(|| Error::Precondition("zero branch missed the tolerance".into()));
        }
        (true, false) => return zero_branch(&target, 0, eps, limits),
        (false, true) => return zero_branch(&target, 1, eps, limits),
        _ => {}
    }
    // roots of unity are accepted as they stand
    let unit = QuadRat::one(QuadField::Gaussian);
    let v = [ExactNumber::Quadratic(z1.clone()), ExactNumber::Quadratic(z2.clone())];
    if z1.pow(4) == unit && z2.pow(4) == unit {
        let (_, w) = is_dependent(&v, limits)?;
        let w = w.ok_or(Error::NotDependent)?;
        let coords = [PowerForm { base: z1.clone(), exponent: 1 }, PowerForm { base: z2.clone(), exponent: 1 }];
        if let Some(out) = finish(&target, eps, ComplexBranch::RootsOfUnity, coords, w.k, (None, None, None), limits)? {
            return Ok(out);
        }
    }
    main_branch(&target, eps, limits)
}
