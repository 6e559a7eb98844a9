use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{surd_decimal, surd_string};
use crate::arith::{ExactNumber, QuadInt, QuadRat};
use crate::dependence::is_dependent;
use crate::real::Surd;
use crate::{Error, Limits, Result};

/// Best `t = 2^{h1}·3^{h2}·α^{h3}` found for a complex target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StewartResult {
    pub exponents: [u32; 3],
    pub t: QuadRat,
    /// Exact `|z − t|²` in ℚ(√3) (rational for ℤ[i]).
    pub dist2: Surd,
    /// Whether the modulus window had to be abandoned for a full scan.
    pub fell_back: bool,
    pub points_checked: u64,
}

impl StewartResult {
    pub fn to_json(&self) -> Value {
        json!({
            "h": self.exponents,
            "t": self.t.to_string(),
            "dist2": surd_string(&self.dist2),
            "dist2_decimal": surd_decimal(&self.dist2, 20),
            "full_scan": self.fell_back,
        })
    }
}

fn dist2(zr: &BigRational, zi: &BigRational, t: &QuadRat) -> Surd {
    let (r, c) = t.re_im();
    let dd = BigRational::from_integer(BigInt::from(-t.field.d()));
    let dr = zr - &r;
    if t.field.d() == -1 {
        let di = zi - &c;
        Surd::rational(&dr * &dr + &di * &di, 3)
    } else {
        // (zi − c√3)² = zi² + 3c² − 2·zi·c·√3
        Surd::new(&dr * &dr + zi * zi + &dd * &c * &c, -(zi * &c) * BigRational::from_integer(2.into()), 3)
    }
}

/// Exact minimizer of `|z − t|` over the exponent box, ties to the
/// lexicographically smallest exponents. With `prune`, only `t` with
/// `|z|/4 ≤ |t| ≤ 4|z|` are examined; if nothing there beats `3|z|/4` the
/// full box is scanned instead, so the answer never changes.
pub fn stewart_approx(
    z: &(BigRational, BigRational),
    alpha: &QuadInt,
    bx: [u32; 3],
    prune: bool,
    limits: &Limits,
) -> Result<StewartResult> {
    let (zr, zi) = z;
    let zn = zr * zr + zi * zi;
    if zn < BigRational::from_integer(9.into()) {
        return Err(Error::InvalidParams("|z| must be at least 3".into()));
    }
    if alpha.b.is_zero() {
        return Err(Error::InvalidParams("alpha must be nonreal".into()));
    }
    if alpha.norm() <= BigInt::from(1) {
        return Err(Error::InvalidParams("|alpha| must exceed 1".into()));
    }
    // α/|α| is a root of unity iff α/ᾱ is, iff ᾱ is an associate of α
    if alpha.is_associate(&alpha.conj()) {
        return Err(Error::ArgumentIsRootOfUnity);
    }
    let gens = [ExactNumber::int(2), ExactNumber::int(3), ExactNumber::Quadratic(alpha.to_quad_rat())];
    let gens = gens.map(|g| match g {
        ExactNumber::Integer(n) => ExactNumber::Quadratic(QuadRat::from_rational(alpha.field, BigRational::from_integer(n))),
        other => other,
    });
    if is_dependent(&gens, limits)?.0 {
        return Err(Error::InvalidParams("2, 3 and alpha must be multiplicatively independent".into()));
    }
    let total = (bx[0] as u128 + 1) * (bx[1] as u128 + 1) * (bx[2] as u128 + 1);
    let meter = limits.meter();
    meter.require(total)?;

    let field = alpha.field;
    let p2: Vec<BigInt> = (0..=bx[0]).map(|k| BigInt::from(2).pow(k)).collect();
    let p3: Vec<BigInt> = (0..=bx[1]).map(|k| BigInt::from(3).pow(k)).collect();
    let mut pa = vec![QuadInt::one(field)];
    for _ in 0..bx[2] {
        let next = pa.last().unwrap().mul(alpha);
        pa.push(next);
    }
    let na: Vec<BigInt> = pa.iter().map(|x| x.norm()).collect();
    let lo = &zn / BigRational::from_integer(16.into());
    let hi = &zn * BigRational::from_integer(16.into());

    let scan = |window: bool, checked: &mut u64| -> Option<([u32; 3], QuadRat, Surd)> {
        let mut best: Option<([u32; 3], QuadRat, Surd)> = None;
        for (h1, a) in p2.iter().enumerate() {
            for (h2, b) in p3.iter().enumerate() {
                let ab = a * b;
                let ab2 = &ab * &ab;
                for (h3, c) in pa.iter().enumerate() {
                    if window {
                        let m = BigRational::from_integer(&ab2 * &na[h3]);
                        if m < lo || m > hi {
                            continue;
                        }
                    }
                    *checked += 1;
                    let t = c.scale(&ab).to_quad_rat();
                    let d = dist2(zr, zi, &t);
                    let better = best.as_ref().map_or(true, |(_, _, bd)| d.cmp_exact(bd).is_lt());
                    if better {
                        best = Some(([h1 as u32, h2 as u32, h3 as u32], t, d));
                    }
                }
            }
        }
        best
    };
    let mut checked = 0u64;
    let mut fell_back = false;
    let mut best = if prune { scan(true, &mut checked) } else { None };
    let threshold = Surd::rational(&zn * BigRational::new(9.into(), 16.into()), 3);
    let good = best.as_ref().is_some_and(|(_, _, d)| d.cmp_exact(&threshold).is_lt());
    if !good {
        fell_back = prune;
        best = scan(false, &mut checked);
    }
    meter.charge(checked)?;
    let (exponents, t, dist2) = best.expect("box is nonempty");
    Ok(StewartResult { exponents, t, dist2, fell_back, points_checked: checked })
}
