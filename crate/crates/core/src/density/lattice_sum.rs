use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::catalog::Constant;
use super::kronecker::{kronecker_scan, KroneckerResult, MAX_Q};
use crate::arith::{format_quad, format_rational};
use crate::real::{cbrt_rational, certify, scientific, sqrt_rational, ComplexInterval, Interval};
use crate::{Error, Limits, Result};

/// `α = ρ`, `β = ρ²` for `ρ = n^{1/3}·e^{2πi/3}`, `n ≥ 2` cube-free.
/// `ℚ(ρ)` has degree 3 and real subfield ℚ, and `1, ρ, ρ²` are independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicPair {
    pub n: u64,
}

impl Default for CubicPair {
    fn default() -> Self {
        CubicPair { n: 2 }
    }
}

impl CubicPair {
    pub fn new(n: u64) -> Result<Self> {
        Constant::cbrt(n).validate()?;
        Ok(CubicPair { n })
    }

    fn cbrt(&self, prec: u32) -> Interval {
        cbrt_rational(&BigRational::from_integer(self.n.into()), prec + 8).with_prec(prec)
    }

    /// `(α, β)` as complex intervals.
    pub fn eval(&self, prec: u32) -> (ComplexInterval, ComplexInterval) {
        let wp = prec + 16;
        let c = self.cbrt(wp);
        let c2 = c.sqr();
        let h = sqrt_rational(&BigRational::from_integer(3.into()), wp).div_int(&BigInt::from(2));
        let half = BigRational::new((-1).into(), 2.into());
        let alpha = ComplexInterval::new(c.mul_rational(&half), c.mul(&h));
        let beta = ComplexInterval::new(c2.mul_rational(&half), c2.mul(&h).neg());
        (alpha.with_prec(prec), beta.with_prec(prec))
    }

    /// Integer `k` making `α' = α + k` have positive real part.
    fn shift(&self) -> i64 {
        let mut k = 1;
        while ((2 * k) as u64).pow(3) <= self.n {
            k += 1;
        }
        k
    }

    /// `β = r + s·α'` with `r = k·c − c²`, `s = −c`, `c = n^{1/3}`.
    fn rs(&self) -> (Constant, Constant) {
        let k = BigRational::from_integer(self.shift().into());
        let r = Constant::Cubic { n: self.n, c: [BigRational::zero(), k, -BigRational::one()] };
        let s = Constant::Cubic { n: self.n, c: [BigRational::zero(), -BigRational::one(), BigRational::zero()] };
        (r, s)
    }
}

/// `re + im·i + u·α + v·β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTarget {
    pub re: BigRational,
    pub im: BigRational,
    pub u: BigRational,
    pub v: BigRational,
}

impl LatticeTarget {
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        LatticeTarget { re, im, u: BigRational::zero(), v: BigRational::zero() }
    }

    /// `alpha`, `beta`, or a Gaussian rational such as `1/2+1/2i`.
    pub fn parse(s: &str) -> Result<Self> {
        let z = BigRational::zero;
        match s.trim() {
            "alpha" => Ok(LatticeTarget { re: z(), im: z(), u: BigRational::one(), v: z() }),
            "beta" => Ok(LatticeTarget { re: z(), im: z(), u: z(), v: BigRational::one() }),
            other => {
                let q = crate::arith::parse_quad(other, crate::arith::QuadField::Gaussian)?;
                let (re, im) = q.re_im();
                Ok(LatticeTarget::gaussian(re, im))
            }
        }
    }

    pub fn eval(&self, pair: &CubicPair, prec: u32) -> ComplexInterval {
        let (a, b) = pair.eval(prec + 8);
        let scale = |w: &ComplexInterval, k: &BigRational| ComplexInterval::new(w.re.mul_rational(k), w.im.mul_rational(k));
        ComplexInterval::from_rationals(&self.re, &self.im, prec + 8)
            .add(&scale(&a, &self.u))
            .add(&scale(&b, &self.v))
            .with_prec(prec)
    }
}

impl std::fmt::Display for LatticeTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = format_quad(&self.re, &self.im, "i");
        if !self.u.is_zero() {
            s = format!("{s}+{}*alpha", format_rational(&self.u));
        }
        if !self.v.is_zero() {
            s = format!("{s}+{}*beta", format_rational(&self.v));
        }
        write!(f, "{}", s.replace("+-", "-").trim_start_matches("0+"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticePath {
    /// The `γ_1, q_1, γ_2, q_2` construction.
    Construction,
    /// A bounded direct search found an element with smaller coefficients.
    Direct,
    /// The Kronecker scan ran out of budget; a direct search succeeded.
    DirectFallback,
}

/// Steps of the construction, in the basis `1, α', β` with `α' = α + k`.
#[derive(Debug, Clone)]
pub struct KroneckerCertificate {
    pub pair: CubicPair,
    pub k: i64,
    /// Target reduction `z'' = z + n0 + j·α'` into `1 ≤ Re z'' < 2`, `Im z'' ≥ 0`.
    pub reduction: (i64, i64),
    pub r: String,
    pub s: String,
    pub kronecker: Option<KroneckerResult>,
    pub q1: Option<BigInt>,
    pub q2: Option<BigInt>,
    pub lambda: Option<Interval>,
    pub gamma1: Option<[BigInt; 3]>,
    pub gamma2: Option<[BigInt; 3]>,
    pub construction: Option<[BigInt; 3]>,
    pub path: LatticePath,
    pub output: [BigInt; 3],
    pub distance: BigRational,
}

impl KroneckerCertificate {
    pub fn to_json(&self) -> Value {
        let tri = |t: &Option<[BigInt; 3]>| t.as_ref().map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        json!({
            "n": self.pair.n,
            "shift": self.k,
            "reduction": [self.reduction.0, self.reduction.1],
            "r": self.r,
            "s": self.s,
            "kronecker": self.kronecker.as_ref().map(|k| k.to_json()),
            "q1": self.q1.as_ref().map(|x| x.to_string()),
            "q2": self.q2.as_ref().map(|x| x.to_string()),
            "lambda": self.lambda.as_ref().map(|l| l.decimal_bounds(30)),
            "gamma1": tri(&self.gamma1),
            "gamma2": tri(&self.gamma2),
            "construction": tri(&self.construction),
            "path": self.path,
            "output": self.output.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "distance": scientific(&self.distance, 6, true),
        })
    }
}

fn elem(pair: &CubicPair, t: &[BigInt; 3], prec: u32) -> ComplexInterval {
    let (a, b) = pair.eval(prec);
    let sc = |w: &ComplexInterval, k: &BigInt| ComplexInterval::new(w.re.mul_int(k), w.im.mul_int(k));
    let t0 = BigRational::from_integer(t[0].clone());
    ComplexInterval::from_rationals(&t0, &BigRational::zero(), prec).add(&sc(&a, &t[1])).add(&sc(&b, &t[2]))
}

fn bits_of(t: &[BigInt; 3]) -> u32 {
    t.iter().map(|x| x.bits() as u32).max().unwrap_or(0)
}

/// Certified `|a + bα + cβ − z| < ε`; returns an upper bound on the distance.
pub fn lattice_distance_below(
    pair: &CubicPair,
    t: &[BigInt; 3],
    z: &LatticeTarget,
    eps: &BigRational,
    limits: &Limits,
) -> Result<Option<BigRational>> {
    let e2 = eps * eps;
    certify(96 + bits_of(t), limits, |prec| {
        let d = elem(pair, t, prec).sub(&z.eval(pair, prec)).norm2();
        match d.cmp_rational(&e2)? {
            Ordering::Less => Some(Some(sqrt_rational(&d.upper(), 64).upper())),
            _ => Some(None),
        }
    })
}

fn floor_cert(x: &Interval) -> Option<BigInt> {
    x.floor()
}

/// Certified floors of the construction for a fixed `q`.
struct Steps {
    fr: BigInt,
    fs: BigInt,
    q1: BigInt,
    fl1: BigInt,
    q2: BigInt,
    lambda: Interval,
}

fn run_steps(pair: &CubicPair, q: u64, zr: &(i64, i64), z: &LatticeTarget, limits: &Limits) -> Result<Steps> {
    let (r, s) = pair.rs();
    let k = pair.shift();
    certify(128, limits, |prec| {
        let wp = prec + 64;
        let qb = BigInt::from(q);
        let c = pair.cbrt(wp);
        let ap = c.div_int(&BigInt::from(2)).neg().add_rational(&BigRational::from_integer(k.into()));
        let b = c.mul(&sqrt_rational(&BigRational::from_integer(3.into()), wp)).div_int(&BigInt::from(2));
        let qr = r.eval(wp).mul_int(&qb);
        let qs = s.eval(wp).mul_int(&qb);
        let fr = floor_cert(&qr)?;
        let fs = floor_cert(&qs)?;
        let fqr = qr.add_rational(&-BigRational::from_integer(fr.clone()));
        let fqs = qs.add_rational(&-BigRational::from_integer(fs.clone()));
        let lambda = fqr.add(&fqs.mul(&ap));
        let (alpha, _) = pair.eval(wp);
        let shift = ComplexInterval::new(
            alpha.re.add_rational(&BigRational::from_integer(k.into())).mul_int(&BigInt::from(zr.1)),
            alpha.im.mul_int(&BigInt::from(zr.1)),
        );
        let zz = z.eval(pair, wp).add(&shift);
        let x = zz.re.add_rational(&BigRational::from_integer(zr.0.into()));
        let y = zz.im;
        let q1 = floor_cert(&y.div(&fqs.mul(&b))?)?;
        let q1l = lambda.mul_int(&q1);
        let fl1 = floor_cert(&q1l)?;
        let frac1 = q1l.add_rational(&-BigRational::from_integer(fl1.clone()));
        let q2 = floor_cert(&x.sub(&frac1).div(&lambda)?)?;
        Some(Steps { fr, fs, q1, fl1, q2, lambda: lambda.with_prec(prec) })
    })
}

/// `(n0, j)` with `z + n0 + j·α'` in `[1, 2) × [0, ∞)`.
fn reduce(pair: &CubicPair, z: &LatticeTarget, limits: &Limits) -> Result<(i64, i64)> {
    let k = pair.shift();
    certify(96, limits, |prec| {
        let (alpha, _) = pair.eval(prec);
        let zz = z.eval(pair, prec);
        let j = if zz.im.is_negative() {
            let t = zz.im.neg().div(&alpha.im)?;
            // ⌈t⌉, certified
            (-floor_cert(&t.neg())?).to_i64()?
        } else if zz.im.contains_zero() && !zz.im.lower().is_zero() {
            return None;
        } else {
            0
        };
        let x = zz.re.add(&alpha.re.add_rational(&BigRational::from_integer(k.into())).mul_int(&BigInt::from(j)));
        let n0 = 1 - floor_cert(&x)?.to_i64()?;
        Some((n0, j))
    })
}

fn construction(
    pair: &CubicPair,
    z: &LatticeTarget,
    eps: &BigRational,
    limits: &Limits,
) -> Result<(KroneckerResult, Steps, [BigInt; 3], [BigInt; 3], [BigInt; 3], (i64, i64))> {
    let (r, s) = pair.rs();
    let k = pair.shift();
    // M ≥ max(a', b), a rational bound on the ambient coordinates
    let m = certify(64, limits, |prec| {
        let c = pair.cbrt(prec);
        let ap = c.div_int(&BigInt::from(2)).neg().add_rational(&BigRational::from_integer(k.into()));
        let b = c.mul(&sqrt_rational(&BigRational::from_integer(3.into()), prec)).div_int(&BigInt::from(2));
        let up = ap.upper().max(b.upper());
        Some((up * BigRational::from_integer(64.into())).ceil() / BigRational::from_integer(64.into()))
    })?;
    let lo = eps / BigRational::from_integer(4.into());
    let hi = eps / BigRational::from_integer(2.into());
    let smax = eps * eps / (BigRational::from_integer(20.into()) * m);
    let kr = kronecker_scan(&r, &s, &lo, &hi, &smax, MAX_Q, limits)?;
    let zr = reduce(pair, z, limits)?;
    let st = run_steps(pair, kr.q, &zr, z, limits)?;
    let q = BigInt::from(kr.q);
    // basis 1, α', β
    let g1 = [-st.fr.clone(), -st.fs.clone(), q.clone()];
    let g2 = [&st.q1 * &g1[0] - &st.fl1, &st.q1 * &g1[1], &st.q1 * &g1[2]];
    let e = [&g2[0] + &st.q2 * &g1[0], &g2[1] + &st.q2 * &g1[1], &g2[2] + &st.q2 * &g1[2]];
    // α' = α + k, then undo the reduction z'' = z + n0 + j·α'
    let to_alpha = |t: &[BigInt; 3]| [&t[0] + &t[1] * k, t[1].clone(), t[2].clone()];
    let mut out = to_alpha(&e);
    out[0] -= zr.0 + zr.1 * k;
    out[1] -= zr.1;
    Ok((kr, st, to_alpha(&g1), to_alpha(&g2), out, zr))
}

/// Best element of `{a + bα + cβ : |a|, |b|, |c| ≤ bound}` near `z`, ranked
/// in floating point and certified below `ε`. For each `(b, c)` only the
/// rounding `a` can be nearest, since `a` shifts the real part alone.
pub fn direct_search(
    pair: &CubicPair,
    z: &LatticeTarget,
    eps: &BigRational,
    bound: i64,
    limits: &Limits,
) -> Result<Option<([BigInt; 3], BigRational)>> {
    let (al, be) = pair.eval(64);
    let (ar, ai, br, bi) = (al.re.mid_f64(), al.im.mid_f64(), be.re.mid_f64(), be.im.mid_f64());
    let zz = z.eval(pair, 64);
    let (zr, zi) = (zz.re.mid_f64(), zz.im.mid_f64());
    let tol = eps.to_f64().unwrap_or(f64::MAX) * 1.001 + 1e-12;
    let mut cands = Vec::new();
    for b in -bound..=bound {
        for c in -bound..=bound {
            let x = b as f64 * ar + c as f64 * br;
            let y = b as f64 * ai + c as f64 * bi;
            let a = (zr - x).round().clamp(-bound as f64, bound as f64);
            let d = ((a + x - zr).powi(2) + (y - zi).powi(2)).sqrt();
            if d < tol {
                let sup = (a as i64).abs().max(b.abs()).max(c.abs());
                cands.push((d, sup, a as i64, b, c));
            }
        }
    }
    cands.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then((x.2, x.3, x.4).cmp(&(y.2, y.3, y.4))));
    for (_, _, a, b, c) in cands {
        let t = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
        if let Some(d) = lattice_distance_below(pair, &t, z, eps, limits)? {
            return Ok(Some((t, d)));
        }
    }
    Ok(None)
}

/// Finds `(a, b, c)` with `|a + bα + cβ − z| < ε`.
///
/// The construction runs at `min(ε, 1/2)`; a direct search over
/// coefficients smaller than the construction's (capped at 12) then
/// replaces its output when it finds a certified element.
pub fn approx_lattice_sum(
    pair: &CubicPair,
    z: &LatticeTarget,
    eps: &BigRational,
    limits: &Limits,
) -> Result<KroneckerCertificate> {
    if !eps.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let work_eps = eps.clone().min(BigRational::new(1.into(), 2.into()));
    let (r, s) = pair.rs();
    let k = pair.shift();
    let mut cert = KroneckerCertificate {
        pair: *pair,
        k,
        reduction: (0, 0),
        r: r.to_string(),
        s: s.to_string(),
        kronecker: None,
        q1: None,
        q2: None,
        lambda: None,
        gamma1: None,
        gamma2: None,
        construction: None,
        path: LatticePath::Construction,
        output: [BigInt::zero(), BigInt::zero(), BigInt::zero()],
        distance: BigRational::zero(),
    };
    match construction(pair, z, &work_eps, limits) {
        Ok((kr, st, g1, g2, out, zr)) => {
            let d = lattice_distance_below(pair, &out, z, eps, limits)?
                .ok_or_else(|| Error::Precondition("construction missed the tolerance".into()))?;
            cert.reduction = zr;
            cert.kronecker = Some(kr);
            cert.q1 = Some(st.q1);
            cert.q2 = Some(st.q2);
            cert.lambda = Some(st.lambda);
            cert.gamma1 = Some(g1);
            cert.gamma2 = Some(g2);
            cert.construction = Some(out.clone());
            cert.output = out.clone();
            cert.distance = d;
            let sup: BigInt = out.iter().map(|x| x.abs()).max().unwrap();
            let bound = (sup - BigInt::from(1)).min(BigInt::from(12)).to_i64().unwrap();
            if bound >= 0 {
                if let Some((t, d)) = direct_search(pair, z, eps, bound, limits)? {
                    cert.path = LatticePath::Direct;
                    cert.output = t;
                    cert.distance = d;
                }
            }
            Ok(cert)
        }
        Err(e @ (Error::SearchBudgetExceeded(_) | Error::BudgetExceeded { .. })) => {
            let Some((t, d)) = direct_search(pair, z, eps, 50, limits)? else {
                return Err(e);
            };
            cert.path = LatticePath::DirectFallback;
            cert.output = t;
            cert.distance = d;
            Ok(cert)
        }
        Err(e) => Err(e),
    }
}
