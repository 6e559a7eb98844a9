use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::ln_abs_f64;
use crate::arith::format_rational;
use crate::{Error, Limits, Result};

/// Dependent vector whose coordinates are integer powers of one rational `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealApprox {
    pub target: Vec<BigRational>,
    pub eps: BigRational,
    pub delta: BigRational,
    pub alpha: BigRational,
    pub exponents: Vec<i64>,
    pub vector: Vec<BigRational>,
    /// `∏ v_j^{w_j} = 1`.
    pub witness: Vec<i64>,
    pub distances: Vec<BigRational>,
    /// Coordinates equal to ±1.
    pub roots_of_unity: Vec<usize>,
}

impl RealApprox {
    pub fn to_json(&self) -> Value {
        let strs = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "delta": format_rational(&self.delta),
            "alpha": format_rational(&self.alpha),
            "exponents": self.exponents,
            "vector": strs(&self.vector),
            "witness": self.witness,
            "distances": strs(&self.distances),
            "roots_of_unity": self.roots_of_unity,
        })
    }
}

/// `δ = min(1/2, ε/(2(1 + max|x_j|)))`.
pub fn choose_delta(x: &[BigRational], eps: &BigRational) -> BigRational {
    let m = x.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero);
    let d = eps / (BigRational::from_integer(2.into()) * (BigRational::one() + m));
    d.min(BigRational::new(1.into(), 2.into()))
}

/// `α = −(1 + c/D)` with `D = ⌈4/δ⌉` and `c = ⌊δD/2⌋ + 1`, so that
/// `δ/2 < c/D ≤ δ/2 + 1/D ≤ 3δ/4`.
pub fn choose_alpha(delta: &BigRational) -> BigRational {
    let den = (BigRational::from_integer(4.into()) / delta).ceil().to_integer();
    let c = (delta * BigRational::from_integer(den.clone()) / BigRational::from_integer(2.into()))
        .floor()
        .to_integer()
        + 1;
    -(BigRational::one() + BigRational::new(c, den))
}

fn pow(a: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(a.clone(), k as usize)
    } else {
        num_traits::pow(a.recip(), k.unsigned_abs() as usize)
    }
}

/// Charges roughly the bit size of `α^k`.
fn charge(meter: &crate::Meter, alpha: &BigRational, k: i64) -> Result<()> {
    let bits = alpha.numer().bits() + alpha.denom().bits();
    meter.charge(bits.saturating_mul(k.unsigned_abs() + 1))
}

/// Exponent for a nonzero target: `k = round(log|x| / log|α|)`, or `k + 1`
/// when `α^k` has the wrong sign. Since `|α| ≤ 1 + 3δ/4`, either choice lies
/// within `|x|·((1 + 3δ/4)^{3/2} − 1) < ε` of `x`.
fn exponent_for(x: &BigRational, alpha: &BigRational, meter: &crate::Meter) -> Result<(i64, BigRational)> {
    let k0 = (ln_abs_f64(x) / ln_abs_f64(alpha)).round();
    if !k0.is_finite() || k0.abs() > 1e12 {
        return Err(Error::BudgetExceeded { budget: meter.budget() });
    }
    let mut k = k0 as i64;
    if (k.rem_euclid(2) == 1) != x.is_negative() {
        k += 1;
    }
    charge(meter, alpha, k)?;
    Ok((k, pow(alpha, k)))
}

/// Smallest `K ≥ 1` with `|α|^{−K} < ε`.
fn zero_exponent(alpha: &BigRational, eps: &BigRational, meter: &crate::Meter) -> Result<(i64, BigRational)> {
    let a = alpha.abs();
    let guess = ((-ln_abs_f64(eps)) / ln_abs_f64(&a)).ceil().max(1.0) as i64;
    let mut k = (guess - 2).max(1);
    loop {
        charge(meter, alpha, k)?;
        let v = pow(alpha, -k);
        if v.abs() < *eps {
            return Ok((-k, v));
        }
        k += 1;
    }
}

/// Approximates `x ∈ ℝⁿ` within `ε` in every coordinate by a vector of
/// integer powers of one rational `α ∈ (−1−δ, −1−δ/2)`.
pub fn approx_real_vector(x: &[BigRational], eps: &BigRational, limits: &Limits) -> Result<RealApprox> {
    if x.len() < 2 {
        return Err(Error::InvalidParams("need at least two coordinates".into()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let delta = choose_delta(x, eps);
    let alpha = choose_alpha(&delta);
    debug_assert!(alpha > -(BigRational::one() + &delta));
    debug_assert!(alpha < -(BigRational::one() + &delta / BigRational::from_integer(2.into())));
    let meter = limits.meter();
    let mut exponents = Vec::with_capacity(x.len());
    let mut vector = Vec::with_capacity(x.len());
    for xj in x {
        let (k, v) = if xj.is_zero() { zero_exponent(&alpha, eps, &meter)? } else { exponent_for(xj, &alpha, &meter)? };
        exponents.push(k);
        vector.push(v);
    }
    let distances: Vec<BigRational> = vector.iter().zip(x).map(|(v, t)| (v - t).abs()).collect();
    if let Some(j) = distances.iter().position(|d| d >= eps) {
        return Err(Error::Precondition(format!("coordinate {j} missed the tolerance")));
    }
    let witness = pair_witness(&exponents);
    let roots_of_unity = vector.iter().enumerate().filter(|(_, v)| v.abs().is_one()).map(|(j, _)| j).collect();
    Ok(RealApprox {
        target: x.to_vec(),
        eps: eps.clone(),
        delta,
        alpha,
        exponents,
        vector,
        witness,
        distances,
        roots_of_unity,
    })
}

/// Relation between the first two coordinates `α^{e_1}, α^{e_2}`.
pub(crate) fn pair_witness(e: &[i64]) -> Vec<i64> {
    let mut w = vec![0; e.len()];
    if e[0] == 0 {
        w[0] = 1;
    } else if e[1] == 0 {
        w[1] = 1;
    } else {
        let g = num_integer::gcd(e[0], e[1]);
        w[0] = e[1] / g;
        w[1] = -e[0] / g;
    }
    w
}
