use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use super::matrix::common_ring;
use crate::arith::{exponent_map, ExactNumber, PrimeExponentMap, QuadRat};
use crate::{Error, Limits, Result};

/// `α = η1·γ^l`, `β = η2·γ^m` with `η1, η2` roots of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mult2Decomposition {
    pub gamma: ExactNumber,
    pub l: i64,
    pub m: i64,
    pub eta1: ExactNumber,
    pub eta2: ExactNumber,
    /// Class number of the ambient ring; always 1 for the supported rings.
    pub h: u32,
}

#[derive(Serialize)]
struct Mult2Json {
    gamma: String,
    l: i64,
    m: i64,
    eta1: String,
    eta2: String,
    h: u32,
}

impl Mult2Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Mult2Json {
            gamma: self.gamma.to_string(),
            l: self.l,
            m: self.m,
            eta1: self.eta1.to_string(),
            eta2: self.eta2.to_string(),
            h: self.h,
        })
        .expect("plain struct serializes")
    }
}

fn canonical_gamma(t: &PrimeExponentMap) -> ExactNumber {
    let mut base = t.clone();
    base.unit = 0;
    match base.reconstruct() {
        ExactNumber::Quadratic(q) => {
            let (num, d) = q.to_integral_parts();
            let (c, _) = num.canonical();
            let c = c.to_quad_rat();
            let inv_d = num_rational::BigRational::new(1.into(), d);
            ExactNumber::Quadratic(QuadRat::new(q.field, &c.x * &inv_d, &c.y * &inv_d))
        }
        other => other,
    }
}

/// Writes a dependent pair over a common base.
pub fn mult2_decompose(alpha: &ExactNumber, beta: &ExactNumber, limits: &Limits) -> Result<Mult2Decomposition> {
    let ring = common_ring(&[alpha.clone(), beta.clone()])?;
    if alpha.is_zero() {
        return Err(Error::ZeroCoordinate(0));
    }
    if beta.is_zero() {
        return Err(Error::ZeroCoordinate(1));
    }
    let ma = exponent_map(alpha, limits)?;
    let mb = exponent_map(beta, limits)?;
    if ma.is_root_of_unity() || mb.is_root_of_unity() {
        return Err(Error::RootOfUnityInput);
    }
    let l = ma.factors.values().fold(0i64, |g, &e| g.gcd(&e));
    let mut t = PrimeExponentMap::one(ring);
    for (p, &e) in &ma.factors {
        t.add_exponent(p.clone(), e / l);
    }
    // β must be a multiple of the same primitive direction
    let (p0, &t0) = t.factors.iter().next().unwrap();
    let e0 = mb.exponent(p0);
    if e0 == 0 || e0 % t0 != 0 {
        return Err(Error::NotDependent);
    }
    let m = e0 / t0;
    if mb.factors.len() != t.factors.len() || t.factors.iter().any(|(p, &e)| mb.exponent(p) != m * e) {
        return Err(Error::NotDependent);
    }
    let gamma = canonical_gamma(&t);
    let eta1 = alpha.mul(&gamma.pow(-l))?;
    let eta2 = beta.mul(&gamma.pow(-m))?;
    for eta in [&eta1, &eta2] {
        let is_unit = match eta {
            ExactNumber::Quadratic(q) => q.as_integer().is_some_and(|z| z.is_unit()),
            other => other.as_rational().is_some_and(|r| r.abs() == num_rational::BigRational::from_integer(BigInt::from(1))),
        };
        assert!(is_unit, "cofactor must be a root of unity");
    }
    Ok(Mult2Decomposition { gamma, l, m, eta1, eta2, h: 1 })
}
