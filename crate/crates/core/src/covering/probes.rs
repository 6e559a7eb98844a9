use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::nearest::{nearest_dependent, Target};
use super::{LowerBound, ProbeResult};
use crate::arith::{QuadField, QuadRat};
use crate::real::Surd;
use crate::{Error, Limits, Result};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Probe at `(H/2, 3H/4)`, which stays at distance ≥ H/12 from every
/// dependent pair.
pub fn rho_probe(h: u64, limits: &Limits) -> Result<ProbeResult> {
    if h < 12 || h % 12 != 0 {
        return Err(Error::InvalidParams("H must be a positive multiple of 12".into()));
    }
    let hq = BigRational::from_integer(BigInt::from(h));
    let x = vec![&hq * q(1, 2), &hq * q(3, 4)];
    let mut res = nearest_dependent(&Target::Real(x), &(&hq * q(3, 2)), limits)?;
    res.bound = Some(LowerBound::Rational(&hq / BigRational::from_integer(12.into())));
    Ok(res)
}

/// Parameters `0 < c < a < d < b < √2·c` (with `c < 1/2`) of the
/// two-dimensional complex probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mu2Params {
    pub c: BigRational,
    pub a: BigRational,
    pub d: BigRational,
    pub b: BigRational,
}

impl Default for Mu2Params {
    fn default() -> Self {
        Mu2Params { c: q(2, 5), a: q(9, 20), d: q(1, 2), b: q(11, 20) }
    }
}

impl Mu2Params {
    pub fn validate(&self) -> Result<()> {
        let Mu2Params { c, a, d, b } = self;
        let chain = c.is_positive() && c < a && a < d && d < b;
        if !chain {
            return Err(Error::InvalidParams("need 0 < c < a < d < b".into()));
        }
        if b * b >= c * c * BigRational::from_integer(2.into()) {
            return Err(Error::InvalidParams("need b < sqrt(2)·c".into()));
        }
        if c >= &q(1, 2) {
            return Err(Error::InvalidParams("need c < 1/2".into()));
        }
        Ok(())
    }

    /// `min{b − d, d − a, a − c, √2·c − b}`, decided exactly in ℚ(√2).
    pub fn bound_factor(&self) -> LowerBound {
        let Mu2Params { c, a, d, b } = self;
        let r = [b - d, d - a, a - c].into_iter().min().unwrap();
        let s = Surd::new(-b.clone(), c.clone(), 2);
        if s.cmp_exact(&Surd::rational(r.clone(), 2)).is_lt() {
            LowerBound::Surd(s)
        } else {
            LowerBound::Rational(r)
        }
    }
}

/// Probe at `(aH, bH)` in ℂ² over ℤ[i] or ℤ[ω], searching dependent pairs
/// of modulus ≤ 2H.
pub fn mu2_probe(field: QuadField, h: u64, params: &Mu2Params, limits: &Limits) -> Result<ProbeResult> {
    params.validate()?;
    if h == 0 {
        return Err(Error::InvalidParams("H must be positive".into()));
    }
    let hq = BigRational::from_integer(BigInt::from(h));
    let z = vec![
        QuadRat::from_rational(field, &params.a * &hq),
        QuadRat::from_rational(field, &params.b * &hq),
    ];
    let search = &hq * BigRational::from_integer(2.into());
    let mut res = nearest_dependent(&Target::Complex(field, z), &search, limits)?;
    res.bound = Some(match params.bound_factor() {
        LowerBound::Rational(r) => LowerBound::Rational(r * &hq),
        LowerBound::Surd(s) => LowerBound::Surd(s.scale(&hq)),
    });
    Ok(res)
}
