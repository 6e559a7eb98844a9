//! Covering-radius probes: nearest dependent vectors to chosen targets,
//! the lower-bound witness points, empty boxes and approximation by
//! products of three fixed generators.

mod emptybox;
mod nearest;
mod probes;
mod stewart;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

pub use emptybox::{empty_box, BoxStatus, CenterRule, EmptyBoxCertificate};
pub use nearest::{nearest_dependent, nearest_nonzero_element, Target};
pub use probes::{mu2_probe, rho_probe, Mu2Params};
pub use stewart::{stewart_approx, StewartResult};

use crate::arith::{format_rational, ExactNumber};
use crate::real::{fixed, Interval, Surd};

/// Theoretical lower bound attached to a probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBound {
    Rational(BigRational),
    Surd(Surd),
}

impl LowerBound {
    pub fn exact_string(&self) -> String {
        match self {
            LowerBound::Rational(r) => format_rational(r),
            LowerBound::Surd(s) => surd_string(s),
        }
    }

    /// Squared bound minus a squared distance, as an exact element of ℚ(√d).
    fn square(&self) -> Surd {
        match self {
            LowerBound::Rational(r) => Surd::rational(r * r, 2),
            LowerBound::Surd(s) => s.mul(s),
        }
    }

    /// True when `dist2 ≥ bound²`, decided exactly.
    pub fn respected_by(&self, dist2: &BigRational) -> bool {
        let sq = self.square();
        Surd::rational(dist2.clone(), sq.d).cmp_exact(&sq) != std::cmp::Ordering::Less
    }
}

/// `r + s·sqrt(d)` written with exact fractions.
pub fn surd_string(s: &Surd) -> String {
    if s.s.is_zero() {
        return format_rational(&s.r);
    }
    let root = format!("{}*sqrt({})", format_rational(&s.s), s.d);
    if s.r.is_zero() {
        root
    } else if s.s > BigRational::zero() {
        format!("{}+{}", format_rational(&s.r), root)
    } else {
        format!("{}{}", format_rational(&s.r), root)
    }
}

/// Decimal enclosure of a surd, rounded down to `frac` digits.
pub fn surd_decimal(s: &Surd, frac: u32) -> String {
    let prec = frac * 4 + 64;
    let root = crate::real::sqrt_rational(&BigRational::from_integer(BigInt::from(s.d)), prec);
    let v = Interval::from_rational(&s.r, prec).add(&root.mul_rational(&s.s));
    fixed(&v.lower(), frac, false)
}

/// Outcome of a nearest-dependent-vector search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub probe: Vec<ExactNumber>,
    pub nearest: Vec<ExactNumber>,
    pub dist2: BigRational,
    pub search_bound: BigRational,
    pub bound: Option<LowerBound>,
}

impl ProbeResult {
    pub fn bound_holds(&self) -> Option<bool> {
        self.bound.as_ref().map(|b| b.respected_by(&self.dist2))
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[ExactNumber]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut obj = json!({
            "probe": strs(&self.probe),
            "nearest": strs(&self.nearest),
            "dist2": format_rational(&self.dist2),
        });
        match &self.bound {
            Some(LowerBound::Rational(r)) => {
                obj["bound"] = json!(format_rational(r));
            }
            Some(LowerBound::Surd(s)) => {
                obj["bound"] = json!(surd_string(s));
                obj["bound_decimal"] = json!(surd_decimal(s, 20));
                obj["bound_holds"] = json!(self.bound_holds());
            }
            None => {}
        }
        obj
    }
}
