use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{QuadField, QuadInt, QuadRat, Ring};
use crate::error::{Error, Result};

/// Exact scalar: integer, rational in lowest terms, or an element `x + y·τ`
/// of ℚ(i) / ℚ(ω).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactNumber {
    Integer(BigInt),
    Rational(BigRational),
    Quadratic(QuadRat),
}

impl ExactNumber {
    pub fn int(n: impl Into<BigInt>) -> Self {
        ExactNumber::Integer(n.into())
    }

    /// `p/q`, normalized; integral values collapse to `Integer`.
    pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        ExactNumber::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_integer() {
            ExactNumber::Integer(r.to_integer())
        } else {
            ExactNumber::Rational(r)
        }
    }

    pub fn quad(field: QuadField, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        ExactNumber::Quadratic(QuadInt::new(field, x, y).to_quad_rat())
    }

    pub fn gaussian(a: i64, b: i64) -> Self {
        ExactNumber::quad(QuadField::Gaussian, a, b)
    }

    /// `a + b·ω` with `ω = (−1+√−3)/2`, stored as `(a − b) + b·τ`.
    pub fn eisenstein_omega(a: i64, b: i64) -> Self {
        ExactNumber::quad(QuadField::Eisenstein, a - b, b)
    }

    pub fn ring(&self) -> Ring {
        match self {
            ExactNumber::Integer(_) | ExactNumber::Rational(_) => Ring::Rational,
            ExactNumber::Quadratic(q) => Ring::Quad(q.field),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactNumber::Integer(n) => n.is_zero(),
            ExactNumber::Rational(r) => r.is_zero(),
            ExactNumber::Quadratic(q) => q.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ExactNumber::Integer(n) => Some(BigRational::from_integer(n.clone())),
            ExactNumber::Rational(r) => Some(r.clone()),
            ExactNumber::Quadratic(_) => None,
        }
    }

    /// View as an element of ℚ(τ) for the given field (rationals embed).
    pub fn to_quad(&self, field: QuadField) -> Result<QuadRat> {
        match self {
            ExactNumber::Quadratic(q) if q.field == field => Ok(q.clone()),
            ExactNumber::Quadratic(_) => Err(Error::MixedRings),
            other => Ok(QuadRat::from_rational(field, other.as_rational().unwrap())),
        }
    }

    pub fn mul(&self, o: &ExactNumber) -> Result<ExactNumber> {
        match (self.ring(), o.ring()) {
            (Ring::Rational, Ring::Rational) => Ok(ExactNumber::from_rational(
                self.as_rational().unwrap() * o.as_rational().unwrap(),
            )),
            (Ring::Quad(f), Ring::Quad(g)) if f == g => {
                Ok(ExactNumber::Quadratic(self.to_quad(f)?.mul(&o.to_quad(f)?)))
            }
            _ => Err(Error::MixedRings),
        }
    }

    /// Integer power; negative exponents invert (self must be nonzero).
    pub fn pow(&self, e: i64) -> ExactNumber {
        match self {
            ExactNumber::Quadratic(q) => ExactNumber::Quadratic(q.pow(e)),
            other => {
                let r = other.as_rational().unwrap();
                let p = if e >= 0 {
                    num_traits::pow(r, e as usize)
                } else {
                    num_traits::pow(r.recip(), e.unsigned_abs() as usize)
                };
                ExactNumber::from_rational(p)
            }
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactNumber::Integer(n) => n.is_one(),
            ExactNumber::Rational(r) => r.is_one(),
            ExactNumber::Quadratic(q) => q.x.is_one() && q.y.is_zero(),
        }
    }

    /// Product `∏ v_j^{k_j}` evaluated exactly.
    pub fn product_of_powers(v: &[ExactNumber], k: &[i64]) -> Result<ExactNumber> {
        let ring = v.first().map(|x| x.ring()).unwrap_or(Ring::Rational);
        let mut acc = match ring {
            Ring::Rational => ExactNumber::int(1),
            Ring::Quad(f) => ExactNumber::Quadratic(QuadRat::one(f)),
        };
        for (x, &e) in v.iter().zip(k) {
            if e != 0 {
                acc = acc.mul(&x.pow(e))?;
            }
        }
        Ok(acc)
    }

    /// Squared complex modulus.
    pub fn norm(&self) -> BigRational {
        match self {
            ExactNumber::Quadratic(q) => q.norm(),
            other => {
                let r = other.as_rational().unwrap();
                &r * &r
            }
        }
    }
}

impl From<i64> for ExactNumber {
    fn from(n: i64) -> Self {
        ExactNumber::int(n)
    }
}

impl From<QuadInt> for ExactNumber {
    fn from(q: QuadInt) -> Self {
        ExactNumber::Quadratic(q.to_quad_rat())
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Integer(n) => write!(f, "{n}"),
            ExactNumber::Rational(r) => write!(f, "{}", format_rational(r)),
            ExactNumber::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

/// `p/q` or `p` when integral.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats `re + im·sym` compactly: `3`, `-i`, `1+2i`, `1/2-3/4i`.
pub fn format_quad(re: &BigRational, im: &BigRational, sym: &str) -> String {
    if im.is_zero() {
        return format_rational(re);
    }
    let mag = im.abs();
    let coeff = if mag.is_one() { String::new() } else { format_rational(&mag) };
    let sign = if im.is_negative() { "-" } else { "+" };
    if re.is_zero() {
        let lead = if im.is_negative() { "-" } else { "" };
        format!("{lead}{coeff}{sym}")
    } else {
        format!("{}{sign}{coeff}{sym}", format_rational(re))
    }
}
