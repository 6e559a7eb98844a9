use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::number::ExactNumber;
use crate::error::{Error, Result};

/// Absolute Weil height, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeilHeight {
    /// Height of a rational number, `max(|p|, |q|)`.
    Exact(BigRational),
    /// Square of the height of an imaginary quadratic integer, `max(1, |α|²)`.
    Squared(BigRational),
}

impl WeilHeight {
    /// Squared height, for comparisons across variants.
    pub fn squared(&self) -> BigRational {
        match self {
            WeilHeight::Exact(h) => h * h,
            WeilHeight::Squared(h2) => h2.clone(),
        }
    }
}

/// `H(α) = (a_d ∏ max(1, |α_j|))^{1/d}` specialised to degree ≤ 2.
///
/// A nonrational element of ℤ[i] or ℤ[ω] has minimal polynomial
/// `z² − Tr(α) z + N(α)` with leading coefficient 1 and two conjugates of
/// modulus `|α|`, so `H(α)² = max(1, N(α))`.
pub fn weil_height(alpha: &ExactNumber) -> Result<WeilHeight> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let rational = match alpha {
        ExactNumber::Quadratic(q) if q.y.is_zero() => Some(q.x.clone()),
        ExactNumber::Quadratic(_) => None,
        other => other.as_rational(),
    };
    if let Some(r) = rational {
        let h: BigInt = r.numer().abs().max(r.denom().clone());
        return Ok(WeilHeight::Exact(BigRational::from_integer(h)));
    }
    let ExactNumber::Quadratic(q) = alpha else { unreachable!() };
    if q.as_integer().is_none() {
        return Err(Error::UnsupportedElement(format!(
            "{alpha} is not an algebraic integer of its ring"
        )));
    }
    let n = q.norm();
    Ok(WeilHeight::Squared(if n < BigRational::one() { BigRational::one() } else { n }))
}
