//! Certified real and complex interval arithmetic.

mod complex;
mod decimal;
mod funcs;
mod interval;
mod surd;

pub use complex::ComplexInterval;
pub use decimal::{fixed, rational_decimal, scientific, truncate_sig};
pub use funcs::{cbrt_rational, exp, exp_rational, ln, ln2, ln_rational, pi, sin_cos, sqrt, sqrt_rational};
pub use interval::Interval;
pub use surd::Surd;

use crate::{Error, Limits, Result};

/// Runs `f` at increasing precision until it certifies a result.
pub fn certify<T>(start: u32, limits: &Limits, mut f: impl FnMut(u32) -> Option<T>) -> Result<T> {
    let mut prec = start.max(32);
    loop {
        if let Some(v) = f(prec) {
            return Ok(v);
        }
        if prec >= limits.max_precision {
            return Err(Error::PrecisionCeilingReached { bits: limits.max_precision });
        }
        prec = (prec * 2).min(limits.max_precision);
    }
}
