//! Integers composed of a fixed set of primes, their gaps, and the
//! continued fraction of `log p / log q`.

mod convergents;
mod gaps;
mod stream;

pub use convergents::{
    cf_convergents, certified_quotients, gouillon_a, linear_form, Convergent, ConvergentReport,
    GouillonConstant, LinearForm,
};
pub use gaps::{gap_table, GapExtreme, GapRecord, GapSummary, GapTable};
pub use stream::{smooth_stream, SmoothStream, SmoothTerm};

use crate::arith::factor::is_prime_u64;
use crate::{Error, Result};

fn check_prime_pair(p: u64, q: u64) -> Result<()> {
    if !(is_prime_u64(p) && is_prime_u64(q) && p < q) {
        return Err(Error::InvalidParams(format!("need primes p < q, got ({p}, {q})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
