//! Exact computations with multiplicatively dependent vectors: dependence
//! tests and relation witnesses, census counts, covering-radius probes,
//! smooth-number gaps and constructive density approximations.

pub mod arith;
pub mod census;
pub mod covering;
pub mod dependence;
pub mod density;
pub mod error;
pub mod limits;
pub mod real;
pub mod smoothgaps;

pub use error::{Error, Result};
pub use limits::{Limits, Meter};
