use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_MAX_PRECISION: u32 = 100_000;

/// Resource ceilings shared by the heavier operations.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Primitive-operation budget for enumerations and searches.
    pub budget: u64,
    /// Working-precision ceiling (bits) for certified real evaluation.
    pub max_precision: u32,
    /// Largest integer the factorizer accepts.
    pub factor_bound: BigUint,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: DEFAULT_BUDGET,
            max_precision: DEFAULT_MAX_PRECISION,
            factor_bound: BigUint::from(1u8) << 96,
        }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Limits { budget, ..Limits::default() }
    }

    pub fn meter(&self) -> Meter {
        Meter::new(self.budget)
    }

    pub fn precision_error(&self) -> Error {
        Error::PrecisionCeilingReached { bits: self.max_precision }
    }
}

/// Counts work units against a budget. Shareable across threads.
#[derive(Debug)]
pub struct Meter {
    used: AtomicU64,
    budget: u64,
}

impl Meter {
    pub fn new(budget: u64) -> Self {
        Meter { used: AtomicU64::new(0), budget }
    }

    pub fn charge(&self, units: u64) -> Result<()> {
        let before = self.used.fetch_add(units, Ordering::Relaxed);
        if before.saturating_add(units) > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Fails up front when a known amount of work cannot fit.
    pub fn require(&self, units: u128) -> Result<()> {
        let used = self.used.load(Ordering::Relaxed) as u128;
        if used + units > self.budget as u128 {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}
