use serde_json::{json, Value};

use crate::arith::factor::nth_prime;
use crate::census::ExponentMemo;
use crate::{Error, Limits, Result};

/// How the box centre `q_j` (a power of the j-th prime) is capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterRule {
    /// Largest power `≤ H`.
    Bound,
    /// Largest power `≤ H/2`.
    HalfBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxStatus {
    Empty,
    Counterexample(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyBoxCertificate {
    pub n: usize,
    pub h: u64,
    pub center: Vec<u64>,
    pub halfwidth: u64,
    pub rule: CenterRule,
    pub status: BoxStatus,
    pub points_checked: u64,
}

impl EmptyBoxCertificate {
    pub fn to_json(&self) -> Value {
        let status = match &self.status {
            BoxStatus::Empty => json!("Empty"),
            BoxStatus::Counterexample(v) => json!({ "Counterexample": v.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
        };
        json!({
            "n": self.n,
            "H": self.h.to_string(),
            "center": self.center.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "halfwidth": self.halfwidth.to_string(),
            "center_rule": match self.rule { CenterRule::Bound => "H", CenterRule::HalfBound => "H/2" },
            "status": status,
            "points_checked": self.points_checked,
        })
    }
}

fn largest_power(p: u64, cap: u64) -> u64 {
    let mut q = p;
    while let Some(next) = q.checked_mul(p) {
        if next > cap {
            break;
        }
        q = next;
    }
    q
}

/// Checks every integer point of the box of the given halfwidth around the
/// prime-power centre for multiplicative dependence.
pub fn empty_box(n: usize, h: u64, halfwidth: u64, rule: CenterRule, limits: &Limits) -> Result<EmptyBoxCertificate> {
    if !(3..=5).contains(&n) {
        return Err(Error::InvalidParams("n must be in 3..=5".into()));
    }
    let primes: Vec<u64> = (1..=n).map(nth_prime).collect();
    let cap = match rule {
        CenterRule::Bound => h,
        CenterRule::HalfBound => h / 2,
    };
    if h < 2 * primes[n - 1] || cap < primes[n - 1] {
        return Err(Error::InvalidParams(format!("H must be at least {}", 2 * primes[n - 1])));
    }
    let side = 2 * halfwidth as u128 + 1;
    limits.meter().require(side.saturating_pow(n as u32))?;
    let center: Vec<u64> = primes.iter().map(|&p| largest_power(p, cap)).collect();
    let top = center.iter().max().unwrap() + halfwidth;
    let memo = ExponentMemo::new(top);
    let hw = halfwidth as i64;
    let mut offset = vec![-hw; n];
    let mut checked = 0u64;
    let mut status = BoxStatus::Empty;
    let mut abs = vec![0u64; n];
    loop {
        let v: Vec<i64> = center.iter().zip(&offset).map(|(&c, &o)| c as i64 + o).collect();
        checked += 1;
        if v.iter().all(|&x| x != 0) {
            for (a, x) in abs.iter_mut().zip(&v) {
                *a = x.unsigned_abs();
            }
            if status == BoxStatus::Empty && memo.dependent_abs(&abs) {
                status = BoxStatus::Counterexample(v);
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(EmptyBoxCertificate { n, h, center, halfwidth, rule, status, points_checked: checked });
            }
            j -= 1;
            offset[j] += 1;
            if offset[j] <= hw {
                break;
            }
            offset[j] = -hw;
        }
    }
}
