use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::arith::factor::is_prime_u64;
use crate::{Error, Result};

/// `m_j = ∏ p_i^{e_i}`, the `j`-th (1-based) term of the stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothTerm {
    pub index: usize,
    #[serde(serialize_with = "crate::smoothgaps::stream::ser_big")]
    pub value: BigUint,
    pub exponents: Vec<u32>,
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Increasing stream of the `S`-smooth integers up to a limit.
///
/// A k-way merge: popping `m` pushes `m·p` for every `p ∈ S`; the same value
/// reached along different paths is dropped when it surfaces again.
#[derive(Debug)]
pub struct SmoothStream {
    primes: Vec<u64>,
    limit: BigUint,
    heap: BinaryHeap<Reverse<(BigUint, Vec<u32>)>>,
    last: Option<BigUint>,
    index: usize,
}

/// Streams every integer `≤ limit` whose prime factors lie in `primes`,
/// starting from 1. Primes are sorted; exponents follow that order.
pub fn smooth_stream(primes: &[u64], limit: &BigUint) -> Result<SmoothStream> {
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if ps.len() != primes.len() || ps.is_empty() || ps.len() > 6 {
        return Err(Error::InvalidParams("prime set must hold 1 to 6 distinct primes".into()));
    }
    if let Some(&p) = ps.iter().find(|&&p| !is_prime_u64(p)) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    if limit < &BigUint::one() {
        return Err(Error::InvalidParams("limit must be at least 1".into()));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((BigUint::one(), vec![0; ps.len()])));
    Ok(SmoothStream { primes: ps, limit: limit.clone(), heap, last: None, index: 0 })
}

impl SmoothStream {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

impl Iterator for SmoothStream {
    type Item = SmoothTerm;

    fn next(&mut self) -> Option<SmoothTerm> {
        loop {
            let Reverse((m, e)) = self.heap.pop()?;
            if self.last.as_ref() == Some(&m) {
                continue;
            }
            for (i, &p) in self.primes.iter().enumerate() {
                let next = &m * p;
                if next <= self.limit {
                    let mut f = e.clone();
                    f[i] += 1;
                    self.heap.push(Reverse((next, f)));
                }
            }
            self.last = Some(m.clone());
            self.index += 1;
            return Some(SmoothTerm { index: self.index, value: m, exponents: e });
        }
    }
}
