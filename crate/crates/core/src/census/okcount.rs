//! Counting dependent pairs of ℤ[i] / ℤ[ω] integers of bounded height.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;

use crate::arith::{QuadField, QuadInt};
use crate::{Limits, Result};

/// Canonical representatives (one per associate class) of nonzero
/// integers with norm ≤ `nmax`, sorted by norm.
pub fn canonical_elements(field: QuadField, nmax: u64) -> Vec<(i64, i64, u64)> {
    let r = nmax.sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in 1..=r {
        for b in 0..=r {
            let n = norm(field, a, b);
            if n <= nmax as i128 {
                out.push((a, b, n as u64));
            }
        }
    }
    out.sort_by_key(|&(a, b, n)| (n, a, b));
    out
}

fn norm(field: QuadField, a: i64, b: i64) -> i128 {
    let (a, b) = (a as i128, b as i128);
    match field {
        QuadField::Gaussian => a * a + b * b,
        QuadField::Eisenstein => a * a + a * b + b * b,
    }
}

/// Canonical non-unit `γ` that are not associates of proper powers, with
/// the number `L` of powers `γ^l` (l ≥ 1) of norm ≤ `nmax`.
pub fn primitive_classes(field: QuadField, nmax: u64) -> Vec<(QuadInt, u32)> {
    let mut marked: HashSet<(i64, i64)> = HashSet::new();
    let mut out = Vec::new();
    for (a, b, nm) in canonical_elements(field, nmax) {
        if nm == 1 || marked.contains(&(a, b)) {
            continue;
        }
        let g = QuadInt::new(field, a, b);
        let mut l = 1u32;
        let mut acc = nm as u128;
        let mut power = g.clone();
        while acc * nm as u128 <= nmax as u128 {
            acc *= nm as u128;
            l += 1;
            power = power.mul(&g);
            let (c, _) = power.canonical();
            marked.insert((to_i64(&c.a), to_i64(&c.b)));
        }
        out.push((g, l));
    }
    out
}

/// Exact number of dependent pairs `(α, β)` with `N(α), N(β) ≤ nmax`.
///
/// Unit coordinates make any pair dependent. Otherwise `α` and `β` must be
/// unit multiples of powers of one primitive `γ`, so each primitive class
/// with `L` admissible powers contributes `(w·L)^2` pairs.
pub fn count_pairs_ok(field: QuadField, nmax: u64, limits: &Limits) -> Result<u64> {
    if nmax == 0 {
        return Ok(0);
    }
    let w = field.unit_order() as u64;
    let elems = canonical_elements(field, nmax).len() as u64;
    limits.meter().charge(elems)?;
    let n_all = w * elems;
    let classes: u64 = primitive_classes(field, nmax).iter().map(|&(_, l)| (w * l as u64).pow(2)).sum();
    Ok(2 * w * n_all - w * w + classes)
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("bounded coordinate")
}
