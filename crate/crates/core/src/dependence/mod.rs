//! Multiplicative dependence: exponent lattices, relation witnesses and the
//! decomposition of dependent pairs.

mod lattice;
mod matrix;
mod mult2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

pub use lattice::{enumerate_ball, kernel_basis, lll, norm2, primitive_canonical, sup_norm, IVec};
pub use matrix::{common_ring, ExponentMatrix};
pub use mult2::{mult2_decompose, Mult2Decomposition};

use crate::arith::ExactNumber;
use crate::{Error, Limits, Result};

/// Exponent vector `k` with `v^k = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub k: Vec<i64>,
    /// Factor applied to the primitive kernel vector to kill the residual
    /// torsion character (1 when none was needed).
    pub unit_multiple: u32,
}

impl RelationWitness {
    pub fn sup_norm(&self) -> u64 {
        self.k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Precondition("witness entry exceeds 64 bits".into())))
        .collect()
}

/// Integer basis of the kernel of `E`, size-reduced.
pub fn integer_kernel(e: &ExponentMatrix) -> Vec<Vec<i64>> {
    reduced_kernel(e).iter().map(|v| v.iter().map(|x| x.to_i64().expect("kernel entry fits")).collect()).collect()
}

fn reduced_kernel(e: &ExponentMatrix) -> Vec<IVec> {
    let k = kernel_basis(&e.big_columns());
    let mut b = lll(k);
    b.sort_by(|x, y| norm2(x).cmp(&norm2(y)).then_with(|| y.cmp(x)));
    b.into_iter().map(|v| primitive_canonical(&v)).collect()
}

/// Basis of the full relation lattice `{k : v^k = 1}` (torsion included).
pub fn relation_lattice(e: &ExponentMatrix) -> Vec<IVec> {
    let n = e.n();
    let k = kernel_basis(&e.relation_columns());
    let proj: Vec<IVec> = k.into_iter().map(|v| v[..n].to_vec()).collect();
    lll(proj)
}

fn unit_character(e: &ExponentMatrix, k: &[BigInt]) -> u32 {
    let w = BigInt::from(e.ring.unit_order());
    let s: BigInt = k.iter().zip(&e.units).map(|(x, &u)| x * BigInt::from(u)).sum();
    s.mod_floor(&w).to_u32().unwrap()
}

/// Tests dependence; returns a witness when dependent.
pub fn is_dependent(v: &[ExactNumber], limits: &Limits) -> Result<(bool, Option<RelationWitness>)> {
    if v.len() < 2 {
        return Err(Error::InvalidParams("need at least two coordinates".into()));
    }
    let e = ExponentMatrix::from_vector(v, limits)?;
    let out = matrix_dependence(&e)?;
    if let Some(w) = &out {
        debug_check(v, &w.k);
    }
    Ok((out.is_some(), out))
}

fn matrix_dependence(e: &ExponentMatrix) -> Result<Option<RelationWitness>> {
    let kernel = reduced_kernel(e);
    let Some(cand) = kernel.first() else {
        return Ok(None);
    };
    let w = e.ring.unit_order();
    let c = unit_character(e, cand);
    let order = if c == 0 { 1 } else { w / c.gcd(&w) };
    let k: IVec = cand.iter().map(|x| x * BigInt::from(order)).collect();
    Ok(Some(RelationWitness { k: to_i64_vec(&k)?, unit_multiple: order }))
}

/// Dependence of the vector whose `j`-th coordinate is
/// `∏_i bases[i]^{exps[j][i]}`, decided from the factorizations of the bases
/// alone, so coordinates such as `t^{10^8}` are never expanded.
pub fn is_dependent_powers(
    bases: &[ExactNumber],
    exps: &[Vec<i64>],
    limits: &Limits,
) -> Result<(bool, Option<RelationWitness>)> {
    if exps.len() < 2 {
        return Err(Error::InvalidParams("need at least two coordinates".into()));
    }
    if exps.iter().any(|row| row.len() != bases.len()) {
        return Err(Error::InvalidParams("exponent rows must match the bases".into()));
    }
    let ring = common_ring(bases)?;
    if let Some(j) = bases.iter().position(|x| x.is_zero()) {
        return Err(Error::ZeroCoordinate(j));
    }
    let maps = bases.iter().map(|x| crate::arith::exponent_map(x, limits)).collect::<Result<Vec<_>>>()?;
    let base = ExponentMatrix::from_maps(ring, &maps);
    let w = ring.unit_order() as i64;
    let overflow = || Error::Precondition("power-product exponent exceeds 64 bits".into());
    let mut columns = Vec::with_capacity(exps.len());
    let mut units = Vec::with_capacity(exps.len());
    for row in exps {
        let mut col = vec![0i64; base.primes.len()];
        let mut u = 0i64;
        for (i, &x) in row.iter().enumerate() {
            for (c, &b) in col.iter_mut().zip(&base.columns[i]) {
                *c = b.checked_mul(x).and_then(|t| c.checked_add(t)).ok_or_else(overflow)?;
            }
            u = (u + (base.units[i] as i64) * x.rem_euclid(w)).rem_euclid(w);
        }
        columns.push(col);
        units.push(u as u32);
    }
    let e = ExponentMatrix { ring, primes: base.primes, columns, units };
    let out = matrix_dependence(&e)?;
    if let Some(wit) = &out {
        // k·E = 0 on every prime row and on the torsion row
        for i in 0..e.primes.len() {
            let s: i128 = wit.k.iter().zip(&e.columns).map(|(&k, c)| k as i128 * c[i] as i128).sum();
            assert_eq!(s, 0, "power-product witness fails on a prime row");
        }
        assert_eq!(unit_character(&e, &wit.k.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()), 0);
    }
    Ok((out.is_some(), out))
}

fn debug_check(v: &[ExactNumber], k: &[i64]) {
    if cfg!(debug_assertions) {
        let p = ExactNumber::product_of_powers(v, k).expect("same ring");
        assert!(p.is_one(), "witness {k:?} fails for {v:?}");
    }
}

/// A witness of least sup-norm. Among ties, witnesses are normalized to a
/// positive first nonzero entry and the lexicographically largest is kept.
pub fn minimal_witness(v: &[ExactNumber], limits: &Limits) -> Result<RelationWitness> {
    if v.len() < 2 {
        return Err(Error::InvalidParams("need at least two coordinates".into()));
    }
    let e = ExponentMatrix::from_vector(v, limits)?;
    let basis = relation_lattice(&e);
    if basis.is_empty() {
        return Err(Error::NotDependent);
    }
    let bound = basis.iter().map(|b| sup_norm(b)).min().unwrap();
    let r2 = &bound * &bound * BigInt::from(e.n());
    let meter = limits.meter();
    let pts = enumerate_ball(&basis, &r2, &meter)?;
    let best = pts
        .into_iter()
        .filter(|p| p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
        .min_by(|a, b| sup_norm(a).cmp(&sup_norm(b)).then_with(|| b.cmp(a)))
        .expect("basis vectors lie in the ball");
    let k = to_i64_vec(&best)?;
    let g = best.iter().fold(BigInt::zero(), |a, x| a.gcd(x)).to_u32().unwrap_or(1);
    debug_check(v, &k);
    Ok(RelationWitness { k, unit_multiple: g })
}

#[cfg(test)]
mod tests;
