use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::lattice::IVec;
use crate::arith::{exponent_map, ExactNumber, PrimeExponentMap, PrimeRep, Ring};
use crate::{Error, Limits, Result};

/// Prime-by-coordinate exponent table with a separate torsion row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub ring: Ring,
    /// Row labels.
    pub primes: Vec<PrimeRep>,
    /// `columns[j][i]` is the exponent of `primes[i]` in coordinate `j`.
    pub columns: Vec<Vec<i64>>,
    /// Unit index of each coordinate (sign over ℚ, power of τ over ℚ(τ)).
    pub units: Vec<u32>,
}

/// Common ring of a vector; all coordinates must agree.
pub fn common_ring(v: &[ExactNumber]) -> Result<Ring> {
    let ring = v.first().map_or(Ring::Rational, |x| x.ring());
    if v.iter().any(|x| x.ring() != ring) {
        return Err(Error::MixedRings);
    }
    Ok(ring)
}

impl ExponentMatrix {
    pub fn from_maps(ring: Ring, maps: &[PrimeExponentMap]) -> Self {
        let primes: BTreeSet<PrimeRep> = maps.iter().flat_map(|m| m.factors.keys().cloned()).collect();
        let primes: Vec<PrimeRep> = primes.into_iter().collect();
        let columns = maps.iter().map(|m| primes.iter().map(|p| m.exponent(p)).collect()).collect();
        let units = maps.iter().map(|m| m.unit).collect();
        ExponentMatrix { ring, primes, columns, units }
    }

    pub fn from_vector(v: &[ExactNumber], limits: &Limits) -> Result<Self> {
        let ring = common_ring(v)?;
        if let Some(j) = v.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroCoordinate(j));
        }
        let maps = v.iter().map(|x| exponent_map(x, limits)).collect::<Result<Vec<_>>>()?;
        Ok(ExponentMatrix::from_maps(ring, &maps))
    }

    /// Builds directly from integer columns over ℚ with all signs positive.
    pub fn from_columns(columns: Vec<Vec<i64>>) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        let primes = (1..=rows).map(|k| PrimeRep::rational(crate::arith::factor::nth_prime(k))).collect();
        let units = vec![0; columns.len()];
        ExponentMatrix { ring: Ring::Rational, primes, columns, units }
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub(crate) fn big_columns(&self) -> Vec<IVec> {
        self.columns.iter().map(|c| c.iter().map(|&e| BigInt::from(e)).collect()).collect()
    }

    /// Columns extended by the torsion row, plus one slack column holding
    /// the unit group order, so that the kernel projected to the first `n`
    /// coordinates is exactly the relation lattice.
    pub(crate) fn relation_columns(&self) -> Vec<IVec> {
        let w = self.ring.unit_order() as i64;
        let mut cols: Vec<IVec> = self
            .columns
            .iter()
            .zip(&self.units)
            .map(|(c, &u)| {
                let mut col: IVec = c.iter().map(|&e| BigInt::from(e)).collect();
                col.push(BigInt::from(u));
                col
            })
            .collect();
        let mut slack = vec![BigInt::from(0); self.primes.len()];
        slack.push(BigInt::from(w));
        cols.push(slack);
        cols
    }
}
