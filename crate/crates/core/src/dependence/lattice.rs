//! Integer lattice routines: kernels by row reduction, exact LLL, and
//! short-vector enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::limits::Meter;
use crate::Result;

pub type IVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Basis of `{k ∈ ℤ^n : Σ_j k_j·col_j = 0}` where `cols` has `n` columns of
/// equal length. Unimodular row reduction of `[Eᵀ | I]`.
pub fn kernel_basis(cols: &[IVec]) -> Vec<IVec> {
    let n = cols.len();
    let m = cols.first().map_or(0, |c| c.len());
    let mut rows: Vec<(IVec, IVec)> = (0..n)
        .map(|j| {
            let mut id = vec![BigInt::zero(); n];
            id[j] = BigInt::one();
            (cols[j].clone(), id)
        })
        .collect();
    let mut pivot = 0;
    for c in 0..m {
        loop {
            let best = (pivot..n)
                .filter(|&i| !rows[i].0[c].is_zero())
                .min_by(|&i, &j| rows[i].0[c].abs().cmp(&rows[j].0[c].abs()));
            let Some(b) = best else { break };
            rows.swap(pivot, b);
            let mut clean = true;
            for i in pivot + 1..n {
                if rows[i].0[c].is_zero() {
                    continue;
                }
                let q = rows[i].0[c].div_floor(&rows[pivot].0[c]);
                let (p0, p1) = rows[pivot].clone();
                for (x, y) in rows[i].0.iter_mut().zip(&p0) {
                    *x -= &q * y;
                }
                for (x, y) in rows[i].1.iter_mut().zip(&p1) {
                    *x -= &q * y;
                }
                if !rows[i].0[c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivot += 1;
                break;
            }
        }
        if pivot == n {
            break;
        }
    }
    rows.into_iter().skip(pivot).map(|(_, k)| k).collect()
}

struct Gso {
    mu: Vec<Vec<BigRational>>,
    bn: Vec<BigRational>,
}

fn gso(b: &[IVec]) -> Gso {
    let r = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(r);
    let mut mu = vec![vec![BigRational::zero(); r]; r];
    let mut bn = Vec::with_capacity(r);
    for i in 0..r {
        let mut v: Vec<BigRational> = b[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for j in 0..i {
            let num: BigRational = b[i]
                .iter()
                .zip(&star[j])
                .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                .sum();
            let m = num / &bn[j];
            for (vi, sj) in v.iter_mut().zip(&star[j]) {
                *vi -= &m * sj;
            }
            mu[i][j] = m;
        }
        let norm: BigRational = v.iter().map(|x| x * x).sum();
        bn.push(norm);
        star.push(v);
    }
    Gso { mu, bn }
}

fn round_q(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * two))
}

/// LLL reduction (δ = 3/4) in exact arithmetic. Input vectors must be
/// linearly independent.
pub fn lll(mut b: Vec<IVec>) -> Vec<IVec> {
    let r = b.len();
    if r <= 1 {
        return b;
    }
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    let mut g = gso(&b);
    while k < r {
        for j in (0..k).rev() {
            let q = round_q(&g.mu[k][j]);
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                g = gso(&b);
            }
        }
        let lhs = &g.bn[k];
        let rhs = (&delta - &g.mu[k][k - 1] * &g.mu[k][k - 1]) * &g.bn[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            g = gso(&b);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Every nonzero lattice vector `v = Σ x_i b_i` with `‖v‖² ≤ r2`.
/// Returns `None`-style error through the meter when the budget runs out.
pub fn enumerate_ball(b: &[IVec], r2: &BigInt, meter: &Meter) -> Result<Vec<IVec>> {
    let r = b.len();
    let mut out = Vec::new();
    if r == 0 {
        return Ok(out);
    }
    let g = gso(b);
    let r2q = BigRational::from_integer(r2.clone());
    let mut x = vec![BigInt::zero(); r];
    enum_level(b, &g, r - 1, &r2q, &BigRational::zero(), &mut x, &mut out, meter)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enum_level(
    b: &[IVec],
    g: &Gso,
    i: usize,
    r2: &BigRational,
    partial: &BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<IVec>,
    meter: &Meter,
) -> Result<()> {
    meter.charge(1)?;
    let r = b.len();
    let c: BigRational = -(i + 1..r)
        .map(|j| &g.mu[j][i] * BigRational::from_integer(x[j].clone()))
        .sum::<BigRational>();
    let rad2 = (r2 - partial) / &g.bn[i];
    if rad2.is_negative() {
        return Ok(());
    }
    let inside = |t: &BigInt| {
        let d = BigRational::from_integer(t.clone()) - &c;
        &d * &d <= rad2
    };
    let cf = c.to_f64().unwrap_or(0.0);
    let rf = rad2.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut lo = BigInt::from((cf - rf).floor() as i64) - 2;
    let mut hi = BigInt::from((cf + rf).ceil() as i64) + 2;
    let cfloor = c.floor().to_integer();
    while lo <= cfloor && !inside(&lo) {
        lo += 1;
    }
    while hi > cfloor && !inside(&hi) {
        hi -= 1;
    }
    // the exact range is contiguous around c; widen if the float hint was short
    while inside(&(&lo - 1)) {
        lo -= 1;
    }
    while inside(&(&hi + 1)) {
        hi += 1;
    }
    let mut t = lo;
    while t <= hi {
        x[i] = t.clone();
        let d = BigRational::from_integer(t.clone()) - &c;
        let p = partial + &d * &d * &g.bn[i];
        if i == 0 {
            if x.iter().any(|v| !v.is_zero()) {
                let mut v = vec![BigInt::zero(); b[0].len()];
                for (xi, bi) in x.iter().zip(b) {
                    if !xi.is_zero() {
                        for (vv, bb) in v.iter_mut().zip(bi) {
                            *vv += xi * bb;
                        }
                    }
                }
                out.push(v);
            }
        } else {
            enum_level(b, g, i - 1, r2, &p, x, out, meter)?;
        }
        t += 1;
    }
    x[i] = BigInt::zero();
    Ok(())
}

pub fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

pub fn norm2(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn primitive_canonical(v: &[BigInt]) -> IVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = v.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
    v.iter().map(|x| if sign { -(x / &g) } else { x / &g }).collect()
}
