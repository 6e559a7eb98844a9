use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ProbeResult;
use crate::arith::{ExactNumber, QuadField, QuadInt, QuadRat};
use crate::census::{primitive_classes, ExponentMemo};
use crate::{Error, Limits, Result};

/// A probe point: rational coordinates in ℝⁿ, or coordinates in ℚ(i) /
/// ℚ(ω) searched over ℤ[i] / ℤ[ω].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Real(Vec<BigRational>),
    Complex(QuadField, Vec<QuadRat>),
}

impl Target {
    /// `2·⌈max|x_j|⌉ + 2`, always large enough for `nearest_dependent`.
    pub fn default_search_bound(&self) -> BigRational {
        let m2 = self.max_abs2();
        let mut r = BigInt::from(0);
        while BigRational::from_integer(&r * &r) < m2 {
            r += 1;
        }
        BigRational::from_integer(r * 2 + 2)
    }

    fn max_abs2(&self) -> BigRational {
        match self {
            Target::Real(x) => x.iter().map(|v| v * v).max().unwrap_or_default(),
            Target::Complex(_, z) => z.iter().map(|v| v.norm()).max().unwrap_or_default(),
        }
    }

    fn as_numbers(&self) -> Vec<ExactNumber> {
        match self {
            Target::Real(x) => x.iter().cloned().map(ExactNumber::from_rational).collect(),
            Target::Complex(_, z) => z.iter().cloned().map(ExactNumber::Quadratic).collect(),
        }
    }
}

fn sq(x: &BigRational) -> BigRational {
    x * x
}

/// Exact nearest dependent vector with every `|v_j| ≤ search_bound`.
/// Ties go to the lexicographically smallest vector.
pub fn nearest_dependent(x: &Target, search_bound: &BigRational, limits: &Limits) -> Result<ProbeResult> {
    let n = match x {
        Target::Real(v) => v.len(),
        Target::Complex(_, v) => v.len(),
    };
    if n < 2 {
        return Err(Error::InvalidParams("need at least two coordinates".into()));
    }
    // an incumbent within max|x_j| of x always exists, so this bound is enough
    let b2 = sq(search_bound);
    if b2 < x.max_abs2() * BigRational::from_integer(4.into()) {
        return Err(Error::InvalidParams("search bound must be at least 2·max|x_j|".into()));
    }
    let (nearest, dist2) = match x {
        Target::Real(v) => {
            let b = search_bound.floor().to_integer().to_i64().ok_or_else(|| Error::BudgetExceeded { budget: limits.budget })?;
            let (v, d) = if n == 2 { real_pair(v, b, limits)? } else { real_ball(v, b, limits)? };
            (v.into_iter().map(ExactNumber::int).collect(), d)
        }
        Target::Complex(field, z) => {
            if n != 2 {
                return Err(Error::InvalidParams("complex probes support n = 2".into()));
            }
            let nmax = b2.floor().to_integer().to_u64().ok_or_else(|| Error::BudgetExceeded { budget: limits.budget })?;
            let (v, d) = complex_pair(*field, z, nmax, limits)?;
            (v.into_iter().map(|q| ExactNumber::Quadratic(q.to_quad_rat())).collect(), d)
        }
    };
    Ok(ProbeResult { probe: x.as_numbers(), nearest, dist2, search_bound: search_bound.clone(), bound: None })
}

/// Nonzero integer in `[-b, b]` closest to `x`, smaller value on ties.
fn nearest_nonzero_int(x: &BigRational, b: i64) -> i64 {
    let f = x.floor().to_integer().to_i64().unwrap_or(if x.is_negative() { -b } else { b });
    let cands = [f, f + 1, -1, 1, b, -b];
    cands
        .into_iter()
        .filter(|&c| c != 0 && c.abs() <= b)
        .min_by(|&p, &q| {
            let dp = sq(&(x - BigRational::from_integer(p.into())));
            let dq = sq(&(x - BigRational::from_integer(q.into())));
            dp.cmp(&dq).then(p.cmp(&q))
        })
        .unwrap()
}

type Best<V> = Option<(BigRational, V)>;

fn offer<V: Ord + Clone>(best: &mut Best<V>, d: BigRational, v: V) {
    let better = match best {
        None => true,
        Some((bd, bv)) => d < *bd || (d == *bd && v < *bv),
    };
    if better {
        *best = Some((d, v));
    }
}

fn perfect_power_sieve(b: usize) -> Vec<bool> {
    let mut is_power = vec![false; b + 1];
    let mut r = 2usize;
    while r * r <= b {
        if !is_power[r] {
            let mut x = r * r;
            while x <= b {
                is_power[x] = true;
                x = match x.checked_mul(r) {
                    Some(y) => y,
                    None => break,
                };
            }
        }
        r += 1;
    }
    is_power
}

/// n = 2 over ℤ: unit-coordinate pairs, then `(±γ^s, ±γ^t)` per
/// primitive base. The distance splits by coordinate, so each coordinate
/// takes its own closest power.
fn real_pair(x: &[BigRational], b: i64, limits: &Limits) -> Result<(Vec<i64>, BigRational)> {
    let meter = limits.meter();
    meter.charge(b as u64)?;
    let mut best: Best<Vec<i64>> = None;
    let dist = |v: &[i64]| -> BigRational { x.iter().zip(v).map(|(xi, &vi)| sq(&(xi - BigRational::from_integer(vi.into())))).sum() };
    for u in [-1i64, 1] {
        for j in 0..2 {
            let mut v = vec![0i64; 2];
            v[j] = u;
            v[1 - j] = nearest_nonzero_int(&x[1 - j], b);
            offer(&mut best, dist(&v), v);
        }
    }
    let is_power = perfect_power_sieve(b as usize);
    for g in 2..=b {
        if is_power[g as usize] {
            continue;
        }
        let mut powers = Vec::new();
        let mut p = g;
        loop {
            powers.push(p);
            powers.push(-p);
            match p.checked_mul(g) {
                Some(q) if q <= b => p = q,
                _ => break,
            }
        }
        let mut v = Vec::with_capacity(2);
        let mut d = BigRational::zero();
        for xi in x {
            let (dd, c) = powers
                .iter()
                .map(|&c| (sq(&(xi - BigRational::from_integer(c.into()))), c))
                .min()
                .unwrap();
            d += dd;
            v.push(c);
        }
        offer(&mut best, d, v);
    }
    let (d, v) = best.unwrap();
    Ok((v, d))
}

/// n ≥ 3 over ℤ: incumbent from a unit coordinate, then a pruned search of
/// the ball around `x` with rank tests.
fn real_ball(x: &[BigRational], b: i64, limits: &Limits) -> Result<(Vec<i64>, BigRational)> {
    let n = x.len();
    let meter = limits.meter();
    let mut best: Best<Vec<i64>> = None;
    for j in 0..n {
        for u in [-1i64, 1] {
            let v: Vec<i64> = (0..n).map(|i| if i == j { u } else { nearest_nonzero_int(&x[i], b) }).collect();
            let d = x.iter().zip(&v).map(|(xi, &vi)| sq(&(xi - BigRational::from_integer(vi.into())))).sum();
            offer(&mut best, d, v);
        }
    }
    let memo = ExponentMemo::new(b as u64);
    let mut v = vec![0i64; n];
    ball_rec(x, b, 0, &BigRational::zero(), &mut v, &memo, &mut best, &meter)?;
    let (d, v) = best.unwrap();
    Ok((v, d))
}

#[allow(clippy::too_many_arguments)]
fn ball_rec(
    x: &[BigRational],
    b: i64,
    i: usize,
    partial: &BigRational,
    v: &mut Vec<i64>,
    memo: &ExponentMemo,
    best: &mut Best<Vec<i64>>,
    meter: &crate::Meter,
) -> Result<()> {
    meter.charge(1)?;
    if i == x.len() {
        let abs: Vec<u64> = v.iter().map(|c| c.unsigned_abs()).collect();
        if memo.dependent_abs(&abs) {
            offer(best, partial.clone(), v.clone());
        }
        return Ok(());
    }
    let room = &best.as_ref().unwrap().0 - partial;
    if room.is_negative() {
        return Ok(());
    }
    let r = room.to_f64().unwrap_or(f64::MAX).sqrt() + 1.0;
    let c = x[i].to_f64().unwrap_or(0.0);
    let lo = ((c - r).floor() as i64).max(-b);
    let hi = ((c + r).ceil() as i64).min(b);
    let mut cands: Vec<(BigRational, i64)> = (lo..=hi)
        .filter(|&t| t != 0)
        .map(|t| (sq(&(&x[i] - BigRational::from_integer(t.into()))), t))
        .collect();
    cands.sort();
    for (d, t) in cands {
        let p = partial + d;
        if p > best.as_ref().unwrap().0 {
            break;
        }
        v[i] = t;
        ball_rec(x, b, i + 1, &p, v, memo, best, meter)?;
    }
    v[i] = 0;
    Ok(())
}

fn qdist(z: &QuadRat, v: &QuadInt) -> BigRational {
    z.sub(&v.to_quad_rat()).norm()
}

fn lex_key(v: &[QuadInt]) -> Vec<(BigInt, BigInt)> {
    v.iter().map(|q| (q.a.clone(), q.b.clone())).collect()
}

/// Closest nonzero ring integer to `z` with norm ≤ `nmax` (lexicographic
/// tie-break in τ-coordinates).
pub fn nearest_nonzero_element(z: &QuadRat, nmax: u64) -> Option<QuadInt> {
    let fx = z.x.floor().to_integer();
    let fy = z.y.floor().to_integer();
    let mut best: Option<(BigRational, (BigInt, BigInt), QuadInt)> = None;
    for da in -2i64..=3 {
        for db in -2i64..=3 {
            let c = QuadInt::new(z.field, &fx + da, &fy + db);
            if c.is_zero() || c.norm() > BigInt::from(nmax) {
                continue;
            }
            let d = qdist(z, &c);
            let key = (c.a.clone(), c.b.clone());
            let better = match &best {
                None => true,
                Some((bd, bk, _)) => d < *bd || (d == *bd && key < *bk),
            };
            if better {
                best = Some((d, key, c));
            }
        }
    }
    best.map(|b| b.2)
}

/// n = 2 over ℤ[i] / ℤ[ω]: a unit coordinate with the nearest nonzero
/// integer, or `(η1·γ^l, η2·γ^m)` for a primitive `γ`.
fn complex_pair(field: QuadField, z: &[QuadRat], nmax: u64, limits: &Limits) -> Result<(Vec<QuadInt>, BigRational)> {
    let meter = limits.meter();
    meter.charge(nmax)?;
    let w = field.unit_order();
    let units: Vec<QuadInt> = (0..w).map(|k| QuadInt::unit(field, k)).collect();
    let mut best: Option<(BigRational, Vec<(BigInt, BigInt)>, Vec<QuadInt>)> = None;
    let mut offer_c = |d: BigRational, v: Vec<QuadInt>| {
        let key = lex_key(&v);
        let better = match &best {
            None => true,
            Some((bd, bk, _)) => d < *bd || (d == *bd && key < *bk),
        };
        if better {
            best = Some((d, key, v));
        }
    };
    for j in 0..2 {
        let other = nearest_nonzero_element(&z[1 - j], nmax).ok_or_else(|| Error::InvalidParams("search bound too small".into()))?;
        for u in &units {
            let mut v = vec![u.clone(), u.clone()];
            v[1 - j] = other.clone();
            let d = qdist(&z[0], &v[0]) + qdist(&z[1], &v[1]);
            offer_c(d, v);
        }
    }
    for (g, l) in primitive_classes(field, nmax) {
        let mut cands = Vec::with_capacity((w * l) as usize);
        let mut p = g.clone();
        for _ in 0..l {
            for u in &units {
                cands.push(u.mul(&p));
            }
            p = p.mul(&g);
        }
        let mut v = Vec::with_capacity(2);
        let mut d = BigRational::zero();
        for zj in z {
            let (dd, c) = cands
                .iter()
                .map(|c| (qdist(zj, c), c))
                .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.lex_cmp(b.1)))
                .unwrap();
            d += dd;
            v.push(c.clone());
        }
        offer_c(d, v);
    }
    let (d, _, v) = best.unwrap();
    Ok((v, d))
}
