//! Counting dependent integer vectors with coordinates in `[-H, H] \ {0}`.

use num_integer::Roots;
use rayon::prelude::*;

use crate::{Error, Limits, Result};

/// Exponent vectors of `1..=h` from a smallest-prime-factor sieve, stored
/// sparsely as `(prime index, exponent)`.
pub struct ExponentMemo {
    pub exps: Vec<Vec<(u32, u32)>>,
}

impl ExponentMemo {
    pub fn new(h: u64) -> Self {
        let h = h as usize;
        let mut spf = vec![0u32; h + 1];
        let mut index = vec![0u32; h + 1];
        let mut count = 0u32;
        for i in 2..=h {
            if spf[i] == 0 {
                index[i] = count;
                count += 1;
                let mut j = i;
                while j <= h {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut exps = vec![Vec::new(); h + 1];
        for (x, slot) in exps.iter_mut().enumerate().skip(2) {
            let mut y = x;
            let mut v: Vec<(u32, u32)> = Vec::new();
            while y > 1 {
                let p = spf[y] as usize;
                let mut e = 0;
                while y % p == 0 {
                    y /= p;
                    e += 1;
                }
                v.push((index[p], e));
            }
            *slot = v;
        }
        ExponentMemo { exps }
    }

    /// True when the absolute values `xs` are multiplicatively dependent.
    pub fn dependent_abs(&self, xs: &[u64]) -> bool {
        if xs.iter().any(|&x| x == 1) {
            return true;
        }
        let mut primes: Vec<u32> = xs.iter().flat_map(|&x| self.exps[x as usize].iter().map(|p| p.0)).collect();
        primes.sort_unstable();
        primes.dedup();
        let n = xs.len();
        if primes.len() < n {
            return true;
        }
        let mut m: Vec<Vec<i64>> = xs
            .iter()
            .map(|&x| {
                let mut row = vec![0i64; primes.len()];
                for &(p, e) in &self.exps[x as usize] {
                    let c = primes.binary_search(&p).unwrap();
                    row[c] = e as i64;
                }
                row
            })
            .collect();
        rank(&mut m) < n
    }
}

/// Rank by fraction-free elimination; rows are consumed.
pub fn rank(m: &mut [Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let g = gcd(a, b);
                let (a, b) = (a / g, b / g);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `#{(x, y) ∈ [2, H]² : x, y are powers of a common base}`.
pub fn common_base_pairs(h: u64) -> u64 {
    if h < 2 {
        return 0;
    }
    let root = h.sqrt();
    // non-perfect-powers r ≤ √H contribute L(r)^2; larger ones contribute 1
    let mut is_power = vec![false; (root + 1) as usize];
    let mut total = 0u64;
    for r in 2..=root {
        if is_power[r as usize] {
            continue;
        }
        let mut l = 0u64;
        let mut x = r;
        loop {
            l += 1;
            if x <= root && l > 1 {
                is_power[x as usize] = true;
            }
            match x.checked_mul(r) {
                Some(y) if y <= h => x = y,
                _ => break,
            }
        }
        total += l * l;
    }
    let primitive_small = (2..=root).filter(|&r| !is_power[r as usize]).count() as u64;
    let primitive_all = (h - 1) - perfect_powers_upto(h);
    total + (primitive_all - primitive_small)
}

/// Number of perfect powers `x^k`, `k ≥ 2`, in `[2, h]`.
fn perfect_powers_upto(h: u64) -> u64 {
    let mut seen = std::collections::HashSet::new();
    let mut x = 2u64;
    while x.saturating_mul(x) <= h {
        let mut y = x * x;
        loop {
            seen.insert(y);
            match y.checked_mul(x) {
                Some(z) if z <= h => y = z,
                _ => break,
            }
        }
        x += 1;
    }
    seen.len() as u64
}

/// Count for `n = 2` from the structural classification.
pub fn count_pairs(h: u64) -> u64 {
    8 * h - 4 + 4 * common_base_pairs(h)
}

fn multinomial_perms(xs: &[u64]) -> u64 {
    let n = xs.len() as u64;
    let mut total: u64 = (1..=n).product();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        total /= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    total
}

/// Count for `n ≥ 2` by rank tests over sorted absolute-value tuples.
pub fn count_by_rank(n: usize, h: u64, memo: &ExponentMemo) -> u64 {
    let signs = 1u64 << n;
    let per_first: u64 = (1..=h)
        .into_par_iter()
        .map(|x1| {
            let mut tuple = vec![x1; n];
            let mut acc = 0u64;
            count_rec(1, n, h, &mut tuple, memo, &mut acc);
            acc
        })
        .sum();
    per_first * signs
}

fn count_rec(i: usize, n: usize, h: u64, t: &mut Vec<u64>, memo: &ExponentMemo, acc: &mut u64) {
    if i == n {
        if memo.dependent_abs(t) {
            *acc += multinomial_perms(t);
        }
        return;
    }
    for x in t[i - 1]..=h {
        t[i] = x;
        count_rec(i + 1, n, h, t, memo, acc);
    }
}

/// Streams every dependent signed vector in lexicographic order.
pub fn emit_lex(n: usize, h: u64, memo: &ExponentMemo, sink: &mut dyn FnMut(&[i64])) -> u64 {
    let hi = h as i64;
    let values: Vec<i64> = (-hi..=hi).filter(|&x| x != 0).collect();
    let mut idx = vec![0usize; n];
    let mut v = vec![0i64; n];
    let mut abs = vec![0u64; n];
    let mut count = 0u64;
    loop {
        for j in 0..n {
            v[j] = values[idx[j]];
            abs[j] = v[j].unsigned_abs();
        }
        if memo.dependent_abs(&abs) {
            sink(&v);
            count += 1;
        }
        let mut j = n;
        loop {
            if j == 0 {
                return count;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < values.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

pub fn check_budget(n: usize, h: u64, limits: &Limits) -> Result<()> {
    let work = (n as u128).saturating_mul((2 * h as u128).saturating_pow(n as u32));
    if work > limits.budget as u128 {
        return Err(Error::BudgetExceeded { budget: limits.budget });
    }
    Ok(())
}
