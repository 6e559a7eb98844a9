//! Integer factorization: trial division through 10^6, then Miller–Rabin and
//! Brent's variant of Pollard rho with a fixed iteration budget.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u32 = 1_000_000;
const RHO_ITERATIONS: u64 = 1 << 24;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
// bases 2..=37 are a proven witness set below this bound
const MR_DETERMINISTIC_BOUND: u128 = 318_665_857_834_031_151_167_461;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| sieve(TRIAL_LIMIT));

/// Primes up to and including `limit`.
pub fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn small_primes() -> &'static [u32] {
    &SMALL_PRIMES
}

/// The `k`-th prime, 1-based.
pub fn nth_prime(k: usize) -> u64 {
    SMALL_PRIMES[k - 1] as u64
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first twelve prime bases; deterministic below
/// 3.18·10^23, a strong probable-prime test above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(s) = n.to_u64() {
        return is_prime_u64(s);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut bases: Vec<u64> = MR_BASES.to_vec();
    if n.to_u128().is_none_or(|v| v >= MR_DETERMINISTIC_BOUND) {
        bases.extend([41, 43, 47, 53, 59, 61, 67, 71]);
    }
    'witness: for a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut spent = 0u64;
    for c in 1..=16u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let mut g = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > RHO_ITERATIONS {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent = 0u64;
    for c in 1..=8u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigUint::from(2u8), 1u64, one.clone());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        let mut g = one.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > RHO_ITERATIONS {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Splits a cofactor with no prime factor below the trial limit.
fn split_large(n: BigUint, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if n < &limit * &limit || is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    // perfect powers defeat rho's cycle structure rarely but cheaply handled
    for k in 2..=6u32 {
        let r = n.nth_root(k);
        if r.pow(k) == n {
            for _ in 0..k {
                split_large(r.clone(), out)?;
            }
            return Ok(());
        }
    }
    let d = match n.to_u64() {
        Some(s) => rho_u64(s).map(BigUint::from),
        None => rho_big(&n),
    };
    match d {
        Some(d) => {
            let e = &n / &d;
            split_large(d, out)?;
            split_large(e, out)
        }
        None => Err(Error::FactorBoundExceeded(format!(
            "cofactor {n} resisted the rho iteration budget"
        ))),
    }
}

/// Prime factorization of `n ≥ 1` as sorted `(prime, exponent)` pairs.
///
/// The bound applies to the cofactor left after trial division, so numbers
/// built from small primes are accepted at any size.
pub fn factor_biguint(n: &BigUint, bound: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        let (pairs, cof) = trial_u64(small);
        out.extend(pairs.into_iter().map(|(p, e)| (BigUint::from(p), e)));
        rest = BigUint::from(cof);
    } else {
        for &p in SMALL_PRIMES.iter() {
            let p64 = p as u64;
            if let Some(r) = rest.to_u64() {
                let (pairs, cof) = trial_u64_from(r, p64);
                out.extend(pairs.into_iter().map(|(p, e)| (BigUint::from(p), e)));
                rest = BigUint::from(cof);
                break;
            }
            if (&rest % p).is_zero() {
                let mut e = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                out.push((BigUint::from(p), e));
            }
        }
    }
    if !rest.is_one() {
        if &rest > bound {
            return Err(Error::FactorBoundExceeded(format!(
                "cofactor {rest} exceeds the factorization bound"
            )));
        }
        let mut big = Vec::new();
        split_large(rest, &mut big)?;
        big.sort();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

fn trial_u64(n: u64) -> (Vec<(u64, u32)>, u64) {
    trial_u64_from(n, 2)
}

/// Trial division by small primes `≥ start`; returns the cofactor.
fn trial_u64_from(mut n: u64, start: u64) -> (Vec<(u64, u32)>, u64) {
    let mut out = Vec::new();
    let from = SMALL_PRIMES.partition_point(|&p| (p as u64) < start);
    for &p in &SMALL_PRIMES[from..] {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 && n < (TRIAL_LIMIT as u64) * (TRIAL_LIMIT as u64) {
        out.push((n, 1));
        n = 1;
    }
    (out, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: u128) -> Vec<(u128, u32)> {
        let bound = BigUint::one() << 96;
        factor_biguint(&BigUint::from(n), &bound)
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u128().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(fac(1), vec![]);
        assert_eq!(fac(12), vec![(2, 2), (3, 1)]);
        assert_eq!(fac(1_000_000), vec![(2, 6), (5, 6)]);
        assert_eq!(fac(999_983), vec![(999_983, 1)]);
    }

    #[test]
    fn large_semiprimes() {
        // two primes just above the trial limit
        let p = 1_000_003u128;
        let q = 1_000_033u128;
        assert_eq!(fac(p * q), vec![(p, 1), (q, 1)]);
        let big_p = 4_294_967_311u128; // smallest prime above 2^32
        let big_q = 4_294_967_357u128;
        assert_eq!(fac(big_p * big_q), vec![(big_p, 1), (big_q, 1)]);
        assert_eq!(fac(big_p * big_p), vec![(big_p, 2)]);
        // beyond 64 bits
        let r = 18_446_744_073_709_551_629u128; // prime above 2^64
        assert_eq!(fac(r * 3), vec![(3, 1), (r, 1)]);
        let s = 1_099_511_627_791u128; // prime above 2^40
        let t = 1_099_511_627_803u128;
        assert_eq!(fac(s * t), vec![(s, 1), (t, 1)]);
    }

    #[test]
    fn bound_applies_to_cofactor() {
        let bound = BigUint::from(1000u32);
        let n = BigUint::from(2u8).pow(300);
        assert_eq!(factor_biguint(&n, &bound).unwrap(), vec![(BigUint::from(2u8), 300)]);
        let r = BigUint::from(1_000_003u64 * 1_000_033);
        assert!(matches!(factor_biguint(&r, &bound), Err(Error::FactorBoundExceeded(_))));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(is_prime(&BigUint::from(18_446_744_073_709_551_629u128)));
        assert!(!is_prime(&BigUint::from(18_446_744_073_709_551_629u128 * 7)));
    }
}
