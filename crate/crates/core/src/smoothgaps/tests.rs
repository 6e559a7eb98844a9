use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use super::*;
use crate::real::ln_rational;
use crate::Limits;

fn values(ps: &[u64], n: u64) -> Vec<u64> {
    smooth_stream(ps, &BigUint::from(n)).unwrap().map(|t| t.value.to_u64().unwrap()).collect()
}

/// Divides out every prime of `ps` and checks that nothing is left.
fn sieve_oracle(ps: &[u64], n: u64) -> Vec<u64> {
    (1..=n)
        .filter(|&m| {
            let mut k = m;
            for &p in ps {
                while k % p == 0 {
                    k /= p;
                }
            }
            k == 1
        })
        .collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn stream_examples() {
    assert_eq!(values(&[2, 3], 20), vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18]);
    assert_eq!(values(&[2], 100), vec![1, 2, 4, 8, 16, 32, 64]);
    assert_eq!(values(&[3, 2], 1_000_000).len(), 142);
    let mut count = 0;
    let mut a = 1u64;
    while a <= 1_000_000 {
        let mut b = a;
        while b <= 1_000_000 {
            count += 1;
            b *= 3;
        }
        a *= 2;
    }
    assert_eq!(count, 142);
    assert_eq!(values(&[5], 1), vec![1]);
}

#[test]
fn stream_matches_sieve() {
    assert_eq!(values(&[2, 3], 100_000), sieve_oracle(&[2, 3], 100_000));
    assert_eq!(values(&[2, 3, 5, 7], 20_000), sieve_oracle(&[2, 3, 5, 7], 20_000));
    assert_eq!(values(&[2, 3, 5, 7, 11, 13], 5_000), sieve_oracle(&[2, 3, 5, 7, 11, 13], 5_000));
}

#[test]
fn stream_terms_carry_exponents() {
    let s = smooth_stream(&[3, 2], &BigUint::from(1000u32)).unwrap();
    assert_eq!(s.primes(), &[2, 3]);
    for (i, t) in s.enumerate() {
        assert_eq!(t.index, i + 1);
        let v = BigUint::from(2u8).pow(t.exponents[0]) * BigUint::from(3u8).pow(t.exponents[1]);
        assert_eq!(v, t.value);
    }
}

#[test]
fn stream_rejects_bad_sets() {
    let n = BigUint::from(10u8);
    assert!(smooth_stream(&[], &n).is_err());
    assert!(smooth_stream(&[2, 2], &n).is_err());
    assert!(smooth_stream(&[2, 4], &n).is_err());
    assert!(smooth_stream(&[2, 3, 5, 7, 11, 13, 17], &n).is_err());
    assert!(smooth_stream(&[2], &BigUint::from(0u8)).is_err());
}

#[test]
fn stream_beyond_u64() {
    let n: BigUint = "1000000000000000000000000000000".parse().unwrap();
    let s: Vec<_> = smooth_stream(&[2, 3], &n).unwrap().collect();
    assert!(s.windows(2).all(|w| w[0].value < w[1].value));
    assert!(s.last().unwrap().value <= n);
    // terms 2^a·3^b ≤ 10^30 counted directly
    let mut count = 0;
    let mut a = BigUint::one();
    while a <= n {
        let mut b = a.clone();
        while b <= n {
            count += 1;
            b *= 3u8;
        }
        a *= 2u8;
    }
    assert_eq!(s.len(), count);
}

fn gaps(ps: &[u64], n: u64) -> Vec<u64> {
    gap_table(ps, &BigUint::from(n), &q(0, 1), &Limits::default())
        .unwrap()
        .records
        .iter()
        .map(|r| r.gap.to_u64().unwrap())
        .collect()
}

#[test]
fn gap_examples() {
    assert_eq!(gaps(&[2, 3], 10), vec![1, 1, 1, 2, 2, 1]);
    assert_eq!(gaps(&[2], 64), vec![1, 2, 4, 8, 16, 32]);
    let t = gap_table(&[2, 3], &BigUint::from(110u32), &q(0, 1), &Limits::default()).unwrap();
    let r = t.records.iter().find(|r| r.m == BigUint::from(96u32)).unwrap();
    assert_eq!(r.gap, BigUint::from(12u32));
    assert_eq!(r.normalized, "0.125");
    assert!(t.to_csv().starts_with("j,m_j,gap,normalized\n1,1,1,1\n"));
}

#[test]
fn gap_normalization_is_certified() {
    let t = gap_table(&[2, 3], &BigUint::from(1000u32), &q(1, 1), &Limits::default()).unwrap();
    // m = 96, g = 12: log(96)/8, checked against an independent enclosure
    let r = t.records.iter().find(|r| r.m == BigUint::from(96u32)).unwrap();
    let l = ln_rational(&q(96, 1), 200).mul_rational(&q(1, 8));
    let digits: String = r.normalized.chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.trim_start_matches('0').len(), 30);
    assert_eq!(Some(r.normalized.clone()), l.certain_digits(30));
    assert_eq!(t.records[0].normalized, "0");
    let s = &t.summary;
    assert!(s.considered > 0 && s.max.is_some() && s.min.is_some());
    assert!(s.fitted_c_lo.is_some());
}

#[test]
fn gap_summary_report() {
    // report-only: the θ = 1 statistic stays bounded over the run
    let n = BigUint::from(1_000_000u32);
    let t1 = gap_table(&[2, 3], &n, &q(1, 1), &Limits::default()).unwrap();
    let max1: f64 = t1.summary.max.as_ref().unwrap().normalized.parse().unwrap();
    assert!(max1 < 10.0);
    let t3 = gap_table(&[2, 3], &n, &q(3, 1), &Limits::default()).unwrap();
    assert_eq!(t3.records.len(), 141);
    let half = gap_table(&[2, 3], &BigUint::from(500u32), &q(1, 2), &Limits::default()).unwrap();
    assert!(half.records.iter().all(|r| !r.normalized.is_empty()));
    assert!(gap_table(&[2, 3], &n, &q(-1, 2), &Limits::default()).is_err());
}

/// Independent convergent oracle: the CF of log 2/log 3 is the CF of the
/// real `x` with `2^s` vs `3^r` decided by exact integer comparison, via the
/// Stern–Brocot descent.
fn stern_brocot_convergents(count: usize) -> Vec<(u64, u64)> {
    // x < r/s  ⟺  s·log 2 < r·log 3  ⟺  2^s < 3^r
    let less = |r: u64, s: u64| BigUint::from(2u8).pow(s as u32) < BigUint::from(3u8).pow(r as u32);
    let (mut a, mut b) = ((0u64, 1u64), (1u64, 0u64));
    let mut quotients = Vec::new();
    let mut dir: Option<bool> = None;
    let mut run = 0u64;
    while quotients.len() < count + 1 {
        let m = (a.0 + b.0, a.1 + b.1);
        let go_left = less(m.0, m.1);
        if dir == Some(go_left) || dir.is_none() {
            run += 1;
        } else {
            quotients.push(run);
            run = 1;
        }
        dir = Some(go_left);
        if go_left {
            b = m;
        } else {
            a = m;
        }
    }
    // x < 1: the descent starts with a left run, so a_0 = 0
    let mut qs = vec![0];
    qs.extend(quotients);
    let (mut r0, mut s0, mut r1, mut s1) = (0u64, 1u64, 1u64, 0u64);
    qs.iter()
        .take(count)
        .map(|&a| {
            let (r, s) = (a * r1 + r0, a * s1 + s0);
            (r0, s0, r1, s1) = (r1, s1, r, s);
            (r, s)
        })
        .collect()
}

#[test]
fn convergents_of_log2_log3() {
    let rep = cf_convergents(2, 3, 9, &Limits::default()).unwrap();
    let got: Vec<(String, String)> = rep.convergents.iter().map(|c| (c.r.clone(), c.s.clone())).collect();
    assert!(got.contains(&("12".into(), "19".into())));
    assert!(got.contains(&("306".into(), "485".into())));
    assert_eq!(got[5], ("12".into(), "19".into()));
    assert_eq!(got[8], ("306".into(), "485".into()));
    let oracle = stern_brocot_convergents(9);
    for (c, (r, s)) in rep.convergents.iter().zip(&oracle) {
        assert_eq!((c.r.clone(), c.s.clone()), (r.to_string(), s.to_string()));
    }
    assert!(rep.convergents.iter().all(|c| c.law_holds));
    assert_eq!(rep.quotients, rep.previous_quotients);
    assert_eq!(rep.precision, 2 * rep.previous_precision);
    let six = cf_convergents(2, 3, 6, &Limits::default()).unwrap();
    assert_eq!(six.convergents.last().unwrap().s, "19");
}

#[test]
fn convergents_long_run() {
    let rep = cf_convergents(2, 3, 60, &Limits::default()).unwrap();
    assert_eq!(rep.convergents.len(), 60);
    assert!(rep.convergents.iter().all(|c| c.law_holds));
    let oracle = stern_brocot_convergents(14);
    for (c, (r, s)) in rep.convergents.iter().zip(&oracle) {
        assert_eq!((c.r.clone(), c.s.clone()), (r.to_string(), s.to_string()));
    }
}

#[test]
fn convergents_reject_bad_pairs() {
    assert!(cf_convergents(2, 2, 5, &Limits::default()).is_err());
    assert!(cf_convergents(3, 2, 5, &Limits::default()).is_err());
    assert!(cf_convergents(2, 9, 5, &Limits::default()).is_err());
    assert!(cf_convergents(2, 3, 61, &Limits::default()).is_err());
    let tight = Limits { max_precision: 64, ..Limits::default() };
    assert!(matches!(
        cf_convergents(2, 3, 40, &tight),
        Err(crate::Error::PrecisionCeilingReached { .. })
    ));
}

#[test]
fn certified_quotients_stop_at_boundaries() {
    // [0.49, 0.51] straddles 1/2 after one step: a_0 = 0, then [1.96, 2.04]
    let x = crate::real::Interval::from_raw(BigInt::from(49), BigInt::from(51), 0);
    let x = x.with_prec(16).mul_rational(&q(1, 100));
    assert_eq!(certified_quotients(&x, 5), vec![BigInt::from(0)]);
}

#[test]
fn gouillon_values() {
    let g = gouillon_a(2, 3).unwrap();
    assert!(g.value.starts_with("40451.783"));
    assert_eq!(g.value.len(), 11);
    assert_eq!(g.c0, "1/40452");
    assert_eq!(g.c0_exact, q(1, 40452));
    assert_eq!(g.display(8).unwrap(), "40451.783...");
    // 36820.8·log 5 and 36820.8·log 3·log 5
    assert_eq!(gouillon_a(2, 5).unwrap().value, "59260.79148");
    assert_eq!(gouillon_a(3, 5).unwrap().value, "65104.63376");
    assert!(gouillon_a(3, 3).is_err());
    assert!(gouillon_a(4, 5).is_err());
}

#[test]
fn linear_form_values() {
    let lf = linear_form(12, 19, 2, 3, &Limits::default()).unwrap();
    let reference = ln_rational(&q(531441, 524288), 400);
    assert!(lf.enclosure.lower() <= reference.lower() && reference.upper() <= lf.enclosure.upper());
    let rel = lf.enclosure.relative_width().unwrap();
    assert!(rel <= BigRational::new(BigInt::one(), BigInt::one() << 64u32));
    assert!(lf.value.starts_with("0.01355"));
    assert!(lf.exponent.as_ref().unwrap().starts_with("-1.4"));
    let one = linear_form(1, 1, 2, 3, &Limits::default()).unwrap();
    assert!(one.value.starts_with("0.405465"));
    assert!(one.exponent.is_none());
    assert!(linear_form(0, 1, 2, 3, &Limits::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stream_strictly_increasing(mask in 1u8..64, n in 1u64..20_000) {
        let all = [2u64, 3, 5, 7, 11, 13];
        let ps: Vec<u64> = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let v = values(&ps, n);
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(v, sieve_oracle(&ps, n));
    }

    #[test]
    fn convergent_law(pi in 0usize..5, di in 1usize..5, count in 1usize..25) {
        let primes = [2u64, 3, 5, 7, 11, 13];
        let (p, q) = (primes[pi], primes[(pi + di).min(5)]);
        prop_assume!(p < q);
        let rep = cf_convergents(p, q, count, &Limits::default()).unwrap();
        prop_assert!(rep.convergents.iter().all(|c| c.law_holds));
        prop_assert_eq!(&rep.quotients, &rep.previous_quotients);
        let mut last = BigInt::from(0);
        for c in &rep.convergents[1..] {
            prop_assert!(c.den > last);
            last = c.den.clone();
        }
    }

    #[test]
    fn linear_form_width(r in 1u64..5000, s in 1u64..5000) {
        let lf = linear_form(r, s, 2, 3, &Limits::default()).unwrap();
        let rel = lf.enclosure.relative_width().unwrap();
        prop_assert!(rel <= BigRational::new(BigInt::one(), BigInt::one() << 64u32));
    }
}

