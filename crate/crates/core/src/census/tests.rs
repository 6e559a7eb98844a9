use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::arith::{ExactNumber, QuadField};
use crate::dependence::is_dependent;

fn lim() -> Limits {
    Limits::default()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Independent oracle: some `(k1, k2) ≠ 0` with `|k| ≤ 12` gives `a^k1 b^k2 = 1`.
fn brute_pair(a: i64, b: i64) -> bool {
    for k1 in 0..=12u32 {
        for k2 in -12i32..=12 {
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            let lhs = BigInt::from(a).pow(k1);
            let ok = if k2 < 0 {
                lhs == BigInt::from(b).pow(k2.unsigned_abs())
            } else {
                lhs * BigInt::from(b).pow(k2 as u32) == BigInt::from(1)
            };
            if ok {
                return true;
            }
        }
    }
    false
}

#[test]
fn small_counts() {
    for (h, c) in [(1, 4), (2, 16), (3, 28)] {
        assert_eq!(count_mn_z(2, h, &lim(), None).unwrap().count, c);
    }
}

#[test]
fn pair_count_matches_naive_oracle() {
    let hmax = 50i64;
    let mut dep = Vec::new();
    for a in -hmax..=hmax {
        for b in -hmax..=hmax {
            if a != 0 && b != 0 && brute_pair(a, b) {
                dep.push((a.abs().max(b.abs())) as u64);
            }
        }
    }
    let memo = ExponentMemo::new(hmax as u64);
    for h in 1..=hmax as u64 {
        let naive = dep.iter().filter(|&&m| m <= h).count() as u64;
        assert_eq!(count_pairs(h), naive, "H={h}");
        assert_eq!(count_by_rank(2, h, &memo), naive, "rank path H={h}");
    }
}

#[test]
fn triple_count_matches_dependence_module() {
    for h in 1..=4i64 {
        let mut naive = 0u64;
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if a * b * c == 0 {
                        continue;
                    }
                    let v = [ExactNumber::int(a), ExactNumber::int(b), ExactNumber::int(c)];
                    if is_dependent(&v, &lim()).unwrap().0 {
                        naive += 1;
                    }
                }
            }
        }
        assert_eq!(count_mn_z(3, h as u64, &lim(), None).unwrap().count, naive, "H={h}");
    }
}

#[test]
fn quadruple_rank_path_agrees_with_emission() {
    let memo = ExponentMemo::new(5);
    let mut seen = 0u64;
    let emitted = emit_lex(4, 5, &memo, &mut |_| seen += 1);
    assert_eq!(emitted, seen);
    assert_eq!(count_by_rank(4, 5, &memo), emitted);
}

#[test]
fn emission_is_lexicographic_and_sign_symmetric() {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let rep = count_mn_z(2, 6, &lim(), Some(&mut |v: &[i64]| out.push(v.to_vec()))).unwrap();
    assert_eq!(rep.count as usize, out.len());
    assert_eq!(rep.count, count_pairs(6));
    assert!(out.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(out[0], vec![-6, -6]);
    let set: std::collections::HashSet<Vec<i64>> = out.iter().cloned().collect();
    for v in &out {
        assert!(set.contains(&vec![-v[0], v[1]]) && set.contains(&vec![v[0], -v[1]]));
    }
}

#[test]
fn budget_is_enforced() {
    let tight = Limits::with_budget(1000);
    assert!(matches!(count_mn_z(3, 100, &tight, None), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn leading_terms() {
    let z = FieldSpec::Integers;
    assert_eq!(leading_term(2, &q(10), z, &lim()).unwrap().exact, Some(q(120)));
    assert_eq!(leading_term(3, &q(2), z, &lim()).unwrap().exact, Some(q(192)));
    let gi = leading_term(2, &q(10), FieldSpec::of(QuadField::Gaussian), &lim()).unwrap();
    // 12·100π
    assert!(gi.decimal.starts_with("3769.91118430775"), "{}", gi.decimal);
    let ew = leading_term(2, &q(10), FieldSpec::of(QuadField::Eisenstein), &lim()).unwrap();
    // 18·200π/√3
    let expect = 18.0 * 200.0 * std::f64::consts::PI / 3f64.sqrt();
    assert!((ew.value.mid_f64() - expect).abs() < 1e-9);
    assert!(matches!(
        leading_term(2, &q(10), FieldSpec::Imaginary { w: 2, d: -7 }, &lim()),
        Err(Error::UnsupportedField(_))
    ));
}

/// Exhaustive pair oracle over all ring integers of norm ≤ nmax via the
/// dependence module's kernel test.
fn ok_oracle(field: QuadField, nmax: i64) -> u64 {
    let r = (nmax as f64).sqrt() as i64 + 2;
    let mut elems = Vec::new();
    for x in -2 * r..=2 * r {
        for y in -2 * r..=2 * r {
            let z = crate::arith::QuadInt::new(field, x, y);
            if !z.is_zero() && z.norm() <= BigInt::from(nmax) {
                elems.push(ExactNumber::Quadratic(z.to_quad_rat()));
            }
        }
    }
    let mut count = 0;
    for a in &elems {
        for b in &elems {
            if is_dependent(&[a.clone(), b.clone()], &lim()).unwrap().0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn ok_counts() {
    assert_eq!(count_m2_ok(&q(1), QuadField::Gaussian, &lim()).unwrap().count, 16);
    assert_eq!(count_m2_ok(&q(1), QuadField::Eisenstein, &lim()).unwrap().count, 36);
    let two = count_m2_ok(&q(2), QuadField::Gaussian, &lim()).unwrap().count;
    assert_eq!(two, ok_oracle(QuadField::Gaussian, 4));
    assert_eq!(two, 144);
    assert_eq!(canonical_elements(QuadField::Gaussian, 4).len() * 4, 12);
    for (field, h) in [(QuadField::Gaussian, 3), (QuadField::Eisenstein, 2), (QuadField::Eisenstein, 3)] {
        let c = count_m2_ok(&q(h), field, &lim()).unwrap().count;
        assert_eq!(c, ok_oracle(field, h * h), "{field:?} H={h}");
    }
    let half = BigRational::new(5.into(), 2.into());
    assert_eq!(
        count_m2_ok(&half, QuadField::Gaussian, &lim()).unwrap().count,
        ok_oracle(QuadField::Gaussian, 6)
    );
}

#[test]
fn convergence_trend() {
    let ratios: Vec<f64> = [100u64, 1000, 10000]
        .iter()
        .map(|&h| count_mn_z(2, h, &lim(), None).unwrap().ratio.parse().unwrap())
        .collect();
    assert!(ratios[0] > ratios[1] && ratios[1] > ratios[2], "{ratios:?}");
    assert!((1.0..=1.05).contains(&ratios[2]), "{ratios:?}");
}
