use num_bigint::BigInt;

use super::*;
use crate::arith::{ExactNumber, QuadField};

fn ints(v: &[i64]) -> Vec<ExactNumber> {
    v.iter().map(|&x| ExactNumber::int(x)).collect()
}

fn q(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}

fn lim() -> Limits {
    Limits::default()
}

/// Independent check: does any nonzero `k` with `|k|∞ ≤ s` satisfy `v^k = 1`?
/// Works on exact rationals by brute force.
fn brute_dependent(v: &[i64], s: i64) -> bool {
    let n = v.len();
    let mut k = vec![-s; n];
    loop {
        if k.iter().any(|&x| x != 0) {
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for (&x, &e) in v.iter().zip(&k) {
                let p = BigInt::from(x).pow(e.unsigned_abs() as u32);
                if e >= 0 {
                    num *= p;
                } else {
                    den *= p;
                }
            }
            if num == den {
                return true;
            }
        }
        let mut i = 0;
        while i < n {
            if k[i] < s {
                k[i] += 1;
                break;
            }
            k[i] = -s;
            i += 1;
        }
        if i == n {
            return false;
        }
    }
}

#[test]
fn kernel_examples() {
    let e = ExponentMatrix::from_vector(&ints(&[4, 8]), &lim()).unwrap();
    assert_eq!(integer_kernel(&e), vec![vec![3, -2]]);
    let e = ExponentMatrix::from_vector(&ints(&[2, 3]), &lim()).unwrap();
    assert!(integer_kernel(&e).is_empty());
    let e = ExponentMatrix::from_vector(&ints(&[6, 10, 15]), &lim()).unwrap();
    assert!(integer_kernel(&e).is_empty());
    let empty = ExponentMatrix::from_columns(vec![vec![], vec![], vec![]]);
    assert_eq!(integer_kernel(&empty).len(), 3);
}

#[test]
fn dependence_examples() {
    let (d, w) = is_dependent(&ints(&[2, 4]), &lim()).unwrap();
    assert!(d);
    assert_eq!(w.unwrap().k, vec![2, -1]);
    let (_, w) = is_dependent(&ints(&[1, 7]), &lim()).unwrap();
    assert_eq!(w.unwrap().k, vec![1, 0]);
    let (_, w) = is_dependent(&ints(&[2, -2]), &lim()).unwrap();
    let w = w.unwrap();
    assert_eq!(w.k, vec![2, -2]);
    assert_eq!(w.unit_multiple, 2);
    let (d, w) = is_dependent(&ints(&[2, 3]), &lim()).unwrap();
    assert!(!d && w.is_none());
}

#[test]
fn dependence_errors() {
    assert_eq!(is_dependent(&ints(&[2, 0]), &lim()), Err(Error::ZeroCoordinate(1)));
    let mixed = vec![ExactNumber::int(2), ExactNumber::gaussian(1, 1)];
    assert_eq!(is_dependent(&mixed, &lim()), Err(Error::MixedRings));
    assert_eq!(minimal_witness(&ints(&[2, 3]), &lim()), Err(Error::NotDependent));
}

#[test]
fn gaussian_torsion() {
    // i is a root of unity of order 4; its witness is (4, 0)
    let v = vec![ExactNumber::gaussian(0, 1), ExactNumber::gaussian(3, 0)];
    let (_, w) = is_dependent(&v, &lim()).unwrap();
    assert_eq!(w.unwrap().k, vec![4, 0]);
    // (1+i)^2 = 2i, so (1+i)^4 = -4: witness (4, -1)
    let v = vec![ExactNumber::gaussian(1, 1), ExactNumber::gaussian(-4, 0)];
    let (_, w) = is_dependent(&v, &lim()).unwrap();
    assert_eq!(w.unwrap().k, vec![4, -1]);
    // order-3 residual character in Z[w]: w = ω has unit index 2
    let v = vec![ExactNumber::eisenstein_omega(0, 1), ExactNumber::eisenstein_omega(2, 0)];
    let (_, w) = is_dependent(&v, &lim()).unwrap();
    let w = w.unwrap();
    assert_eq!(w.k, vec![3, 0]);
    assert_eq!(w.unit_multiple, 3);
}

#[test]
fn minimal_witness_examples() {
    assert_eq!(minimal_witness(&ints(&[4, 8]), &lim()).unwrap().k, vec![3, -2]);
    assert_eq!(minimal_witness(&ints(&[9, 27]), &lim()).unwrap().k, vec![3, -2]);
    let w = minimal_witness(&ints(&[2, 2, 4]), &lim()).unwrap();
    assert_eq!(w.k, vec![1, 1, -1]);
    // the other sup-norm-1 witness is also valid
    let other = ExactNumber::product_of_powers(&ints(&[2, 2, 4]), &[1, -1, 0]).unwrap();
    assert!(other.is_one());
    assert_eq!(minimal_witness(&ints(&[-2, 4]), &lim()).unwrap().k, vec![2, -1]);
    assert_eq!(minimal_witness(&ints(&[2, -2]), &lim()).unwrap().k, vec![2, -2]);
}

#[test]
fn minimal_witness_matches_exhaustive_search() {
    // independent exhaustive search over the cube of the returned sup-norm
    for v in [[12i64, 18, 8], [6, 4, 9], [-8, 4, 2], [16, -8, 32], [10, 4, 25]] {
        let w = minimal_witness(&ints(&v), &lim()).unwrap();
        let s = w.sup_norm() as i64;
        assert!(ExactNumber::product_of_powers(&ints(&v), &w.k).unwrap().is_one());
        if s > 1 {
            assert!(!brute_dependent(&v, s - 1), "{v:?} has a smaller witness than {:?}", w.k);
        }
    }
}

#[test]
fn oracle_equivalence_pairs() {
    for a in -20i64..=20 {
        for b in -20i64..=20 {
            if a == 0 || b == 0 {
                continue;
            }
            let (d, _) = is_dependent(&ints(&[a, b]), &lim()).unwrap();
            assert_eq!(d, brute_dependent(&[a, b], 8), "({a}, {b})");
        }
    }
}

#[test]
fn oracle_equivalence_triples_sample() {
    let vals = [-20i64, -16, -12, -9, -8, -6, -4, -3, -2, -1, 1, 2, 3, 4, 5, 6, 8, 9, 12, 16, 18, 20];
    for (i, &a) in vals.iter().enumerate() {
        for &b in &vals[i..] {
            for &c in [3i64, -4, 7, 12, 20].iter() {
                let v = [a, b, c];
                let (d, _) = is_dependent(&ints(&v), &lim()).unwrap();
                if brute_dependent(&v, 8) {
                    assert!(d, "{v:?}");
                } else if d {
                    // some triples only admit larger witnesses, e.g. (-16, 18, 3)
                    // needs (2, -8, 16); confirm at the witness's own radius
                    let s = minimal_witness(&ints(&v), &lim()).unwrap().sup_norm() as i64;
                    assert!(s > 8 && brute_dependent(&v, s), "{v:?}");
                }
            }
        }
    }
}

#[test]
fn power_products_agree_with_expanded_vectors() {
    let t = ExactNumber::Quadratic(crate::arith::QuadRat::gaussian(q(3, 5), q(4, 7)));
    let bases = vec![t.clone(), ExactNumber::gaussian(1, 1)];
    for exps in [vec![vec![3, 0], vec![-5, 0]], vec![vec![2, 1], vec![0, 3]], vec![vec![0, 4], vec![0, -2]]] {
        let v: Vec<ExactNumber> =
            exps.iter().map(|row| ExactNumber::product_of_powers(&bases, row).unwrap()).collect();
        let direct = is_dependent(&v, &lim()).unwrap().0;
        let (dep, wit) = is_dependent_powers(&bases, &exps, &lim()).unwrap();
        assert_eq!(dep, direct, "{exps:?}");
        if let Some(w) = wit {
            assert!(ExactNumber::product_of_powers(&v, &w.k).unwrap().is_one());
        }
    }
    // t^(10^8) against t^(3·10^7): never expanded
    let (dep, wit) = is_dependent_powers(&bases[..1], &[vec![100_000_000], vec![30_000_000]], &lim()).unwrap();
    assert!(dep);
    assert_eq!(wit.unwrap().k, vec![3, -10]);
}

#[test]
fn mult2_examples() {
    let d = mult2_decompose(&ExactNumber::int(4), &ExactNumber::int(8), &lim()).unwrap();
    assert_eq!((d.gamma.to_string(), d.l, d.m), ("2".into(), 2, 3));
    assert!(d.eta1.is_one() && d.eta2.is_one());
    let d = mult2_decompose(&ExactNumber::gaussian(0, 2), &ExactNumber::gaussian(-4, 0), &lim()).unwrap();
    assert_eq!(d.gamma, ExactNumber::gaussian(1, 1));
    assert_eq!((d.l, d.m), (2, 4));
    assert!(d.eta1.is_one() && d.eta2.is_one());
    let d = mult2_decompose(&ExactNumber::ratio(8, 27), &ExactNumber::ratio(4, 9), &lim()).unwrap();
    assert_eq!((d.gamma, d.l, d.m), (ExactNumber::ratio(2, 3), 3, 2));
    let d = mult2_decompose(&ExactNumber::int(-8), &ExactNumber::ratio(1, 4), &lim()).unwrap();
    assert_eq!((d.gamma.clone(), d.l, d.m), (ExactNumber::int(2), 3, -2));
    assert_eq!(d.eta1, ExactNumber::int(-1));
}

#[test]
fn mult2_errors() {
    let l = lim();
    assert_eq!(mult2_decompose(&ExactNumber::int(2), &ExactNumber::int(3), &l), Err(Error::NotDependent));
    assert_eq!(mult2_decompose(&ExactNumber::int(-1), &ExactNumber::int(3), &l), Err(Error::RootOfUnityInput));
    let eis = mult2_decompose(
        &ExactNumber::eisenstein_omega(2, 1).pow(3),
        &ExactNumber::eisenstein_omega(2, 1).pow(-2).mul(&ExactNumber::eisenstein_omega(0, 1)).unwrap(),
        &l,
    )
    .unwrap();
    assert_eq!((eis.l, eis.m), (3, -2));
    let _ = QuadField::Eisenstein;
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn coord() -> impl Strategy<Value = i64> {
        prop_oneof![-30i64..=-1, 1i64..=30]
    }

    proptest! {
        #[test]
        fn witness_is_valid(v in prop::collection::vec(coord(), 2..5)) {
            let (d, w) = is_dependent(&ints(&v), &lim()).unwrap();
            if let Some(w) = w {
                prop_assert!(d);
                prop_assert!(ExactNumber::product_of_powers(&ints(&v), &w.k).unwrap().is_one());
            }
        }

        #[test]
        fn permutation_invariance(v in prop::collection::vec(coord(), 2..5), rot in 0usize..4) {
            let mut p = v.clone();
            let r = rot % p.len();
            p.rotate_left(r);
            let (d1, w1) = is_dependent(&ints(&v), &lim()).unwrap();
            let (d2, w2) = is_dependent(&ints(&p), &lim()).unwrap();
            prop_assert_eq!(d1, d2);
            if let (Some(w1), Some(w2)) = (w1, w2) {
                let mut moved = w1.k.clone();
                moved.rotate_left(r);
                prop_assert!(ExactNumber::product_of_powers(&ints(&p), &moved).unwrap().is_one());
                let e = ExponentMatrix::from_vector(&ints(&v), &lim()).unwrap();
                if integer_kernel(&e).len() == 1 {
                    let neg: Vec<i64> = moved.iter().map(|x| -x).collect();
                    prop_assert!(w2.k == moved || w2.k == neg);
                }
            }
        }

        #[test]
        fn inversion_invariance(v in prop::collection::vec(coord(), 2..4), j in 0usize..3) {
            let j = j % v.len();
            let mut inv = ints(&v);
            inv[j] = ExactNumber::ratio(1, v[j]);
            let (d1, w1) = is_dependent(&ints(&v), &lim()).unwrap();
            let (d2, _) = is_dependent(&inv, &lim()).unwrap();
            prop_assert_eq!(d1, d2);
            if let Some(w1) = w1 {
                let mut k = w1.k.clone();
                k[j] = -k[j];
                prop_assert!(ExactNumber::product_of_powers(&inv, &k).unwrap().is_one());
            }
        }

        #[test]
        fn extension_monotonicity(v in prop::collection::vec(coord(), 2..4), extra in coord()) {
            let (d, w) = is_dependent(&ints(&v), &lim()).unwrap();
            if d {
                let mut ext = v.clone();
                ext.push(extra);
                let (d2, _) = is_dependent(&ints(&ext), &lim()).unwrap();
                prop_assert!(d2);
                let mut k = w.unwrap().k;
                k.push(0);
                prop_assert!(ExactNumber::product_of_powers(&ints(&ext), &k).unwrap().is_one());
            }
        }

        #[test]
        fn decomposition_recombines(base in 2i64..12, sign in prop::bool::ANY, l in 1i64..5, m in -5i64..5) {
            prop_assume!(m != 0);
            let g = ExactNumber::int(base);
            let a = if sign { g.pow(l).mul(&ExactNumber::int(-1)).unwrap() } else { g.pow(l) };
            let b = g.pow(m);
            let d = mult2_decompose(&a, &b, &lim()).unwrap();
            prop_assert_eq!(d.eta1.mul(&d.gamma.pow(d.l)).unwrap(), a);
            prop_assert_eq!(d.eta2.mul(&d.gamma.pow(d.m)).unwrap(), b);
        }

        #[test]
        fn gaussian_decomposition_recombines(x in -6i64..7, y in -6i64..7, l in 1i64..4, m in -4i64..4, u in 0u32..4) {
            let g = ExactNumber::gaussian(x, y);
            prop_assume!(!g.is_zero() && g.norm() > num_rational::BigRational::from_integer(1.into()) && m != 0);
            let unit = ExactNumber::Quadratic(crate::arith::QuadInt::unit(QuadField::Gaussian, u).to_quad_rat());
            let a = g.pow(l).mul(&unit).unwrap();
            let b = g.pow(m);
            let d = mult2_decompose(&a, &b, &lim()).unwrap();
            prop_assert_eq!(d.eta1.mul(&d.gamma.pow(d.l)).unwrap(), a);
            prop_assert_eq!(d.eta2.mul(&d.gamma.pow(d.m)).unwrap(), b);
        }
    }
}
