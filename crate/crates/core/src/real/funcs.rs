//! Elementary functions on certified intervals.
//!
//! Series are summed in fixed point with a few guard bits; every truncated
//! division contributes at most one unit in the last place, and the tally
//! of those units widens the final interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{ceil_div, Interval};

fn bits(x: &BigInt) -> u32 {
    x.bits() as u32
}

/// `atanh(z)` with `z = num/den` exactly, `|z| ≤ 1/2`, at scale `wp`.
/// Returns the sum and an error bound in ulps.
fn atanh_fixed(num: &BigInt, den: &BigInt, wp: u32) -> (BigInt, u64) {
    if num.is_zero() {
        return (BigInt::zero(), 0);
    }
    let neg = num.is_negative();
    let num = num.abs();
    // power = z^{2k+1} · 2^wp, z2 = z^2 exactly as a fraction
    let z2n = &num * &num;
    let z2d = den * den;
    let mut power = (&num << wp).div_floor(den);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut err: u64 = 1;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = (&power * &z2n).div_floor(&z2d);
        k += 1;
        err += 2;
    }
    // geometric tail below one ulp, plus truncation of the leading term
    err += 2;
    if neg {
        (-sum, err)
    } else {
        (sum, err)
    }
}

fn ln2_fixed(wp: u32) -> (BigInt, u64) {
    let (s, e) = atanh_fixed(&BigInt::one(), &BigInt::from(3), wp);
    (s << 1, 2 * e)
}

/// `ln 2` to `prec` bits.
pub fn ln2(prec: u32) -> Interval {
    let wp = prec + 16;
    let (s, e) = ln2_fixed(wp);
    Interval::around(s, e, wp).with_prec(prec)
}

/// Natural log of a positive rational.
pub fn ln_rational(r: &BigRational, prec: u32) -> Interval {
    assert!(r.is_positive(), "ln of non-positive value");
    if r.is_one() {
        return Interval::zero(prec);
    }
    let (n, d) = (r.numer(), r.denom());
    let mut k = n.bits() as i64 - d.bits() as i64;
    // y = r / 2^k, brought into [2/3, 4/3]
    let y = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::new(n.clone(), d << k as u32)
        } else {
            BigRational::new(n << (-k) as u32, d.clone())
        }
    };
    let mut yv = y(k);
    let four_thirds = BigRational::new(4.into(), 3.into());
    let two_thirds = BigRational::new(2.into(), 3.into());
    while yv > four_thirds {
        k += 1;
        yv = y(k);
    }
    while yv < two_thirds {
        k -= 1;
        yv = y(k);
    }
    let kb = BigInt::from(k);
    let wp = prec + 24 + bits(&kb) + bits(&BigInt::from(prec.max(1)));
    let zn = yv.numer() - yv.denom();
    let zd = yv.numer() + yv.denom();
    let (s, e) = atanh_fixed(&zn, &zd, wp);
    let ln_y = Interval::around(s << 1, 2 * e + 2, wp);
    let (l2, e2) = ln2_fixed(wp);
    let k_ln2 = Interval::around(l2, e2, wp).mul_int(&kb);
    ln_y.add(&k_ln2).with_prec(prec)
}

/// Natural log of a strictly positive interval; `None` otherwise.
pub fn ln(x: &Interval) -> Option<Interval> {
    if !x.is_positive() {
        return None;
    }
    let p = x.prec();
    let lo = ln_rational(&x.lower(), p + 8);
    let hi = ln_rational(&x.upper(), p + 8);
    Some(Interval::from_raw(lo.lo_raw().clone(), hi.hi_raw().clone(), p + 8).with_prec(p))
}

fn atan_inv_fixed(n: u64, wp: u32) -> (BigInt, u64) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = (BigInt::one() << wp) / &n;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut err: u64 = 1;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &n2;
        k += 1;
        err += 2;
    }
    (sum, err + 1)
}

/// π to `prec` bits (Machin's formula).
pub fn pi(prec: u32) -> Interval {
    let wp = prec + 20;
    let (a, ea) = atan_inv_fixed(5, wp);
    let (b, eb) = atan_inv_fixed(239, wp);
    let ia = Interval::around(a, ea, wp).mul_int(&BigInt::from(16));
    let ib = Interval::around(b, eb, wp).mul_int(&BigInt::from(4));
    ia.sub(&ib).with_prec(prec)
}

/// `exp(x)` for an exactly given `x = m / 2^s`.
fn exp_dyadic(m: &BigInt, s: u32, prec: u32) -> Interval {
    if m.is_zero() {
        return Interval::from_int(1, prec);
    }
    // reduce to |y| ≤ 1/2 by halving r times: y = m / 2^{s+r}
    let mag = bits(m) as i64 - s as i64;
    let r: u32 = if mag >= 0 { (mag + 1) as u32 } else { 0 };
    let wp = prec + 2 * r + 32 + bits(&BigInt::from(prec));
    let total = s + r;
    // y · 2^wp, exact when wp ≥ total, otherwise floor with one ulp error
    let (y, mut err) = if wp >= total {
        (m << (wp - total), 0u64)
    } else {
        (m.div_floor(&(BigInt::one() << (total - wp))), 1u64)
    };
    let one = BigInt::one() << wp;
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k: u64 = 1;
    loop {
        term = (&term * &y).div_floor(&(&one * BigInt::from(k)));
        if term.is_zero() || (term.abs() == BigInt::one() && k > 4) {
            err += 4;
            break;
        }
        sum += &term;
        err += 2;
        k += 1;
    }
    let mut acc = Interval::around(sum, err, wp);
    for _ in 0..r {
        acc = acc.sqr();
    }
    acc.with_prec(prec)
}

/// `exp` of an interval (monotone, so endpoints suffice).
pub fn exp(x: &Interval) -> Interval {
    let p = x.prec();
    let lo = exp_dyadic(x.lo_raw(), p, p + 8);
    let hi = exp_dyadic(x.hi_raw(), p, p + 8);
    Interval::from_raw(lo.lo_raw().clone(), hi.hi_raw().clone(), p + 8).with_prec(p)
}

pub fn exp_rational(r: &BigRational, prec: u32) -> Interval {
    exp(&Interval::from_rational(r, prec + 16)).with_prec(prec)
}

/// `(sin x, cos x)` for an exactly given `x = m / 2^s`.
fn sin_cos_dyadic(m: &BigInt, s: u32, prec: u32) -> (Interval, Interval) {
    let mag = bits(m) as i64 - s as i64;
    let r: u32 = if mag >= -1 { (mag + 2) as u32 } else { 0 };
    let wp = prec + 2 * r + 32 + bits(&BigInt::from(prec));
    let total = s + r;
    let (y, mut err) = if wp >= total {
        (m << (wp - total), 0u64)
    } else {
        (m.div_floor(&(BigInt::one() << (total - wp))), 1u64)
    };
    let one = BigInt::one() << wp;
    let mut sin = BigInt::zero();
    let mut cos = BigInt::zero();
    let mut term = one.clone();
    let mut k: u64 = 0;
    loop {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = (&term * &y).div_floor(&(&one * BigInt::from(k)));
        err += 2;
        if term.is_zero() || (term.abs() == BigInt::one() && k > 4) {
            err += 4;
            break;
        }
    }
    let mut si = Interval::around(sin, err, wp);
    let mut co = Interval::around(cos, err, wp);
    let two = BigInt::from(2);
    let one_i = Interval::from_int(1, wp);
    for _ in 0..r {
        let s2 = si.mul(&co).mul_int(&two);
        let c2 = one_i.sub(&si.sqr().mul_int(&two));
        si = s2;
        co = c2;
    }
    (si.with_prec(prec), co.with_prec(prec))
}

/// `(sin x, cos x)` over an interval, widened by its radius (both are 1-Lipschitz).
pub fn sin_cos(x: &Interval) -> (Interval, Interval) {
    let p = x.prec();
    let mid2 = x.lo_raw() + x.hi_raw();
    let rad = ceil_div(&(x.hi_raw() - x.lo_raw()), &BigInt::from(2)) + 1;
    let (s, c) = sin_cos_dyadic(&mid2, p + 1, p + 8);
    let widen = Interval::from_raw(-&rad, rad, p);
    (s.add(&widen).with_prec(p), c.add(&widen).with_prec(p))
}

/// `√r` for `r ≥ 0`.
pub fn sqrt_rational(r: &BigRational, prec: u32) -> Interval {
    assert!(!r.is_negative());
    let t = (r.numer() << (2 * prec)).div_floor(r.denom());
    let lo = t.sqrt();
    let exact = &lo * &lo == t && (r.numer() << (2 * prec)).is_multiple_of(r.denom());
    let hi = if exact { lo.clone() } else { &lo + 1 };
    Interval::from_raw(lo, hi, prec)
}

/// `√x` for an interval with non-negative lower end.
pub fn sqrt(x: &Interval) -> Option<Interval> {
    if x.lo_raw().is_negative() {
        return None;
    }
    let p = x.prec();
    let lo = sqrt_rational(&x.lower(), p);
    let hi = sqrt_rational(&x.upper(), p);
    Some(Interval::from_raw(lo.lo_raw().clone(), hi.hi_raw().clone(), p))
}

/// Real cube root of a rational.
pub fn cbrt_rational(r: &BigRational, prec: u32) -> Interval {
    if r.is_negative() {
        return cbrt_rational(&-r, prec).neg();
    }
    let scaled = r.numer() << (3 * prec);
    let t = scaled.div_floor(r.denom());
    let lo = t.cbrt();
    let exact = &lo * &lo * &lo == t && scaled.is_multiple_of(r.denom());
    let hi = if exact { lo.clone() } else { &lo + 1 };
    Interval::from_raw(lo, hi, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn close(i: &Interval, v: f64) {
        let m = i.mid_f64();
        assert!((m - v).abs() <= 1e-12 * v.abs().max(1.0), "{m} vs {v}");
        assert!(i.width().to_f64().unwrap() < 1e-15 * v.abs().max(1.0));
    }

    #[test]
    fn constants_and_logs() {
        close(&ln2(80), std::f64::consts::LN_2);
        close(&pi(80), std::f64::consts::PI);
        close(&ln_rational(&r(3, 1), 80), 3f64.ln());
        close(&ln_rational(&r(1, 1000), 80), (0.001f64).ln());
        close(&ln_rational(&r(123456789, 7), 80), (123456789f64 / 7.0).ln());
        // 100-digit reference for ln 3
        let ln3 = ln_rational(&r(3, 1), 340);
        let reference = BigRational::new(
            "10986122886681096913952452369225257046474905578227494517"
                .parse()
                .unwrap(),
            BigInt::from(10).pow(55),
        );
        assert!((ln3.lower() - &reference).abs() < BigRational::new(1.into(), BigInt::from(10).pow(54)));
    }

    #[test]
    fn exponentials_and_trig() {
        close(&exp_rational(&r(1, 1), 80), std::f64::consts::E);
        close(&exp_rational(&r(-5, 2), 80), (-2.5f64).exp());
        close(&exp_rational(&r(40, 1), 80), 40f64.exp());
        let x = Interval::from_rational(&r(2, 1), 80);
        let (s, c) = sin_cos(&x);
        close(&s, 2f64.sin());
        close(&c, 2f64.cos());
        let tp = pi(90).mul_int(&BigInt::from(2)).div_int(&BigInt::from(7));
        let (s, c) = sin_cos(&tp);
        close(&s, (2.0 * std::f64::consts::PI / 7.0).sin());
        close(&c, (2.0 * std::f64::consts::PI / 7.0).cos());
    }

    #[test]
    fn roots() {
        close(&sqrt_rational(&r(2, 1), 80), 2f64.sqrt());
        close(&cbrt_rational(&r(2, 1), 80), 2f64.cbrt());
        close(&cbrt_rational(&r(-2, 1), 80), -(2f64.cbrt()));
        let four = sqrt_rational(&r(4, 1), 10);
        assert_eq!(four.lower(), r(2, 1));
        assert_eq!(four.upper(), r(2, 1));
    }

    #[test]
    fn ln_exp_round_trip() {
        for k in [1i64, 2, 7, 1000, 99991] {
            let l = ln_rational(&r(k, 1), 120);
            let back = exp(&l);
            assert!(back.contains_rational(&r(k, 1)), "k={k}");
        }
    }
}
