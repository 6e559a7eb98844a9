use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Closed interval `[lo, hi] · 2^{-prec}` with integer endpoints.
///
/// Every operation rounds outward, so the exact result of the corresponding
/// real operation always lies inside the returned interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

pub(crate) fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << s))
}

pub(crate) fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -((-x).div_floor(&(BigInt::one() << s)))
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, prec }
    }

    /// The interval `[m − err, m + err]` at scale `prec`.
    pub fn around(m: BigInt, err: u64, prec: u32) -> Self {
        Interval { lo: &m - err, hi: m + err, prec }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        let v: BigInt = n.into() << prec;
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::from_int(0, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let lo = scaled.div_floor(r.denom());
        let hi = ceil_div(&scaled, r.denom());
        Interval { lo, hi, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec)
    }

    pub fn mid_f64(&self) -> f64 {
        let m = BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.prec + 1));
        m.to_f64().unwrap_or(f64::NAN)
    }

    /// Re-expresses at another scale, rounding outward when coarsening.
    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Interval { lo: &self.lo << s, hi: &self.hi << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Interval { lo: floor_shr(&self.lo, s), hi: ceil_shr(&self.hi, s), prec }
            }
        }
    }

    fn align(&self, o: &Interval) -> (Interval, Interval) {
        let p = self.prec.max(o.prec);
        (self.with_prec(p), o.with_prec(p))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let (a, b) = self.align(o);
        Interval { lo: a.lo + b.lo, hi: a.hi + b.hi, prec: a.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let (a, b) = self.align(o);
        Interval { lo: a.lo - b.hi, hi: a.hi - b.lo, prec: a.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add_rational(&self, r: &BigRational) -> Interval {
        self.add(&Interval::from_rational(r, self.prec))
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let (a, b) = self.align(o);
        let p = a.prec;
        let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let mn = prods.iter().min().unwrap();
        let mx = prods.iter().max().unwrap();
        Interval { lo: floor_shr(mn, p), hi: ceil_shr(mx, p), prec: p }
    }

    pub fn sqr(&self) -> Interval {
        let p = self.prec;
        let (a2, b2) = (&self.lo * &self.lo, &self.hi * &self.hi);
        if self.contains_zero() {
            Interval { lo: BigInt::zero(), hi: ceil_shr(&(a2.max(b2)), p), prec: p }
        } else {
            let (mn, mx) = if a2 < b2 { (a2, b2) } else { (b2, a2) };
            Interval { lo: floor_shr(&mn, p), hi: ceil_shr(&mx, p), prec: p }
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (x, y) = (&self.lo * k, &self.hi * k);
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        Interval { lo, hi, prec: self.prec }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Interval {
        self.mul(&Interval::from_rational(r, self.prec))
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(k.is_positive());
        Interval { lo: self.lo.div_floor(k), hi: ceil_div(&self.hi, k), prec: self.prec }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let (a, b) = self.align(o);
        let p = a.prec;
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for x in [&a.lo, &a.hi] {
            for y in [&b.lo, &b.hi] {
                let num = x << p;
                let f = num.div_floor(y);
                let c = ceil_div(&num, y);
                lo = Some(match lo {
                    Some(l) if l <= f => l,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(h) if h >= c => h,
                    _ => c,
                });
            }
        }
        Some(Interval { lo: lo.unwrap(), hi: hi.unwrap(), prec: p })
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval { lo: BigInt::zero(), hi: (-&self.lo).max(self.hi.clone()), prec: self.prec }
        } else if self.hi.is_positive() || self.hi.is_zero() && !self.lo.is_negative() {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn pow(&self, mut e: u64) -> Interval {
        let mut base = self.clone();
        let mut acc = Interval::from_int(1, self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `Some(Less)` when the whole interval lies strictly below `r`,
    /// `Some(Greater)` when strictly above, `None` when undecided.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        if self.upper() < *r {
            Some(Ordering::Less)
        } else if self.lower() > *r {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && self.lower() == *r {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn cmp_interval(&self, o: &Interval) -> Option<Ordering> {
        let (a, b) = self.align(o);
        if a.hi < b.lo {
            Some(Ordering::Less)
        } else if a.lo > b.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified floor, if both endpoints agree.
    pub fn floor(&self) -> Option<BigInt> {
        let a = floor_shr(&self.lo, self.prec);
        let b = floor_shr(&self.hi, self.prec);
        (a == b).then_some(a)
    }

    /// Certified nearest integer, if both endpoints round the same way.
    pub fn round(&self) -> Option<BigInt> {
        let half = BigInt::one() << self.prec.saturating_sub(1);
        let a = floor_shr(&(&self.lo + &half), self.prec);
        let b = floor_shr(&(&self.hi + &half), self.prec);
        (a == b).then_some(a)
    }

    /// Fractional part, when the floor is certified.
    pub fn fract(&self) -> Option<Interval> {
        let f = self.floor()?;
        let shift = f << self.prec;
        Some(Interval { lo: &self.lo - &shift, hi: &self.hi - &shift, prec: self.prec })
    }

    /// `hi − lo` measured in units of `2^{-prec}`.
    pub fn ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// Relative width bound `width / min|x|`; `None` if the interval meets zero.
    pub fn relative_width(&self) -> Option<BigRational> {
        if self.contains_zero() {
            return None;
        }
        let m = self.lo.abs().min(self.hi.abs());
        Some(BigRational::new(self.ulps(), m))
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        let (a, b) = self.align(o);
        Interval { lo: a.lo.min(b.lo), hi: a.hi.max(b.hi), prec: a.prec }
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lower() <= *r && *r <= self.upper()
    }
}
