use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact element `r + s·√d` of a real quadratic field, `d` squarefree > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub r: BigRational,
    pub s: BigRational,
    pub d: u32,
}

impl Surd {
    pub fn new(r: BigRational, s: BigRational, d: u32) -> Self {
        Surd { r, s, d }
    }

    pub fn rational(r: BigRational, d: u32) -> Self {
        Surd { r, s: BigRational::zero(), d }
    }

    pub fn root(d: u32) -> Self {
        Surd { r: BigRational::zero(), s: BigRational::from_integer(1.into()), d }
    }

    fn dd(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn add(&self, o: &Surd) -> Surd {
        assert_eq!(self.d, o.d);
        Surd { r: &self.r + &o.r, s: &self.s + &o.s, d: self.d }
    }

    pub fn sub(&self, o: &Surd) -> Surd {
        assert_eq!(self.d, o.d);
        Surd { r: &self.r - &o.r, s: &self.s - &o.s, d: self.d }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        assert_eq!(self.d, o.d);
        Surd {
            r: &self.r * &o.r + &self.s * &o.s * self.dd(),
            s: &self.r * &o.s + &self.s * &o.r,
            d: self.d,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Surd {
        Surd { r: &self.r * k, s: &self.s * k, d: self.d }
    }

    pub fn signum(&self) -> Ordering {
        let sr = self.r.cmp(&BigRational::zero());
        let ss = self.s.cmp(&BigRational::zero());
        if ss == Ordering::Equal {
            return sr;
        }
        if sr == Ordering::Equal || sr == ss {
            return ss;
        }
        // opposite signs: compare r^2 with d s^2
        let lhs = &self.r * &self.r;
        let rhs = &self.s * &self.s * self.dd();
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_exact(&self, o: &Surd) -> Ordering {
        self.sub(o).signum()
    }

    pub fn abs(&self) -> Surd {
        if self.signum() == Ordering::Less {
            Surd { r: -&self.r, s: -&self.s, d: self.d }
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.r.to_f64().unwrap_or(0.0) + self.s.to_f64().unwrap_or(0.0) * (self.d as f64).sqrt()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn abs_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.r.abs())
    }
}
