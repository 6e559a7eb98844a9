use num_bigint::BigInt;
use num_rational::BigRational;

use super::interval::Interval;

/// Rectangular complex interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        ComplexInterval { re: Interval::from_rational(re, prec), im: Interval::from_rational(im, prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexInterval { re: Interval::from_int(1, prec), im: Interval::zero(prec) }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn sqr(&self) -> Self {
        let two = BigInt::from(2);
        ComplexInterval {
            re: self.re.sqr().sub(&self.im.sqr()),
            im: self.re.mul(&self.im).mul_int(&two),
        }
    }

    pub fn norm2(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexInterval::one(self.re.prec());
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

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexInterval { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_power() {
        let z = ComplexInterval::from_rationals(&BigRational::from_integer(1.into()), &BigRational::from_integer(1.into()), 8);
        // (1+i)^8 = 16
        let p = z.pow(8);
        assert!(p.re.contains_rational(&BigRational::from_integer(16.into())));
        assert!(p.im.contains_rational(&BigRational::from_integer(0.into())));
    }
}
