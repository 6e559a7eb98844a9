use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The two class-number-one imaginary quadratic rings handled natively.
///
/// Elements are written `a + b·τ` with `τ = i` (Gaussian) or
/// `τ = (1 + √−3)/2 = e^{iπ/3}` (Eisenstein). In the Eisenstein case `τ` is a
/// primitive sixth root of unity, so the unit group is generated by `τ` in
/// both rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuadField {
    Gaussian,
    Eisenstein,
}

impl QuadField {
    /// The `d` in `ℚ(√d)`.
    pub fn d(self) -> i64 {
        match self {
            QuadField::Gaussian => -1,
            QuadField::Eisenstein => -3,
        }
    }

    /// Field discriminant `D`.
    pub fn discriminant(self) -> i64 {
        match self {
            QuadField::Gaussian => -4,
            QuadField::Eisenstein => -3,
        }
    }

    /// Number of roots of unity `w`.
    pub fn unit_order(self) -> u32 {
        match self {
            QuadField::Gaussian => 4,
            QuadField::Eisenstein => 6,
        }
    }

    /// Norm form of `u + v·τ` as a polynomial in the coordinates.
    pub(crate) fn norm_form<T>(self, u: &T, v: &T) -> T
    where
        for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Add<&'a T, Output = T>,
        T: std::ops::Add<T, Output = T>,
    {
        match self {
            QuadField::Gaussian => &(u * u) + &(v * v),
            QuadField::Eisenstein => (&(u * u) + &(u * v)) + (v * v),
        }
    }
}

/// Ring selector for coordinates: rationals (ℤ/ℚ) or one of the quadratic rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Rational,
    Quad(QuadField),
}

impl Ring {
    pub const GAUSSIAN: Ring = Ring::Quad(QuadField::Gaussian);
    pub const EISENSTEIN: Ring = Ring::Quad(QuadField::Eisenstein);

    /// Order of the torsion unit group: 2 over ℚ, `w` otherwise.
    pub fn unit_order(self) -> u32 {
        match self {
            Ring::Rational => 2,
            Ring::Quad(f) => f.unit_order(),
        }
    }

    /// `Z` or `Q` (rationals), `Zi`, `Zw`.
    pub fn parse(s: &str) -> crate::Result<Ring> {
        match s {
            "Z" | "Q" => Ok(Ring::Rational),
            "Zi" => Ok(Ring::GAUSSIAN),
            "Zw" => Ok(Ring::EISENSTEIN),
            other => Err(crate::Error::InvalidParams(format!("unknown ring '{other}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Rational => "Z",
            Ring::Quad(QuadField::Gaussian) => "Zi",
            Ring::Quad(QuadField::Eisenstein) => "Zw",
        }
    }
}

/// An algebraic integer `a + b·τ` of ℤ[i] or ℤ[ω].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub field: QuadField,
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(field: QuadField, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { field, a: a.into(), b: b.into() }
    }

    pub fn from_int(field: QuadField, a: impl Into<BigInt>) -> Self {
        QuadInt::new(field, a, 0)
    }

    pub fn zero(field: QuadField) -> Self {
        QuadInt::new(field, 0, 0)
    }

    pub fn one(field: QuadField) -> Self {
        QuadInt::new(field, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        self.field.norm_form(&self.a, &self.b)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `τ^k`.
    pub fn unit(field: QuadField, k: u32) -> Self {
        let (a, b) = match (field, k % field.unit_order()) {
            (QuadField::Gaussian, 0) => (1, 0),
            (QuadField::Gaussian, 1) => (0, 1),
            (QuadField::Gaussian, 2) => (-1, 0),
            (QuadField::Gaussian, _) => (0, -1),
            (QuadField::Eisenstein, 0) => (1, 0),
            (QuadField::Eisenstein, 1) => (0, 1),
            (QuadField::Eisenstein, 2) => (-1, 1),
            (QuadField::Eisenstein, 3) => (-1, 0),
            (QuadField::Eisenstein, 4) => (0, -1),
            (QuadField::Eisenstein, _) => (1, -1),
        };
        QuadInt::new(field, a, b)
    }

    /// Returns `k` with `self = τ^k` when `self` is a unit.
    pub fn unit_index(&self) -> Option<u32> {
        (0..self.field.unit_order()).find(|&k| QuadInt::unit(self.field, k) == *self)
    }

    pub fn conj(&self) -> Self {
        match self.field {
            QuadField::Gaussian => QuadInt::new(self.field, self.a.clone(), -&self.b),
            // conj(τ) = 1 − τ
            QuadField::Eisenstein => QuadInt::new(self.field, &self.a + &self.b, -&self.b),
        }
    }

    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.field, o.field);
        let ac = &self.a * &o.a;
        let bd = &self.b * &o.b;
        let cross = &self.a * &o.b + &self.b * &o.a;
        match self.field {
            QuadField::Gaussian => QuadInt::new(self.field, ac - bd, cross),
            // τ² = τ − 1
            QuadField::Eisenstein => QuadInt::new(self.field, ac - &bd, cross + bd),
        }
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(self.field, &self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(self.field, &self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt::new(self.field, -&self.a, -&self.b)
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt::new(self.field, &self.a * k, &self.b * k)
    }

    pub fn pow(&self, mut e: u64) -> QuadInt {
        let mut base = self.clone();
        let mut acc = QuadInt::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient, or `None` when `o` does not divide `self`.
    pub fn div_exact(&self, o: &QuadInt) -> Option<QuadInt> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.mul(&o.conj());
        let (qa, ra) = p.a.div_rem(&n);
        let (qb, rb) = p.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(QuadInt::new(self.field, qa, qb))
        } else {
            None
        }
    }

    /// Quotient rounded coordinatewise; the remainder has strictly smaller norm.
    pub fn div_round(&self, o: &QuadInt) -> QuadInt {
        let n = o.norm();
        let p = self.mul(&o.conj());
        QuadInt::new(self.field, round_div(&p.a, &n), round_div(&p.b, &n))
    }

    pub fn gcd(&self, o: &QuadInt) -> QuadInt {
        let mut x = self.clone();
        let mut y = o.clone();
        while !y.is_zero() {
            let q = x.div_round(&y);
            let r = x.sub(&q.mul(&y));
            x = y;
            y = r;
        }
        x
    }

    /// True when the associate lies in the canonical sector: argument in
    /// `[0, π/2)` for ℤ[i], `[0, π/3)` for ℤ[ω]. In `τ`-coordinates both
    /// conditions read `a > 0, b ≥ 0`.
    pub fn is_canonical(&self) -> bool {
        self.a.is_positive() && !self.b.is_negative()
    }

    /// Canonical associate `c` and index `k` with `self = τ^k · c`.
    pub fn canonical(&self) -> (QuadInt, u32) {
        assert!(!self.is_zero(), "zero has no canonical associate");
        let w = self.field.unit_order();
        for k in 0..w {
            // c = τ^{-k} · self
            let c = self.mul(&QuadInt::unit(self.field, (w - k) % w));
            if c.is_canonical() {
                return (c, k);
            }
        }
        unreachable!("every nonzero element has a canonical associate")
    }

    pub fn is_associate(&self, o: &QuadInt) -> bool {
        !self.is_zero() && !o.is_zero() && self.canonical().0 == o.canonical().0
    }

    pub fn to_quad_rat(&self) -> QuadRat {
        QuadRat::new(
            self.field,
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        )
    }

    /// Total order used for deterministic tie-breaks: by `(a, b)`.
    pub fn lex_cmp(&self, o: &QuadInt) -> Ordering {
        (&self.a, &self.b).cmp(&(&o.a, &o.b))
    }
}

fn round_div(p: &BigInt, n: &BigInt) -> BigInt {
    // floor((2p + n) / 2n), n > 0
    let two = BigInt::from(2);
    (&two * p + n).div_floor(&(&two * n))
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_quad_rat();
        write!(f, "{q}")
    }
}

/// An element `x + y·τ` of ℚ(i) or ℚ(ω) with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub field: QuadField,
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadRat {
    pub fn new(field: QuadField, x: BigRational, y: BigRational) -> Self {
        QuadRat { field, x, y }
    }

    pub fn from_rational(field: QuadField, x: BigRational) -> Self {
        QuadRat::new(field, x, BigRational::zero())
    }

    pub fn zero(field: QuadField) -> Self {
        QuadRat::from_rational(field, BigRational::zero())
    }

    pub fn one(field: QuadField) -> Self {
        QuadRat::from_rational(field, BigRational::one())
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        QuadRat::new(QuadField::Gaussian, re, im)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Squared modulus `|x + yτ|²`, exact.
    pub fn norm(&self) -> BigRational {
        self.field.norm_form(&self.x, &self.y)
    }

    pub fn add(&self, o: &QuadRat) -> QuadRat {
        QuadRat::new(self.field, &self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QuadRat) -> QuadRat {
        QuadRat::new(self.field, &self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> QuadRat {
        QuadRat::new(self.field, -&self.x, -&self.y)
    }

    pub fn scale(&self, k: &BigRational) -> QuadRat {
        QuadRat::new(self.field, &self.x * k, &self.y * k)
    }

    pub fn mul(&self, o: &QuadRat) -> QuadRat {
        let ac = &self.x * &o.x;
        let bd = &self.y * &o.y;
        let cross = &self.x * &o.y + &self.y * &o.x;
        match self.field {
            QuadField::Gaussian => QuadRat::new(self.field, ac - bd, cross),
            QuadField::Eisenstein => QuadRat::new(self.field, ac - &bd, cross + bd),
        }
    }

    pub fn conj(&self) -> QuadRat {
        match self.field {
            QuadField::Gaussian => QuadRat::new(self.field, self.x.clone(), -&self.y),
            QuadField::Eisenstein => QuadRat::new(self.field, &self.x + &self.y, -&self.y),
        }
    }

    pub fn inv(&self) -> QuadRat {
        let n = self.norm();
        let c = self.conj();
        QuadRat::new(self.field, &c.x / &n, &c.y / &n)
    }

    pub fn pow(&self, e: i64) -> QuadRat {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QuadRat::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Splits into `(numerator, d)` with `self = numerator / d`, `d > 0`
    /// minimal among integer denominators.
    pub fn to_integral_parts(&self) -> (QuadInt, BigInt) {
        let d = self.x.denom().lcm(self.y.denom());
        let a = self.x.numer() * (&d / self.x.denom());
        let b = self.y.numer() * (&d / self.y.denom());
        let g = a.gcd(&b).gcd(&d);
        let g = if g.is_zero() { BigInt::one() } else { g };
        (QuadInt::new(self.field, a / &g, b / &g), d / g)
    }

    pub fn as_integer(&self) -> Option<QuadInt> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(QuadInt::new(self.field, self.x.to_integer(), self.y.to_integer()))
        } else {
            None
        }
    }

    /// Real part (exact) and imaginary part as `(rational, times √|d|)`:
    /// `Im = im_coeff · √|d|` with `|d| = 1` or `3`.
    pub fn re_im(&self) -> (BigRational, BigRational) {
        match self.field {
            QuadField::Gaussian => (self.x.clone(), self.y.clone()),
            QuadField::Eisenstein => {
                let half = BigRational::new(1.into(), 2.into());
                (&self.x + &self.y * &half, &self.y * &half)
            }
        }
    }

    /// Ordering on `(x, y)` used for deterministic tie-breaks.
    pub fn lex_cmp(&self, o: &QuadRat) -> Ordering {
        (&self.x, &self.y).cmp(&(&o.x, &o.y))
    }
}

impl fmt::Display for QuadRat {
    /// Writes `re + im·i` for ℚ(i) and `re + im·w` with `w = (−1+√−3)/2`
    /// for ℚ(ω).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // x + yτ = (x + y) + yω since τ = 1 + ω
        let (re, im, sym) = match self.field {
            QuadField::Gaussian => (self.x.clone(), self.y.clone(), "i"),
            QuadField::Eisenstein => (&self.x + &self.y, self.y.clone(), "w"),
        };
        write!(f, "{}", crate::arith::format_quad(&re, &im, sym))
    }
}
