use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::factor_biguint;
use super::number::ExactNumber;
use super::ring::{QuadField, QuadInt, QuadRat, Ring};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A prime of ℤ, ℤ[i] or ℤ[ω] in canonical form. Ordered by norm first so
/// maps list small primes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeRep {
    /// `p` for rational primes, the field norm for quadratic primes.
    pub norm: BigInt,
    pub a: BigInt,
    pub b: BigInt,
}

impl PrimeRep {
    pub fn rational(p: impl Into<BigInt>) -> Self {
        let p = p.into();
        PrimeRep { norm: p.clone(), a: p, b: BigInt::zero() }
    }

    pub fn quad(q: &QuadInt) -> Self {
        PrimeRep { norm: q.norm(), a: q.a.clone(), b: q.b.clone() }
    }

    pub fn to_quad(&self, field: QuadField) -> QuadInt {
        QuadInt::new(field, self.a.clone(), self.b.clone())
    }

    pub fn display(&self, ring: Ring) -> String {
        match ring {
            Ring::Rational => self.a.to_string(),
            Ring::Quad(f) => self.to_quad(f).to_string(),
        }
    }
}

/// Sparse factorization: canonical prime → nonzero exponent, plus a torsion
/// unit. Over ℚ the unit index is 0 for `+1` and 1 for `−1`; over ℚ(τ) it is
/// `k` for `τ^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeExponentMap {
    pub ring: Ring,
    pub unit: u32,
    pub factors: BTreeMap<PrimeRep, i64>,
}

impl PrimeExponentMap {
    pub fn one(ring: Ring) -> Self {
        PrimeExponentMap { ring, unit: 0, factors: BTreeMap::new() }
    }

    pub fn add_exponent(&mut self, p: PrimeRep, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(p.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&p);
        }
    }

    fn add_unit(&mut self, k: i64) {
        let w = self.ring.unit_order() as i64;
        self.unit = (self.unit as i64 + k).rem_euclid(w) as u32;
    }

    /// Map of `x^k`.
    pub fn scale(&self, k: i64) -> Self {
        let mut out = PrimeExponentMap::one(self.ring);
        if k == 0 {
            return out;
        }
        out.add_unit(self.unit as i64 * k);
        for (p, &e) in &self.factors {
            out.factors.insert(p.clone(), e * k);
        }
        out
    }

    /// Map of `x·y`.
    pub fn combine(&self, o: &PrimeExponentMap) -> Self {
        let mut out = self.clone();
        out.add_unit(o.unit as i64);
        for (p, &e) in &o.factors {
            out.add_exponent(p.clone(), e);
        }
        out
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, p: &PrimeRep) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Multiplies the factorization back out.
    pub fn reconstruct(&self) -> ExactNumber {
        match self.ring {
            Ring::Rational => {
                let mut num = BigInt::one();
                let mut den = BigInt::one();
                for (p, &e) in &self.factors {
                    let pw = num_traits::pow(p.a.clone(), e.unsigned_abs() as usize);
                    if e > 0 {
                        num *= pw;
                    } else {
                        den *= pw;
                    }
                }
                if self.unit == 1 {
                    num = -num;
                }
                ExactNumber::from_rational(BigRational::new(num, den))
            }
            Ring::Quad(f) => {
                let mut acc = QuadInt::unit(f, self.unit).to_quad_rat();
                for (p, &e) in &self.factors {
                    acc = acc.mul(&p.to_quad(f).to_quad_rat().pow(e));
                }
                ExactNumber::Quadratic(acc)
            }
        }
    }

    pub fn unit_display(&self) -> String {
        match self.ring {
            Ring::Rational => if self.unit == 0 { "1" } else { "-1" }.to_string(),
            Ring::Quad(f) => QuadInt::unit(f, self.unit).to_string(),
        }
    }
}

impl fmt::Display for PrimeExponentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unit {} {{", self.unit_display())?;
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}): {e}", p.display(self.ring))?;
        }
        write!(f, "}}")
    }
}

/// Factorization of a positive integer.
pub fn factorize(n: &BigInt) -> Result<PrimeExponentMap> {
    factorize_with(n, &Limits::default())
}

pub fn factorize_with(n: &BigInt, limits: &Limits) -> Result<PrimeExponentMap> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n.is_negative() {
        return Err(Error::Precondition("factorize expects a positive integer".into()));
    }
    let mut out = PrimeExponentMap::one(Ring::Rational);
    for (p, e) in factor_biguint(n.magnitude(), &limits.factor_bound)? {
        out.add_exponent(PrimeRep::rational(BigInt::from(p)), e as i64);
    }
    Ok(out)
}

/// Sign and signed prime exponents of a nonzero rational.
pub fn exponent_vector(q: &BigRational) -> Result<PrimeExponentMap> {
    exponent_vector_with(q, &Limits::default())
}

pub fn exponent_vector_with(q: &BigRational, limits: &Limits) -> Result<PrimeExponentMap> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = factorize_with(&q.numer().abs(), limits)?;
    let den = factorize_with(q.denom(), limits)?;
    out = out.combine(&den.scale(-1));
    out.unit = if q.is_negative() { 1 } else { 0 };
    Ok(out)
}

/// Factorization of a nonzero algebraic integer of ℤ[i] or ℤ[ω] into a unit
/// times canonical primes.
pub fn gaussian_factorize(alpha: &ExactNumber) -> Result<PrimeExponentMap> {
    gaussian_factorize_with(alpha, &Limits::default())
}

pub fn gaussian_factorize_with(alpha: &ExactNumber, limits: &Limits) -> Result<PrimeExponentMap> {
    let q = match alpha {
        ExactNumber::Quadratic(q) => q,
        _ => return Err(Error::WrongRing),
    };
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let z = q.as_integer().ok_or(Error::WrongRing)?;
    factor_quad_int(&z, limits)
}

/// Core of [`gaussian_factorize`] on a ring element.
pub fn factor_quad_int(z: &QuadInt, limits: &Limits) -> Result<PrimeExponentMap> {
    if z.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = z.field;
    let mut out = PrimeExponentMap::one(Ring::Quad(field));
    let mut rest = z.clone();
    let norm = z.norm();
    for (p, e) in factor_biguint(norm.magnitude(), &limits.factor_bound)? {
        let pi = BigInt::from(p);
        for (prime, mult) in primes_above(&pi, field) {
            if mult == 0 {
                // inert: the norm exponent is even
                out.add_exponent(PrimeRep::quad(&prime), (e / 2) as i64);
                rest = rest.div_exact(&prime.pow((e / 2) as u64)).expect("inert prime divides");
            } else if mult == 1 {
                // ramified
                out.add_exponent(PrimeRep::quad(&prime), e as i64);
                rest = rest.div_exact(&prime.pow(e as u64)).expect("ramified prime divides");
            } else {
                // split: two conjugate canonical primes share the exponent e
                let conj = prime.conj().canonical().0;
                let mut v1 = 0u32;
                while v1 < e {
                    match rest.div_exact(&prime) {
                        Some(r) => {
                            rest = r;
                            v1 += 1;
                        }
                        None => break,
                    }
                }
                let v2 = e - v1;
                rest = rest.div_exact(&conj.pow(v2 as u64)).expect("conjugate prime divides");
                out.add_exponent(PrimeRep::quad(&prime), v1 as i64);
                out.add_exponent(PrimeRep::quad(&conj), v2 as i64);
            }
        }
    }
    out.unit = rest.unit_index().expect("cofactor after removing all primes is a unit");
    Ok(out)
}

/// Canonical prime(s) above the rational prime `p`. The tag is 0 for inert,
/// 1 for ramified and 2 for split (one representative returned).
fn primes_above(p: &BigInt, field: QuadField) -> Vec<(QuadInt, u8)> {
    let pu = p.to_u64();
    match field {
        QuadField::Gaussian => {
            if pu == Some(2) {
                return vec![(QuadInt::new(field, 1, 1), 1)];
            }
            if (p % 4u8) == BigInt::from(3) {
                return vec![(QuadInt::from_int(field, p.clone()), 0)];
            }
            let x = sqrt_mod(&(p - 1u8), p);
            let g = QuadInt::from_int(field, p.clone()).gcd(&QuadInt::new(field, x, 1));
            vec![(g.canonical().0, 2)]
        }
        QuadField::Eisenstein => {
            if pu == Some(3) {
                return vec![(QuadInt::new(field, 1, 1), 1)];
            }
            if (p % 3u8) == BigInt::from(2) {
                return vec![(QuadInt::from_int(field, p.clone()), 0)];
            }
            // √−3 = 2τ − 1
            let x = sqrt_mod(&(p - 3u8), p);
            let g = QuadInt::from_int(field, p.clone()).gcd(&QuadInt::new(field, x - 1, 2));
            vec![(g.canonical().0, 2)]
        }
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let p_u = p.magnitude().clone();
    let a_u = a.mod_floor(p).magnitude().clone();
    let one = BigUint::one();
    let pm1 = &p_u - &one;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let half = &pm1 >> 1;
    let mut z = BigUint::from(2u8);
    while z.modpow(&half, &p_u) != pm1 {
        z += 1u8;
    }
    let mut m = s;
    let mut c = z.modpow(&q, &p_u);
    let mut t = a_u.modpow(&q, &p_u);
    let mut r = a_u.modpow(&((&q + &one) >> 1), &p_u);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % &p_u;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), &p_u);
        m = i;
        c = (&b * &b) % &p_u;
        t = (&t * &c) % &p_u;
        r = (&r * &b) % &p_u;
    }
    BigInt::from_biguint(Sign::Plus, r)
}

/// Exponent map of any nonzero exact number (rationals over ℚ, elements of
/// ℚ(τ) via numerator and denominator).
pub fn exponent_map(x: &ExactNumber, limits: &Limits) -> Result<PrimeExponentMap> {
    match x {
        ExactNumber::Integer(n) => exponent_vector_with(&BigRational::from_integer(n.clone()), limits),
        ExactNumber::Rational(r) => exponent_vector_with(r, limits),
        ExactNumber::Quadratic(q) => quad_rat_map(q, limits),
    }
}

pub fn quad_rat_map(q: &QuadRat, limits: &Limits) -> Result<PrimeExponentMap> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (num, den) = q.to_integral_parts();
    let top = factor_quad_int(&num, limits)?;
    if den.is_one() {
        return Ok(top);
    }
    let bottom = factor_quad_int(&QuadInt::from_int(q.field, den), limits)?;
    Ok(top.combine(&bottom.scale(-1)))
}
