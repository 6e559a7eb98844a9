use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factor::is_prime_u64;
use crate::arith::format_rational;
use crate::real::{cbrt_rational, ln_rational, sqrt_rational, Interval};
use crate::{Error, Result};

/// Irrational constants whose linear independence (with 1) over ℚ can be
/// decided from their description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constant {
    /// `√d`, `d ≥ 2` squarefree.
    Sqrt(u64),
    /// `c0 + c1·n^{1/3} + c2·n^{2/3}`, `n ≥ 2` cube-free, `(c1, c2) ≠ 0`.
    Cubic { n: u64, c: [BigRational; 3] },
    /// `log p / log q` for distinct primes; transcendental (Gelfond–Schneider).
    LogRatio(u64, u64),
}

fn squarefree(d: u64) -> bool {
    (2..).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

fn cubefree(n: u64) -> bool {
    (2..).take_while(|p| p * p * p <= n).all(|p| n % (p * p * p) != 0)
}

impl Constant {
    pub fn cbrt(n: u64) -> Constant {
        Constant::Cubic { n, c: [BigRational::zero(), BigRational::one(), BigRational::zero()] }
    }

    /// Accepts `sqrt2`, `sqrt(2)`, `cbrt3`, `cbrt(3)`, `log2/log3`,
    /// `log(2)/log(3)`.
    pub fn parse(s: &str) -> Result<Constant> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        let bad = || Error::InvalidParams(format!("unknown catalog constant '{s}'"));
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        let c = if let Some(d) = t.strip_prefix("sqrt") {
            Constant::Sqrt(num(d)?)
        } else if let Some(n) = t.strip_prefix("cbrt") {
            Constant::cbrt(num(n)?)
        } else if let Some((a, b)) = t.split_once('/') {
            let p = a.strip_prefix("log").ok_or_else(bad)?;
            let q = b.strip_prefix("log").ok_or_else(bad)?;
            Constant::LogRatio(num(p)?, num(q)?)
        } else {
            return Err(bad());
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            Constant::Sqrt(d) => *d >= 2 && squarefree(*d),
            Constant::Cubic { n, c } => *n >= 2 && cubefree(*n) && !(c[1].is_zero() && c[2].is_zero()),
            Constant::LogRatio(p, q) => p != q && is_prime_u64(*p) && is_prime_u64(*q),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("{self} is not a supported irrational constant")))
        }
    }

    pub fn eval(&self, prec: u32) -> Interval {
        let wp = prec + 16;
        let v = match self {
            Constant::Sqrt(d) => sqrt_rational(&BigRational::from_integer((*d).into()), wp),
            Constant::Cubic { n, c } => {
                let x = cbrt_rational(&BigRational::from_integer((*n).into()), wp + 8);
                x.sqr().mul_rational(&c[2]).add(&x.mul_rational(&c[1])).add_rational(&c[0])
            }
            Constant::LogRatio(p, q) => {
                let lp = ln_rational(&BigRational::from_integer((*p).into()), wp);
                let lq = ln_rational(&BigRational::from_integer((*q).into()), wp);
                lp.div(&lq).expect("log q > 0")
            }
        };
        v.with_prec(prec)
    }

    fn is_algebraic(&self) -> bool {
        !matches!(self, Constant::LogRatio(..))
    }
}

/// Checks that `1, r, s` are linearly independent over ℚ, using only facts
/// that follow from the descriptions:
/// * `√d1, √d2` for distinct squarefree `d1, d2`;
/// * a square root against a cubic irrational (degrees 2 and 3);
/// * two cubic expressions in the same `n^{1/3}` with independent
///   `(c1, c2)` parts, or pure cube roots of distinct cube-free integers;
/// * a log ratio (transcendental) against any algebraic constant.
pub fn check_independent(r: &Constant, s: &Constant) -> Result<()> {
    r.validate()?;
    s.validate()?;
    use Constant::*;
    let ok = match (r, s) {
        (Sqrt(a), Sqrt(b)) => a != b,
        (Sqrt(_), Cubic { .. }) | (Cubic { .. }, Sqrt(_)) => true,
        (Cubic { n: n1, c: c1 }, Cubic { n: n2, c: c2 }) => {
            if n1 == n2 {
                &c1[1] * &c2[2] != &c1[2] * &c2[1]
            } else {
                let pure = |c: &[BigRational; 3]| c[0].is_zero() && c[2].is_zero();
                pure(c1) && pure(c2)
            }
        }
        (LogRatio(..), x) | (x, LogRatio(..)) => x.is_algebraic(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("independence of 1, {r}, {s} over Q is not established")))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Sqrt(d) => write!(f, "sqrt{d}"),
            Constant::LogRatio(p, q) => write!(f, "log{p}/log{q}"),
            Constant::Cubic { n, c } => {
                let one = BigRational::one();
                if c[0].is_zero() && c[2].is_zero() && c[1] == one {
                    return write!(f, "cbrt{n}");
                }
                let mut parts = Vec::new();
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let term = match k {
                        0 => format_rational(x),
                        1 => format!("{}*cbrt{n}", format_rational(x)),
                        _ => format!("{}*cbrt{n}^2", format_rational(x)),
                    };
                    parts.push(term);
                }
                let joined = parts.join("+").replace("+-", "-").replace("-1*", "-").replace("+1*", "+");
                let joined = joined.strip_prefix("1*").unwrap_or(&joined).to_string();
                write!(f, "{joined}")
            }
        }
    }
}
