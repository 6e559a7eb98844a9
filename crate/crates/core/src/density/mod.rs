//! Constructive density: dependent vectors, lattice sums and ring elements
//! within `ε` of a target, each with a replayable JSON trace.

pub mod biquad;
pub mod catalog;
pub mod complex_pair;
pub mod kronecker;
pub mod lattice_sum;
pub mod real_vec;


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

pub use biquad::{approx_biquad, BiquadApprox, BiquadStep};
pub use catalog::{check_independent, Constant};
pub use complex_pair::{approx_complex_pair, ComplexApprox, ComplexBranch, Digits, PowerForm, MAX_M};
pub use kronecker::{kronecker_q, KroneckerResult, MAX_Q};
pub use lattice_sum::{
    approx_lattice_sum, direct_search, lattice_distance_below, CubicPair, KroneckerCertificate, LatticePath,
    LatticeTarget,
};
pub use real_vec::{approx_real_vector, choose_alpha, choose_delta, RealApprox};

use crate::arith::{format_quad, format_rational, parse_quad, parse_rational, QuadField, QuadRat};
use crate::{Error, Limits, Result};

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().abs().ln();
    }
    let shift = bits - 64;
    (n.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln|x|` in floating point, finite for arbitrarily large numerators and
/// denominators. Used only to pick starting exponents.
pub(crate) fn ln_abs_f64(x: &BigRational) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

/// One density request together with the output it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTrace {
    pub op: String,
    pub request: Value,
    pub result: Value,
}

impl DensityTrace {
    pub fn to_json(&self) -> Value {
        json!({"op": self.op, "request": self.request, "result": self.result})
    }

    pub fn to_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("trace: {e}")))?;
        let op = v["op"].as_str().ok_or_else(|| bad("op"))?.to_string();
        Ok(DensityTrace { op, request: v["request"].clone(), result: v["result"].clone() })
    }
}

fn bad(field: &str) -> Error {
    Error::InvalidParams(format!("trace field '{field}' missing or malformed"))
}

fn limits_json(limits: &Limits) -> Value {
    json!({"budget": limits.budget.to_string(), "max_precision": limits.max_precision})
}

fn limits_from(v: &Value) -> Result<Limits> {
    let mut l = Limits::default();
    if let Some(b) = v.get("budget") {
        l.budget = b.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("budget"))?;
    }
    if let Some(p) = v.get("max_precision") {
        l.max_precision = p.as_u64().and_then(|p| u32::try_from(p).ok()).ok_or_else(|| bad("max_precision"))?;
    }
    Ok(l)
}

fn gauss_str(z: &QuadRat) -> String {
    let (re, im) = z.re_im();
    format_quad(&re, &im, "i")
}

fn str_field<'a>(v: &'a Value, k: &str) -> Result<&'a str> {
    v[k].as_str().ok_or_else(|| bad(k))
}

fn rat_field(v: &Value, k: &str) -> Result<BigRational> {
    parse_rational(str_field(v, k)?)
}

fn gauss_field(v: &Value, k: &str, i: usize) -> Result<QuadRat> {
    parse_quad(v[k][i].as_str().ok_or_else(|| bad(k))?, QuadField::Gaussian)
}

pub fn trace_real(x: &[BigRational], eps: &BigRational, limits: &Limits) -> Result<DensityTrace> {
    let out = approx_real_vector(x, eps, limits)?;
    Ok(DensityTrace {
        op: "approx_real".into(),
        request: json!({
            "target": x.iter().map(format_rational).collect::<Vec<_>>(),
            "eps": format_rational(eps),
            "limits": limits_json(limits),
        }),
        result: out.to_json(),
    })
}

pub fn trace_complex(z1: &QuadRat, z2: &QuadRat, eps: &BigRational, limits: &Limits) -> Result<DensityTrace> {
    let out = approx_complex_pair(z1, z2, eps, limits)?;
    Ok(DensityTrace {
        op: "approx_complex".into(),
        request: json!({
            "target": [gauss_str(z1), gauss_str(z2)],
            "eps": format_rational(eps),
            "limits": limits_json(limits),
        }),
        result: out.to_json(),
    })
}

pub fn trace_kronecker(
    r: &Constant,
    s: &Constant,
    eps: &BigRational,
    a: &BigRational,
    b: &BigRational,
    limits: &Limits,
) -> Result<DensityTrace> {
    let out = kronecker_q(r, s, eps, a, b, limits)?;
    Ok(DensityTrace {
        op: "kronecker".into(),
        request: json!({
            "r": r.to_string(),
            "s": s.to_string(),
            "eps": format_rational(eps),
            "a": format_rational(a),
            "b": format_rational(b),
            "limits": limits_json(limits),
        }),
        result: out.to_json(),
    })
}

pub fn trace_lattice_sum(pair: &CubicPair, z: &LatticeTarget, eps: &BigRational, limits: &Limits) -> Result<DensityTrace> {
    let out = approx_lattice_sum(pair, z, eps, limits)?;
    Ok(DensityTrace {
        op: "lattice_sum".into(),
        request: json!({
            "n": pair.n,
            "target": [format_rational(&z.re), format_rational(&z.im), format_rational(&z.u), format_rational(&z.v)],
            "eps": format_rational(eps),
            "limits": limits_json(limits),
        }),
        result: out.to_json(),
    })
}

pub fn trace_biquad(z: &QuadRat, eps: &BigRational) -> Result<DensityTrace> {
    let out = approx_biquad(z, eps)?;
    Ok(DensityTrace {
        op: "biquad".into(),
        request: json!({"target": gauss_str(z), "eps": format_rational(eps)}),
        result: out.to_json(),
    })
}

/// Result of re-running a stored trace.
#[derive(Debug, Clone)]
pub struct ReplayOutcome {
    pub identical: bool,
    pub regenerated: DensityTrace,
}

impl ReplayOutcome {
    pub fn to_json(&self) -> Value {
        json!({"op": self.regenerated.op, "identical": self.identical, "result": self.regenerated.result})
    }
}

/// Re-executes the request in `text` and compares the serialized output
/// byte for byte.
pub fn replay(text: &str) -> Result<ReplayOutcome> {
    let trace = DensityTrace::parse(text)?;
    let q = &trace.request;
    let limits = match q.get("limits") {
        Some(l) => limits_from(l)?,
        None => Limits::default(),
    };
    let eps = rat_field(q, "eps")?;
    let regenerated = match trace.op.as_str() {
        "approx_real" => {
            let x = q["target"]
                .as_array()
                .ok_or_else(|| bad("target"))?
                .iter()
                .map(|v| parse_rational(v.as_str().ok_or_else(|| bad("target"))?))
                .collect::<Result<Vec<_>>>()?;
            trace_real(&x, &eps, &limits)?
        }
        "approx_complex" => trace_complex(&gauss_field(q, "target", 0)?, &gauss_field(q, "target", 1)?, &eps, &limits)?,
        "kronecker" => trace_kronecker(
            &Constant::parse(str_field(q, "r")?)?,
            &Constant::parse(str_field(q, "s")?)?,
            &eps,
            &rat_field(q, "a")?,
            &rat_field(q, "b")?,
            &limits,
        )?,
        "lattice_sum" => {
            let pair = CubicPair::new(q["n"].as_u64().ok_or_else(|| bad("n"))?)?;
            let t = |i: usize| parse_rational(q["target"][i].as_str().unwrap_or(""));
            let z = LatticeTarget { re: t(0)?, im: t(1)?, u: t(2)?, v: t(3)? };
            trace_lattice_sum(&pair, &z, &eps, &limits)?
        }
        "biquad" => trace_biquad(&parse_quad(str_field(q, "target")?, QuadField::Gaussian)?, &eps)?,
        other => return Err(Error::InvalidParams(format!("unknown trace op '{other}'"))),
    };
    let identical = regenerated.to_string() == trace.to_json().to_string();
    Ok(ReplayOutcome { identical, regenerated })
}
