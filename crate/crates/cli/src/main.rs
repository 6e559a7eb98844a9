//! Command-line front end: one subcommand per library operation, JSON lines
//! (or CSV for tables) on stdout, a JSON error object on stderr.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use muldep::arith::{parse_number, parse_quad, parse_rational, ExactNumber, QuadField, Ring};
use muldep::census::{count_m2_ok, count_mn_z, leading_term, FieldSpec};
use muldep::covering::{empty_box, mu2_probe, nearest_dependent, rho_probe, stewart_approx, CenterRule, Mu2Params, Target};
use muldep::density::{self, Constant, CubicPair, LatticeTarget};
use muldep::dependence::{is_dependent, minimal_witness, mult2_decompose};
use muldep::smoothgaps::{cf_convergents, gap_table, gouillon_a, linear_form, smooth_stream};
use muldep::{Error, Limits};

#[derive(Parser)]
#[command(name = "muldep", version, about = "Multiplicatively dependent vectors: tests, counts, probes and approximations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Coordinate ring.
    #[arg(long, global = true, default_value = "Z", value_parser = ["Z", "Q", "Zi", "Zw"])]
    ring: String,
    /// Output encoding; tables default to CSV, everything else to JSON.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Work budget in elementary operations.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Ceiling for interval precision, in bits.
    #[arg(long = "max-precision", global = true)]
    max_precision: Option<u32>,
    /// Accepted for interface stability; every operation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide multiplicative dependence and print a witness.
    Depcheck {
        #[arg(required = true, num_args = 2..)]
        values: Vec<String>,
    },
    /// Relation of minimal sup-norm.
    Witness {
        #[arg(required = true, num_args = 2..)]
        values: Vec<String>,
    },
    /// Write a dependent pair as (ζ1·γ^l, ζ2·γ^m).
    Decompose {
        alpha: String,
        beta: String,
    },
    /// Count dependent vectors of height at most H.
    Census {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "H")]
        h: String,
        /// Stream every counted vector as CSV.
        #[arg(long)]
        emit: bool,
    },
    /// Main term of the census count.
    Leading {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "H")]
        h: String,
    },
    /// Nearest dependent vector to a target.
    Nearest {
        #[arg(required = true, num_args = 2..)]
        target: Vec<String>,
        /// Search radius; defaults to 2·max|x_j| + 2.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Covering probe at (H/2, 3H/4).
    Rhoprobe {
        #[arg(long = "H")]
        h: u64,
    },
    /// Covering probe over ℤ[i] or ℤ[ω].
    Muprobe {
        #[arg(long = "H")]
        h: u64,
        #[arg(long, default_value = "2/5")]
        c: String,
        #[arg(long, default_value = "9/20")]
        a: String,
        #[arg(long, default_value = "1/2")]
        d: String,
        #[arg(long, default_value = "11/20")]
        b: String,
    },
    /// Certify that a box of integer vectors holds no dependent vector.
    Emptybox {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "H")]
        h: u64,
        #[arg(long, default_value_t = 5)]
        halfwidth: u64,
        /// Center coordinates: largest prime powers up to H or H/2.
        #[arg(long, default_value = "H", value_parser = ["H", "H/2"])]
        center: String,
    },
    /// Best 2^h1·3^h2·α^h3 near z.
    Stewart {
        z: String,
        #[arg(long)]
        alpha: String,
        /// Maximal exponents, comma separated.
        #[arg(long = "box", default_value = "10,10,10")]
        bx: String,
        /// Scan the whole exponent box.
        #[arg(long)]
        no_prune: bool,
    },
    /// S-smooth numbers up to a limit.
    Smooth {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: String,
    },
    /// Gaps between consecutive S-smooth numbers.
    Gaps {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        limit: String,
        #[arg(long, default_value = "0")]
        theta: String,
    },
    /// Continued fraction convergents of log p / log q.
    Convergents {
        p: u64,
        q: u64,
        #[arg(long, default_value_t = 9)]
        count: usize,
    },
    /// Explicit constant of the smooth-gap exponent.
    Gouillon { p: u64, q: u64 },
    /// Certified |r·log q − s·log p|.
    Linform { r: u64, s: u64, p: u64, q: u64 },
    /// Dependent real vector near a target.
    ApproxReal {
        #[arg(required = true, num_args = 2..)]
        target: Vec<String>,
        #[arg(long)]
        eps: String,
    },
    /// Dependent Gaussian-rational pair near a target.
    ApproxComplex {
        z1: String,
        z2: String,
        #[arg(long)]
        eps: String,
    },
    /// Smallest q with eps/4 < {qr} < eps/2 and {qs} < eps²/(20·max(a,b)).
    Kronecker {
        r: String,
        s: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
    },
    /// Integers a, b, c with a + bρ + cρ² near z, ρ a nonreal cube root of n.
    LatticeSum {
        z: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 2)]
        cube: u64,
    },
    /// Algebraic integer of ℚ(√2, i) near z.
    Biquad {
        z: String,
        #[arg(long)]
        eps: String,
    },
    /// Re-run a stored approximation trace and compare outputs.
    Replay { file: String },
}

/// Output lines, or a CSV table.
enum Output {
    Lines(Vec<Value>),
    Csv(String),
}

fn one(v: Value) -> Output {
    Output::Lines(vec![v])
}

/// Stand-in for a leading minus sign, so clap does not read `-1/2` as a flag.
const MINUS: char = '\u{2212}';

fn protect_negatives(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let mut c = a.chars();
        match (c.next(), c.next()) {
            (Some('-'), Some(d)) if d.is_ascii_digit() || d == '.' => format!("{MINUS}{}", &a[1..]),
            _ => a,
        }
    })
    .collect()
}

fn unprotect(s: &str) -> String {
    s.replace(MINUS, "-")
}

fn nums(xs: &[String], ring: Ring) -> muldep::Result<Vec<ExactNumber>> {
    xs.iter().map(|s| parse_number(&unprotect(s), ring)).collect()
}

fn rat(s: &str) -> muldep::Result<BigRational> {
    parse_rational(&unprotect(s))
}

fn uint(s: &str) -> muldep::Result<BigUint> {
    s.trim().parse().map_err(|_| Error::InvalidParams(format!("'{s}' is not a nonnegative integer")))
}

fn gaussian(s: &str) -> muldep::Result<muldep::arith::QuadRat> {
    parse_quad(&unprotect(s), QuadField::Gaussian)
}

fn quad_field(ring: Ring) -> muldep::Result<QuadField> {
    match ring {
        Ring::Quad(f) => Ok(f),
        Ring::Rational => Err(Error::InvalidParams("this command needs --ring Zi or Zw".into())),
    }
}

fn trace_line(t: muldep::Result<density::DensityTrace>) -> muldep::Result<Output> {
    Ok(one(t?.to_json()))
}

fn dispatch(cmd: Command, g: &Global, limits: &Limits) -> muldep::Result<Output> {
    let ring = Ring::parse(&g.ring)?;
    match cmd {
        Command::Depcheck { values } => {
            let (dep, w) = is_dependent(&nums(&values, ring)?, limits)?;
            Ok(one(json!({"dependent": dep, "witness": w.map(|w| w.k)})))
        }
        Command::Witness { values } => {
            let w = minimal_witness(&nums(&values, ring)?, limits)?;
            Ok(one(json!({"witness": w.k, "sup_norm": w.sup_norm()})))
        }
        Command::Decompose { alpha, beta } => {
            Ok(one(mult2_decompose(&parse_number(&unprotect(&alpha), ring)?, &parse_number(&unprotect(&beta), ring)?, limits)?.to_json()))
        }
        Command::Census { n, h, emit } => match ring {
            Ring::Rational => {
                let h: u64 = h.parse().map_err(|_| Error::InvalidParams(format!("H must be a positive integer, got '{h}'")))?;
                if emit {
                    let mut csv = (1..=n).map(|j| format!("x{j}")).collect::<Vec<_>>().join(",");
                    csv.push('\n');
                    let mut sink = |v: &[i64]| {
                        csv.push_str(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                        csv.push('\n');
                    };
                    count_mn_z(n, h, limits, Some(&mut sink))?;
                    Ok(Output::Csv(csv))
                } else {
                    Ok(one(serde_json::to_value(count_mn_z(n, h, limits, None)?).expect("report serializes")))
                }
            }
            Ring::Quad(f) => {
                if n != 2 || emit {
                    return Err(Error::InvalidParams("quadratic rings support n = 2 counts only".into()));
                }
                Ok(one(serde_json::to_value(count_m2_ok(&rat(&h)?, f, limits)?).expect("report serializes")))
            }
        },
        Command::Leading { n, h } => {
            let field = match ring {
                Ring::Rational => FieldSpec::Integers,
                Ring::Quad(f) => FieldSpec::of(f),
            };
            Ok(one(leading_term(n, &rat(&h)?, field, limits)?.to_json()))
        }
        Command::Nearest { target, bound } => {
            let t = match ring {
                Ring::Rational => Target::Real(target.iter().map(|s| rat(s)).collect::<muldep::Result<_>>()?),
                Ring::Quad(f) => Target::Complex(f, target.iter().map(|s| parse_quad(&unprotect(s), f)).collect::<muldep::Result<_>>()?),
            };
            let b = match bound {
                Some(b) => rat(&b)?,
                None => t.default_search_bound(),
            };
            Ok(one(nearest_dependent(&t, &b, limits)?.to_json()))
        }
        Command::Rhoprobe { h } => Ok(one(rho_probe(h, limits)?.to_json())),
        Command::Muprobe { h, c, a, d, b } => {
            let params = Mu2Params { c: rat(&c)?, a: rat(&a)?, d: rat(&d)?, b: rat(&b)? };
            let field = quad_field(ring).unwrap_or(QuadField::Gaussian);
            Ok(one(mu2_probe(field, h, &params, limits)?.to_json()))
        }
        Command::Emptybox { n, h, halfwidth, center } => {
            let rule = if center == "H" { CenterRule::Bound } else { CenterRule::HalfBound };
            Ok(one(empty_box(n, h, halfwidth, rule, limits)?.to_json()))
        }
        Command::Stewart { z, alpha, bx, no_prune } => {
            let field = match ring {
                Ring::Rational => QuadField::Gaussian,
                Ring::Quad(f) => f,
            };
            let zz = gaussian(&z)?.re_im();
            let a = parse_quad(&unprotect(&alpha), field)?
                .as_integer()
                .ok_or_else(|| Error::InvalidParams("alpha must be an algebraic integer".into()))?;
            let parts: Vec<u32> = bx
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::InvalidParams(format!("bad exponent box '{bx}'"))))
                .collect::<muldep::Result<_>>()?;
            let bx: [u32; 3] = parts.try_into().map_err(|_| Error::InvalidParams("exponent box needs three entries".into()))?;
            Ok(one(stewart_approx(&zz, &a, bx, !no_prune, limits)?.to_json()))
        }
        Command::Smooth { primes, limit } => {
            let stream = smooth_stream(&primes, &uint(&limit)?)?;
            let ps = stream.primes().to_vec();
            if g.format == Some(Format::Csv) {
                let mut csv = format!("j,m_j,{}\n", ps.iter().map(|p| format!("e_{p}")).collect::<Vec<_>>().join(","));
                for t in stream {
                    let e = t.exponents.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    csv.push_str(&format!("{},{},{}\n", t.index, t.value, e));
                }
                Ok(Output::Csv(csv))
            } else {
                Ok(Output::Lines(stream.map(|t| serde_json::to_value(t).expect("term serializes")).collect()))
            }
        }
        Command::Gaps { primes, limit, theta } => {
            let table = gap_table(&primes, &uint(&limit)?, &rat(&theta)?, limits)?;
            if g.format == Some(Format::Json) {
                let mut lines: Vec<Value> =
                    table.records.iter().map(|r| serde_json::to_value(r).expect("record serializes")).collect();
                lines.push(json!({"summary": table.summary}));
                Ok(Output::Lines(lines))
            } else {
                Ok(Output::Csv(table.to_csv()))
            }
        }
        Command::Convergents { p, q, count } => {
            Ok(one(serde_json::to_value(cf_convergents(p, q, count, limits)?).expect("report serializes")))
        }
        Command::Gouillon { p, q } => Ok(one(gouillon_a(p, q)?.to_json())),
        Command::Linform { r, s, p, q } => {
            Ok(one(serde_json::to_value(linear_form(r, s, p, q, limits)?).expect("form serializes")))
        }
        Command::ApproxReal { target, eps } => {
            let x = target.iter().map(|s| rat(s)).collect::<muldep::Result<Vec<_>>>()?;
            trace_line(density::trace_real(&x, &rat(&eps)?, limits))
        }
        Command::ApproxComplex { z1, z2, eps } => {
            trace_line(density::trace_complex(&gaussian(&z1)?, &gaussian(&z2)?, &rat(&eps)?, limits))
        }
        Command::Kronecker { r, s, eps, a, b } => trace_line(density::trace_kronecker(
            &Constant::parse(&r)?,
            &Constant::parse(&s)?,
            &rat(&eps)?,
            &rat(&a)?,
            &rat(&b)?,
            limits,
        )),
        Command::LatticeSum { z, eps, cube } => {
            trace_line(density::trace_lattice_sum(&CubicPair::new(cube)?, &LatticeTarget::parse(&unprotect(&z))?, &rat(&eps)?, limits))
        }
        Command::Biquad { z, eps } => trace_line(density::trace_biquad(&gaussian(&z)?, &rat(&eps)?)),
        Command::Replay { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidParams(format!("cannot read '{file}': {e}")))?;
            Ok(one(density::replay(&text)?.to_json()))
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    json!({"error": kind, "message": message}).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(protect_negatives(std::env::args())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io::stdout(), "{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", error_json("usage", first));
            return ExitCode::from(2);
        }
    };
    let mut limits = Limits::default();
    if let Some(b) = cli.global.budget {
        limits.budget = b;
    }
    if let Some(p) = cli.global.max_precision {
        limits.max_precision = p;
    }
    match dispatch(cli.cmd, &cli.global, &limits) {
        Ok(out) => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            let res = match out {
                Output::Lines(lines) => lines.iter().try_for_each(|l| writeln!(w, "{l}")),
                Output::Csv(s) => w.write_all(s.as_bytes()),
            };
            match res.and_then(|_| w.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}", error_json("io", &e.to_string()));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}
