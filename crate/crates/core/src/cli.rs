//! The `mdir` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 domain
//! error (`NotAUnit`, `OutOfRegion`, ...). Errors are also written to stderr
//! as `{"error": kind, "message": text}`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde_json::json;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use crate::analysis::{
    find_alpha, in_region_abs_ez, in_region_zfr, in_region_zfr2, AlphaSearch, AlphaVector, GrowthBound,
};
use crate::error::{Error, Result};
use crate::function::{ArithFunction, Builtin};
use crate::index::{BoxShape, IndexBox};
use crate::io::{function_to_json, read_function, series_to_json, format_rational, EvalReport};
use crate::ring::{add, convolve, invert};
use crate::series::{eval_certified, eval_truncated, s_prime_membership, BuiltinSeries, Coefficients, SPrime, SeriesPoint};
use crate::ufd::encoding::{encode_r, PrimePositionBasis};
use crate::ufd::{divide_by_unit, divides_on_box, norm, Divisibility};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Box used for built-ins when neither `--box` nor a file fixes one.
const DEFAULT_BOX: u64 = 8;

#[derive(Parser, Debug)]
#[command(name = "mdir", version, about = "Multiple Dirichlet convolution and certified multiple Dirichlet series")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Operands {
    /// Built-in function (identity_I, ones, u_EZ, u_star, u_MT, u_AV); repeatable
    #[arg(long = "builtin")]
    builtins: Vec<String>,
    /// Function file; repeatable
    #[arg(long = "file")]
    files: Vec<PathBuf>,
    /// Arity
    #[arg(long)]
    k: Option<usize>,
    /// Box such as `cube:8` or `product:30`
    #[arg(long = "box")]
    domain: Option<BoxShape>,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output file (stdout when omitted)
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RegionKind {
    Zfr,
    Zfr2,
    Abs,
    Sprime,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Series,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Core,
    Ufd,
    Analysis,
    Series,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dirichlet product of two functions on a box
    Convolve {
        #[command(flatten)]
        operands: Operands,
        #[command(flatten)]
        output: Output,
    },
    /// Sum of two functions
    Add {
        #[command(flatten)]
        operands: Operands,
        #[command(flatten)]
        output: Output,
    },
    /// Inverse of a unit on a box
    Invert {
        #[command(flatten)]
        operands: Operands,
        #[command(flatten)]
        output: Output,
    },
    /// Norm: smallest coordinate product in the support
    Norm {
        #[command(flatten)]
        operands: Operands,
    },
    /// Solve divisor * h = dividend on a box
    Divide {
        /// Built-in name or function file
        #[arg(long)]
        dividend: String,
        /// Built-in name or function file
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "box")]
        domain: Option<BoxShape>,
        #[command(flatten)]
        output: Output,
    },
    /// Exponents for the inverse growth bound
    Alpha {
        #[arg(long = "C", default_value_t = 1.0)]
        c: f64,
        /// Growth exponents, comma separated (one value is broadcast)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        r: Vec<f64>,
        /// |f(1,...,1)|
        #[arg(long)]
        f1: f64,
        #[arg(long)]
        k: usize,
    },
    /// Truncated series value, optionally with a certified radius
    Eval {
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Point as `re,im;re,im;...`
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Cube truncation
        #[arg(long = "T")]
        t: u64,
        #[arg(long)]
        certify: bool,
        #[arg(long = "C", default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        r: Vec<f64>,
        /// Refuse to evaluate unless the point passes this predicate
        #[arg(long = "check-region", value_enum)]
        check_region: Option<RegionKind>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Region predicates at a point
    Region {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<f64>,
        /// Truncation for the S' test
        #[arg(long = "T", default_value_t = 400)]
        t: u64,
    },
    /// Seeded self-check suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of function files that must load and round-trip
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Write failing cases as CSV
        #[arg(long)]
        failures: Option<PathBuf>,
    },
    /// Export a function as a value table or its prime-position series
    Export {
        #[command(flatten)]
        operands: Operands,
        #[arg(long, value_enum, default_value = "table")]
        format: ExportFormat,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.path {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn check_arity(k: Option<usize>, found: usize) -> Result<usize> {
    match k {
        Some(k) if k != found => Err(Error::ArityMismatch { left: k, right: found }),
        _ => Ok(found),
    }
}

/// Resolves built-ins and files into functions on one common box.
fn resolve(builtins: &[String], files: &[PathBuf], k: Option<usize>, shape: Option<BoxShape>) -> Result<(Vec<ArithFunction>, IndexBox)> {
    let loaded: Vec<ArithFunction> = files.iter().map(|p| read_function(p)).collect::<Result<_>>()?;
    let mut arity = k;
    for f in &loaded {
        arity = Some(check_arity(arity, f.arity())?);
    }
    let arity = arity.ok_or_else(|| Error::InvalidArgument("--k is required for built-ins".into()))?;
    let domain = match shape {
        Some(s) => s.with_arity(arity)?,
        None => match loaded.split_first() {
            Some((first, rest)) => rest.iter().try_fold(*first.domain(), |acc, f| acc.intersect(f.domain()))?,
            None => IndexBox::cube(arity, DEFAULT_BOX)?,
        },
    };
    let mut out = Vec::new();
    for name in builtins {
        out.push(crate::function::builtin(name, domain)?);
    }
    for f in loaded {
        out.push(f.restrict(&domain)?);
    }
    Ok((out, domain))
}

fn operands(ops: &Operands, needed: usize) -> Result<(Vec<ArithFunction>, IndexBox)> {
    let total = ops.builtins.len() + ops.files.len();
    if total != needed {
        return Err(Error::InvalidArgument(format!("expected {needed} operand(s), got {total}")));
    }
    resolve(&ops.builtins, &ops.files, ops.k, ops.domain)
}

fn spec_operand(spec: &str, k: Option<usize>, shape: Option<BoxShape>) -> (Vec<String>, Vec<PathBuf>, Option<usize>, Option<BoxShape>) {
    if spec.parse::<Builtin>().is_ok() {
        (vec![spec.to_string()], vec![], k, shape)
    } else {
        (vec![], vec![PathBuf::from(spec)], k, shape)
    }
}

fn broadcast(values: &[f64], k: usize, what: &str) -> Result<Vec<f64>> {
    match values.len() {
        0 => Ok(vec![0.0; k]),
        1 => Ok(vec![values[0]; k]),
        n if n == k => Ok(values.to_vec()),
        n => Err(Error::InvalidArgument(format!("{what} has {n} entries, expected {k}"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    builtin: Option<String>,
    file: Option<PathBuf>,
    k: Option<usize>,
    s: &str,
    t: u64,
    certify: bool,
    c: f64,
    r: &[f64],
    check_region: Option<RegionKind>,
    alpha: &[f64],
    output: &Output,
) -> Result<i32> {
    let point: SeriesPoint = s.parse()?;
    let coeffs: Box<dyn Coefficients> = match (builtin, file) {
        (Some(name), None) => {
            let kind: Builtin = name.parse()?;
            Box::new(BuiltinSeries::new(kind, check_arity(k, point.arity())?)?)
        }
        (None, Some(path)) => Box::new(read_function(&path)?),
        _ => return Err(Error::InvalidArgument("give exactly one of --builtin and --file".into())),
    };
    let k = coeffs.arity();
    check_arity(Some(k), point.arity())?;
    // file-backed functions are truncated at the largest cube they cover
    let t = if coeffs.covers_cube(t) {
        t
    } else {
        let mut covered = t;
        while covered > 0 && !coeffs.covers_cube(covered) {
            covered -= 1;
        }
        if covered == 0 {
            return Err(Error::BoxNotCovered { requested: format!("cube:{t}"), available: "file domain".into() });
        }
        eprintln!("note: truncation reduced from T = {t} to T = {covered}, the largest cube inside the file's box");
        covered
    };
    let bound = GrowthBound::new(c, broadcast(r, k, "--r")?)?;

    let alpha = if !alpha.is_empty() {
        Some(AlphaVector(broadcast(alpha, k, "--alpha")?))
    } else {
        let f1 = coeffs.at_one().abs().to_f64().unwrap_or(0.0);
        if f1 > 0.0 && (certify || matches!(check_region, Some(RegionKind::Zfr | RegionKind::Zfr2))) {
            Some(find_alpha(&bound, f1, &AlphaSearch::default())?.alpha)
        } else {
            None
        }
    };
    let mut checks = BTreeMap::new();
    checks.insert("abs_EZ".to_string(), in_region_abs_ez(point.coords()));
    if let Some(a) = &alpha {
        checks.insert("zfr".to_string(), in_region_zfr(point.coords(), a));
        checks.insert("zfr2".to_string(), in_region_zfr2(point.coords(), a));
    }
    if let Some(kind) = check_region {
        let ok = match kind {
            RegionKind::Abs => checks["abs_EZ"],
            RegionKind::Zfr | RegionKind::Zfr2 => {
                let key = if kind == RegionKind::Zfr { "zfr" } else { "zfr2" };
                *checks.get(key).ok_or(Error::NotAUnit)?
            }
            RegionKind::Sprime => {
                let inside = s_prime_membership(&point, t)? == SPrime::Inside;
                checks.insert("sprime".to_string(), inside);
                inside
            }
        };
        if !ok {
            return Err(Error::OutOfRegion(format!("s = ({point}) fails the {kind:?} check")));
        }
    }

    let (value, radius) = if certify {
        let r = eval_certified(coeffs.as_ref(), &bound, &point, t)?;
        (r.value, Some(r.tail_radius))
    } else {
        (eval_truncated(coeffs.as_ref(), &point, t)?, None)
    };
    let report = EvalReport {
        s: point.coords().iter().map(|z| [z.re, z.im]).collect(),
        t,
        value: [value.re, value.im],
        tail_radius: radius,
        region_checks: checks,
    };
    emit(output, &serde_json::to_string_pretty(&report)?)?;
    Ok(0)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Convolve { operands: ops, output } => {
            let (fs, domain) = operands(&ops, 2)?;
            emit(&output, &function_to_json(&convolve(&fs[0], &fs[1], &domain)?)?)?;
            Ok(0)
        }
        Command::Add { operands: ops, output } => {
            let (fs, _) = operands(&ops, 2)?;
            emit(&output, &function_to_json(&add(&fs[0], &fs[1])?)?)?;
            Ok(0)
        }
        Command::Invert { operands: ops, output } => {
            let (fs, domain) = operands(&ops, 1)?;
            emit(&output, &function_to_json(&invert(&fs[0], &domain)?)?)?;
            Ok(0)
        }
        Command::Norm { operands: ops } => {
            let (fs, _) = operands(&ops, 1)?;
            let n = norm(&fs[0]);
            if n.box_limited {
                eprintln!("note: the box does not contain every index of smaller product; {} is a box value", n.value);
            }
            println!("{}", n.value);
            Ok(0)
        }
        Command::Divide { dividend, divisor, k, domain, output } => {
            let (b1, f1, _, _) = spec_operand(&dividend, k, domain);
            let (b2, f2, _, _) = spec_operand(&divisor, k, domain);
            // keep dividend first, divisor second
            let (mut all, dom) = resolve(&[b1.clone(), b2.clone()].concat(), &[f1.clone(), f2.clone()].concat(), k, domain)?;
            let (g, f) = if b1.is_empty() && !b2.is_empty() {
                let f = all.remove(0);
                (all.remove(0), f)
            } else {
                let g = all.remove(0);
                (g, all.remove(0))
            };
            if f.is_unit() {
                emit(&output, &function_to_json(&divide_by_unit(&g, &f, &dom)?)?)?;
                return Ok(0);
            }
            match divides_on_box(&f, &g, &dom)? {
                Divisibility::SolvableOnBox(h) => {
                    eprintln!("note: solvable on the box; this is a necessary condition for divisibility only");
                    emit(&output, &function_to_json(&h)?)?;
                    Ok(0)
                }
                Divisibility::Inconsistent => {
                    println!("{}", json!({"divides": false, "reason": "inconsistent on the box"}));
                    Ok(1)
                }
            }
        }
        Command::Alpha { c, r, f1, k } => {
            let bound = GrowthBound::new(c, broadcast(&r, k, "--r")?)?;
            let fit = find_alpha(&bound, f1, &AlphaSearch::default())?;
            let report = json!({
                "alpha": fit.alpha.values(),
                "offset": fit.offset,
                "zeta_product_upper": fit.product_upper,
                "threshold": fit.threshold,
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Eval { builtin, file, k, s, t, certify, c, r, check_region, alpha, output } => {
            cmd_eval(builtin, file, k, &s, t, certify, c, &r, check_region, &alpha, &output)
        }
        Command::Region { s, alpha, t } => {
            let point: SeriesPoint = s.parse()?;
            let k = point.arity();
            let mut report = BTreeMap::new();
            report.insert("abs_EZ", json!(in_region_abs_ez(point.coords())));
            if !alpha.is_empty() {
                let a = AlphaVector(broadcast(&alpha, k, "--alpha")?);
                report.insert("zfr", json!(in_region_zfr(point.coords(), &a)));
                report.insert("zfr2", json!(in_region_zfr2(point.coords(), &a)));
            }
            let sprime = match s_prime_membership(&point, t) {
                Ok(m) => format!("{m:?}"),
                Err(Error::OutOfRegion(_)) => "OutOfRegion".to_string(),
                Err(e) => return Err(e),
            };
            report.insert("sprime", json!(sprime));
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Verify { suite, seed, fixtures, failures } => {
            let suite = match suite {
                SuiteArg::Core => Suite::Core,
                SuiteArg::Ufd => Suite::Ufd,
                SuiteArg::Analysis => Suite::Analysis,
                SuiteArg::Series => Suite::Series,
                SuiteArg::All => Suite::All,
            };
            let report = run_suite(suite, seed, &VerifyOptions { fixtures });
            println!("{report}");
            if let Some(path) = failures {
                report.write_failures_csv(&path)?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Export { operands: ops, format, output } => {
            let (fs, domain) = operands(&ops, 1)?;
            let text = match format {
                ExportFormat::Series => series_to_json(&encode_r(&fs[0], &PrimePositionBasis::for_box(&domain))?)?,
                ExportFormat::Table => table(&fs[0]),
            };
            emit(&output, &text)?;
            Ok(0)
        }
    }
}

fn table(f: &ArithFunction) -> String {
    let mut lines = vec![(1..=f.arity()).map(|j| format!("n{j}")).chain(["value".to_string()]).collect::<Vec<_>>().join(",")];
    for (n, v) in f.support() {
        let mut row: Vec<String> = n.entries().iter().map(u64::to_string).collect();
        row.push(format_rational(v));
        lines.push(row.join(","));
    }
    lines.join("\n")
}

fn configure_threads() {
    if let Some(n) = std::env::var("MDIR_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // an already-initialised pool keeps its size
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    configure_threads();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            if e.is_domain_error() {
                3
            } else {
                2
            }
        }
    }
}
