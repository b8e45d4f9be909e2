//! Seeded self-check suites behind `mdir verify`.
//!
//! Every suite is a deterministic function of the seed. Each property
//! reports pass and fail counts; failing cases become rows of a CSV table.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::analysis::{
    find_alpha, in_region_zfr, in_region_zfr2, inverse_bound_violation, zeta_enclosure, AlphaSearch, GrowthBound,
    ZETA_TERMS,
};
use crate::error::{Error, Result};
use crate::function::{builtin, ArithFunction, Builtin, Scalar};
use crate::index::{IndexBox, MultiIndex};
use crate::io::{function_from_json, function_to_json};
use crate::numtheory::factorize;
use crate::ring::{add, convolve, invert};
use crate::series::{
    eval_certified, eval_truncated, product_identity_check, reciprocal_check, star_decomposition_check,
    sum_identity_check, BuiltinSeries, SeriesPoint,
};
use crate::ufd::encoding::{encode_r, series_mul, PrimePositionBasis};
use crate::ufd::{divide_by_unit, norm, subring_membership, Subring};

/// Random rational `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=9)))
}

fn random_nonzero(rng: &mut impl Rng) -> Scalar {
    loop {
        let q = random_scalar(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Random function on `domain`: each index is nonzero with probability
/// `density`; with `unit` the value at `(1,...,1)` is forced nonzero.
pub fn random_function(rng: &mut impl Rng, domain: &IndexBox, density: f64, unit: bool) -> ArithFunction {
    ArithFunction::from_fn(*domain, |n| {
        if (n.is_one() && unit) || rng.gen_bool(density) {
            random_nonzero(rng)
        } else {
            Scalar::zero()
        }
    })
}

/// As [`random_function`], with the support cut down to a subring.
pub fn random_in_subring(
    rng: &mut impl Rng,
    domain: &IndexBox,
    which: Subring,
    density: f64,
    unit: bool,
) -> ArithFunction {
    let f = random_function(rng, domain, density, unit);
    let entries = f.support().filter(|(n, _)| which.admits(n.entries())).map(|(n, v)| (n.clone(), v.clone()));
    ArithFunction::from_entries(*domain, entries.collect::<Vec<_>>()).expect("subset of a valid support")
}

/// Random nonzero function whose support contains an index of coordinate
/// product at most `small`.
pub fn random_sparse_with_small_norm(
    rng: &mut impl Rng,
    domain: &IndexBox,
    density: f64,
    small: u64,
) -> ArithFunction {
    let f = random_function(rng, domain, density, false);
    let candidates: Vec<MultiIndex> = domain.indices().into_iter().filter(|n| n.product() <= small).collect();
    let anchor = candidates.choose(rng).expect("box contains (1,...,1)").clone();
    let mut entries: Vec<(MultiIndex, Scalar)> =
        f.support().filter(|(n, _)| **n != anchor).map(|(n, v)| (n.clone(), v.clone())).collect();
    entries.push((anchor, random_nonzero(rng)));
    ArithFunction::from_entries(*domain, entries).expect("valid entries")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Ufd,
    Analysis,
    Series,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "ufd" => Ok(Suite::Ufd),
            "analysis" => Ok(Suite::Analysis),
            "series" => Ok(Suite::Series),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub property: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FailureRow {
    pub suite: String,
    pub property: String,
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub properties: Vec<PropertyResult>,
    pub failures: Vec<FailureRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, suite: &'static str, property: &'static str, case: String, outcome: std::result::Result<(), String>) {
        let idx = match self.properties.iter().position(|p| p.suite == suite && p.property == property) {
            Some(i) => i,
            None => {
                self.properties.push(PropertyResult { suite, property, passed: 0, failed: 0 });
                self.properties.len() - 1
            }
        };
        match outcome {
            Ok(()) => self.properties[idx].passed += 1,
            Err(detail) => {
                self.properties[idx].failed += 1;
                self.failures.push(FailureRow { suite: suite.into(), property: property.into(), case, detail });
            }
        }
    }

    pub fn write_failures_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
        w.write_record(["suite", "property", "case", "detail"]).map_err(|e| Error::Io(e.to_string()))?;
        for row in &self.failures {
            w.write_record([&row.suite, &row.property, &row.case, &row.detail]).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let status = if p.failed == 0 { "ok" } else { "FAIL" };
            writeln!(f, "{:<9} {:<32} passed {:>4}  failed {:>4}  {status}", p.suite, p.property, p.passed, p.failed)?;
        }
        write!(f, "{} properties, {} failing cases", self.properties.len(), self.failures.len())
    }
}

/// Options for [`run_suite`].
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Directory of function files that must load and round-trip.
    pub fixtures: Option<PathBuf>,
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn err_text(e: Error) -> String {
    e.to_string()
}

fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn core_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport, options: &VerifyOptions) {
    const S: &str = "core";
    let product = IndexBox::product(2, 24).unwrap();
    for i in 0..10 {
        let f = random_function(rng, &product, 0.3, true);
        let outcome = invert(&f, &product)
            .and_then(|inv| convolve(&f, &inv, &product))
            .map_err(err_text)
            .and_then(|p| check(p == builtin("identity_I", product).unwrap(), || "f * f^-1 != I".into()));
        report.record(S, "inverse_round_trip", format!("product:24 #{i}"), outcome);
    }
    let cube = IndexBox::cube(2, 5).unwrap();
    for i in 0..8 {
        let (f, g, h) = (
            random_function(rng, &cube, 0.5, false),
            random_function(rng, &cube, 0.5, false),
            random_function(rng, &cube, 0.5, false),
        );
        let c = |a: &ArithFunction, b: &ArithFunction| convolve(a, b, &cube).unwrap();
        report.record(S, "commutativity", format!("#{i}"), check(c(&f, &g) == c(&g, &f), || "f*g != g*f".into()));
        report.record(
            S,
            "associativity",
            format!("#{i}"),
            check(c(&c(&f, &g), &h) == c(&f, &c(&g, &h)), || "(f*g)*h != f*(g*h)".into()),
        );
        report.record(
            S,
            "distributivity",
            format!("#{i}"),
            check(c(&f, &add(&g, &h).unwrap()) == add(&c(&f, &g), &c(&f, &h)).unwrap(), || {
                "f*(g+h) != f*g + f*h".into()
            }),
        );
        let id = builtin("identity_I", cube).unwrap();
        report.record(S, "identity", format!("#{i}"), check(c(&id, &f) == f, || "I*f != f".into()));
    }
    let line = IndexBox::cube(1, 300).unwrap();
    let mu = invert(&builtin("ones", line).unwrap(), &line).unwrap();
    for n in 1..=300u64 {
        let got = mu.get(&MultiIndex::new(vec![n]).unwrap());
        report.record(S, "mobius", format!("n={n}"), check(got == int(mobius(n)), || format!("got {got}")));
    }
    for i in 0..5 {
        let f = random_function(rng, &product, 0.4, false);
        let outcome = function_to_json(&f)
            .and_then(|text| function_from_json(&text))
            .map_err(err_text)
            .and_then(|g| check(g == f, || "values changed".into()));
        report.record(S, "file_round_trip", format!("#{i}"), outcome);
    }
    if let Some(dir) = &options.fixtures {
        fixture_checks(dir, report);
    }
}

fn fixture_checks(dir: &Path, report: &mut SuiteReport) {
    const S: &str = "core";
    let mut paths: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries.filter_map(|e| e.ok().map(|e| e.path())).collect(),
        Err(e) => {
            report.record(S, "fixtures", dir.display().to_string(), Err(e.to_string()));
            return;
        }
    };
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    for path in paths {
        let outcome = std::fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| function_from_json(&text).map_err(err_text))
            .and_then(|f| {
                let again = function_to_json(&f).and_then(|t| function_from_json(&t)).map_err(err_text)?;
                check(again == f, || "round trip changed values".into())
            });
        report.record(S, "fixtures", path.display().to_string(), outcome);
    }
}

fn ufd_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) {
    const S: &str = "ufd";
    let product = IndexBox::product(2, 40).unwrap();
    for i in 0..15 {
        let f = random_sparse_with_small_norm(rng, &product, 0.05, 6);
        let g = random_sparse_with_small_norm(rng, &product, 0.05, 6);
        let h = convolve(&f, &g, &product).unwrap();
        let (nf, ng, nh) = (norm(&f).value, norm(&g).value, norm(&h).value);
        report.record(S, "norm_multiplicative", format!("#{i}"), check(nh == nf * ng, || format!("{nh} != {nf}*{ng}")));
    }
    let cube = IndexBox::cube(2, 6).unwrap();
    for i in 0..8 {
        let f = random_function(rng, &cube, 0.5, true);
        let g = random_function(rng, &cube, 0.5, false);
        let outcome = divide_by_unit(&g, &f, &cube)
            .and_then(|h| convolve(&f, &h, &cube))
            .map_err(err_text)
            .and_then(|back| check(back == g, || "f * (g/f) != g".into()));
        report.record(S, "divide_by_unit", format!("#{i}"), outcome);
    }
    let cube3 = IndexBox::cube(3, 6).unwrap();
    for which in [Subring::Star, Subring::EulerZagier, Subring::MordellTornheim] {
        for i in 0..6 {
            let f = random_in_subring(rng, &cube3, which, 0.4, false);
            let g = random_in_subring(rng, &cube3, which, 0.4, false);
            let h = convolve(&f, &g, &cube3).unwrap();
            report.record(
                S,
                "subring_closure",
                format!("{which} #{i}"),
                check(subring_membership(&h, which), || "product left the subring".into()),
            );
        }
    }
    for i in 0..6 {
        let f = random_in_subring(rng, &cube3, Subring::Star, 0.4, true);
        let outcome = invert(&f, &cube3)
            .map_err(err_text)
            .and_then(|inv| check(subring_membership(&inv, Subring::Star), || "inverse left the subring".into()));
        report.record(S, "subring_inverse", format!("star #{i}"), outcome);
    }
    let small = IndexBox::product(2, 20).unwrap();
    let basis = PrimePositionBasis::for_box(&small);
    for i in 0..5 {
        let f = random_function(rng, &small, 0.3, false);
        let g = random_function(rng, &small, 0.3, false);
        let lhs = encode_r(&convolve(&f, &g, &small).unwrap(), &basis).unwrap();
        let rhs = series_mul(&encode_r(&f, &basis).unwrap(), &encode_r(&g, &basis).unwrap()).unwrap();
        report.record(S, "r_map_homomorphism", format!("#{i}"), check(lhs == rhs, || "R(f*g) != R(f)R(g)".into()));
    }
}

fn analysis_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) {
    const S: &str = "analysis";
    let search = AlphaSearch::default();
    for k in 1..=3 {
        let b = GrowthBound::bounded(1.0, k).unwrap();
        let outcome = find_alpha(&b, 1.0, &search).map_err(err_text).and_then(|fit| {
            let z = zeta_enclosure(fit.offset, ZETA_TERMS).map_err(err_text)?.upper;
            let product = (0..k).fold(1.0f64, |acc, _| (acc * z).next_up());
            check(product <= 2.0, || format!("zeta product {product} > 2"))
        });
        report.record(S, "alpha_certified", format!("k={k}"), outcome);
    }
    let cube = IndexBox::cube(2, 10).unwrap();
    for i in 0..6 {
        // bounded random unit: |f(n)| <= 9 = C
        let f = random_function(rng, &cube, 0.5, true);
        let b = GrowthBound::bounded(9.0, 2).unwrap();
        let f1 = num_traits::ToPrimitive::to_f64(&num_traits::Signed::abs(&f.at_one())).unwrap();
        let outcome = find_alpha(&b, f1, &search)
            .and_then(|fit| inverse_bound_violation(&f, &fit.alpha, &cube))
            .map_err(err_text)
            .and_then(|v| check(v.is_none(), || format!("violated at {}", v.unwrap())));
        report.record(S, "inverse_bound", format!("#{i}"), outcome);
    }
    for (a, reference) in [(2.0, 1.644_934_066_848_226_4), (3.0, 1.202_056_903_159_594_3), (4.0, 1.082_323_233_711_138_2)]
    {
        let outcome = zeta_enclosure(a, 2000)
            .map_err(err_text)
            .and_then(|e| check(e.contains(reference), || format!("{e:?} misses {reference}")));
        report.record(S, "zeta_enclosure", format!("a={a}"), outcome);
    }
    for i in 0..20 {
        let alpha = crate::analysis::AlphaVector(vec![rng.gen_range(0.0..3.0)]);
        let s = [Complex64::new(rng.gen_range(0.0..6.0), rng.gen_range(-50.0..50.0))];
        let (a, b) = (in_region_zfr(&s, &alpha), in_region_zfr2(&s, &alpha));
        report.record(S, "region_k1_agreement", format!("#{i}"), check(a == b, || format!("{s:?}")));
    }
}

fn series_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) {
    const S: &str = "series";
    let search = AlphaSearch::default();
    let cases: [(Builtin, bool, Vec<f64>); 4] = [
        (Builtin::Star, false, vec![4.0]),
        (Builtin::Star, false, vec![4.5, 4.5]),
        (Builtin::EulerZagier, true, vec![4.5, 4.5]),
        (Builtin::Star, false, vec![3.0, 6.0]),
    ];
    for (kind, plus_identity, s) in cases {
        let k = s.len();
        let b = GrowthBound::bounded(1.0, k).unwrap();
        let label = format!("{}{} at {s:?}", kind.name(), if plus_identity { "+I" } else { "" });
        let outcome = find_alpha(&b, 1.0, &search)
            .and_then(|fit| {
                let point = SeriesPoint::real(&s)?;
                if plus_identity {
                    let cube = IndexBox::cube(k, 80)?;
                    let f = add(&kind.materialize(cube)?, &builtin("identity_I", cube)?)?;
                    reciprocal_check(&f, &b, &fit.alpha, &point, 80)
                } else {
                    reciprocal_check(&BuiltinSeries::new(kind, k)?, &b, &fit.alpha, &point, 80)
                }
            })
            .map_err(err_text)
            .and_then(|r| check(r.pass, || format!("deviation {} > radius {}", r.deviation, r.combined_radius)));
        report.record(S, "reciprocal", label, outcome);
    }
    for s in [[2.0, 2.0], [0.5, 2.6], [3.0, 4.0]] {
        let outcome = star_decomposition_check(&SeriesPoint::real(&s).unwrap(), 100)
            .map_err(err_text)
            .and_then(|r| check(r.pass, || format!("delta {} > slack {}", r.delta, r.slack)));
        report.record(S, "star_decomposition", format!("{s:?}"), outcome);
    }
    let cube = IndexBox::cube(2, 20).unwrap();
    let b = GrowthBound::bounded(9.0, 2).unwrap();
    let s6 = SeriesPoint::real(&[6.0, 6.0]).unwrap();
    for i in 0..5 {
        let f = random_function(rng, &cube, 0.5, false);
        let g = random_function(rng, &cube, 0.5, false);
        let outcome = product_identity_check(&f, &g, &b, &b, &s6, 20)
            .map_err(err_text)
            .and_then(|r| check(r.pass, || format!("delta {} > slack {}", r.delta, r.slack)));
        report.record(S, "homomorphism_product", format!("#{i}"), outcome);
        let outcome = sum_identity_check(&f, &g, &s6, 20)
            .map_err(err_text)
            .and_then(|r| check(r.pass, || format!("delta {} > slack {}", r.delta, r.slack)));
        report.record(S, "homomorphism_sum", format!("#{i}"), outcome);
    }
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    for t in [100, 1000, 10_000] {
        let ones = BuiltinSeries::new(Builtin::Ones, 1).unwrap();
        let outcome = eval_certified(&ones, &GrowthBound::bounded(1.0, 1).unwrap(), &SeriesPoint::real(&[2.0]).unwrap(), t)
            .map_err(err_text)
            .and_then(|r| check(r.contains(Complex64::new(zeta2, 0.0)), || format!("{r:?}")));
        report.record(S, "containment", format!("T={t}"), outcome);
    }
    for kind in Builtin::ALL {
        let s: SeriesPoint = "3,1.5;2.5,-4;4,0.5".parse().unwrap();
        let f = BuiltinSeries::new(kind, 3).unwrap();
        let a = eval_truncated(&f, &s, 15).unwrap();
        let b = eval_truncated(&f, &s.conj(), 15).unwrap();
        report.record(S, "conjugate_symmetry", kind.name().into(), check((a.conj() - b).norm() <= 1e-13, || format!("{a} vs {b}")));
    }
}

/// Runs a suite with a fixed seed.
pub fn run_suite(suite: Suite, seed: u64, options: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = suite == Suite::All;
    if all || suite == Suite::Core {
        core_suite(&mut rng, &mut report, options);
    }
    if all || suite == Suite::Ufd {
        ufd_suite(&mut rng, &mut report);
    }
    if all || suite == Suite::Analysis {
        analysis_suite(&mut rng, &mut report);
    }
    if all || suite == Suite::Series {
        series_suite(&mut rng, &mut report);
    }
    report
}
