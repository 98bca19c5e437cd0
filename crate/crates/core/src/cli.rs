//! Job dispatch behind the `qstab` binary: one command, JSON report out.

use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::io::{self, AnyPolynomial, InputError, PolynomialInput};
use crate::linalg::LinalgError;
use crate::matpoly::{polyeig_pairs, MatrixPolynomial, PolyError};
use crate::multivar::{self, CubicLeading, MultiError, QuadraticForm};
use crate::quat::Quaternion;
use crate::stability::{
    check_hyperstability_with, check_stability, eigenpair_residual, eigenvalue_annulus, sample_numerical_range,
    HyperOptions, HyperVerdict, Region, StabilityError, StabilityVerdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Eig,
    Bounds,
    Stable,
    Hyperstable,
    Nrange,
    Multivar,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eig => "eig",
            Command::Bounds => "bounds",
            Command::Stable => "stable",
            Command::Hyperstable => "hyperstable",
            Command::Nrange => "nrange",
            Command::Multivar => "multivar",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormArg {
    I,
    Ii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CubicArg {
    Literal,
    A3,
}

/// One invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub input: PathBuf,
    pub region: Option<PathBuf>,
    pub samples: usize,
    pub seed: u64,
    pub closed: bool,
    pub form: Option<FormArg>,
    pub cubic_leading: Option<CubicArg>,
    /// Include wall-clock timings (makes output run-dependent).
    pub timings: bool,
}

impl JobSpec {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        JobSpec {
            command,
            input: input.into(),
            region: None,
            samples: 500,
            seed: 42,
            closed: false,
            form: None,
            cubic_leading: None,
            timings: false,
        }
    }
}

/// Exit code and JSON report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    /// Pretty JSON with every float rounded to 12 significant digits.
    pub fn render(&self) -> String {
        let mut v = self.report.clone();
        round_floats(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ResidualFailure { .. }
            | PolyError::Linalg(LinalgError::NoConvergence { .. })
            | PolyError::Linalg(LinalgError::PairingFailure { .. }) => Failure::Numerical(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<StabilityError> for Failure {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Poly(p) => p.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<MultiError> for Failure {
    fn from(e: MultiError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Body {
    result: Value,
    certificate: Value,
    witness: Value,
    residuals: Value,
}

pub fn run(job: &JobSpec) -> Outcome {
    let start = Instant::now();
    let mut report = Map::new();
    report.insert("command".into(), json!(job.command.name()));
    report.insert("inputs".into(), inputs(job));
    let code = match dispatch(job) {
        Ok(body) => {
            report.insert("result".into(), body.result);
            report.insert("certificate".into(), body.certificate);
            report.insert("witness".into(), body.witness);
            report.insert("diagnostics".into(), json!({ "residuals": body.residuals, "timings_ms": timings(job, start) }));
            EXIT_OK
        }
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Input(m) => ("input", m, EXIT_INPUT),
                Failure::Numerical(m) => ("numerical", m, EXIT_NUMERICAL),
            };
            report.insert("error".into(), json!({ "kind": kind, "message": msg }));
            report.insert("diagnostics".into(), json!({ "residuals": [], "timings_ms": timings(job, start) }));
            code
        }
    };
    Outcome { code, report: Value::Object(report) }
}

fn inputs(job: &JobSpec) -> Value {
    let mut m = Map::new();
    m.insert("input".into(), json!(job.input.display().to_string()));
    if let Some(r) = &job.region {
        m.insert("region".into(), json!(r.display().to_string()));
    }
    m.insert("samples".into(), json!(job.samples));
    m.insert("seed".into(), json!(job.seed));
    m.insert("closed".into(), json!(job.closed));
    if let Some(f) = job.form {
        m.insert("form".into(), json!(form(f).tag()));
    }
    if let Some(c) = job.cubic_leading {
        m.insert("cubic_leading".into(), json!(cubic(c).tag()));
    }
    Value::Object(m)
}

fn timings(job: &JobSpec, start: Instant) -> Value {
    if job.timings {
        json!({ "total": start.elapsed().as_secs_f64() * 1e3 })
    } else {
        json!({})
    }
}

fn form(f: FormArg) -> QuadraticForm {
    match f {
        FormArg::I => QuadraticForm::I,
        FormArg::Ii => QuadraticForm::II,
    }
}

fn cubic(c: CubicArg) -> CubicLeading {
    match c {
        CubicArg::Literal => CubicLeading::Literal,
        CubicArg::A3 => CubicLeading::A3,
    }
}

fn region(job: &JobSpec) -> Result<Region, Failure> {
    let path = job.region.as_ref().ok_or_else(|| Failure::Input(format!("{} needs --region", job.command.name())))?;
    Ok(io::load_region(path, job.closed)?)
}

fn dispatch(job: &JobSpec) -> Result<Body, Failure> {
    match job.command {
        Command::Multivar => run_multivar(job),
        _ => {
            let input = io::load_polynomial(&job.input)?;
            match job.command {
                Command::Eig => run_eig(&input.polynomial),
                Command::Bounds => run_bounds(&input.polynomial),
                Command::Stable => Ok(stability_body(&input.polynomial, &check_stability(&input.polynomial, &region(job)?))),
                Command::Hyperstable => run_hyper(job, &input),
                Command::Nrange => Ok(run_nrange(job, &input.polynomial)),
                Command::Multivar => unreachable!(),
            }
        }
    }
}

pub fn quaternion_json(q: Quaternion) -> Value {
    json!(q.to_array())
}

fn vector_json(y: &[Quaternion]) -> Value {
    Value::Array(y.iter().map(|&q| quaternion_json(q)).collect())
}

fn opt_vector(y: &Option<Vec<Quaternion>>) -> Value {
    y.as_deref().map_or(Value::Null, vector_json)
}

fn run_eig(p: &MatrixPolynomial) -> Result<Body, Failure> {
    let pairs = polyeig_pairs(p)?;
    let values: Vec<Value> = pairs
        .iter()
        .map(|e| json!({ "re": e.value.re, "im": e.value.im, "modulus": e.value.modulus() }))
        .collect();
    Ok(Body {
        result: json!({ "eigenvalues": values }),
        certificate: json!("companion-linearization"),
        witness: Value::Null,
        residuals: Value::Array(pairs.iter().map(|e| json!(e.residual)).collect()),
    })
}

fn run_bounds(p: &MatrixPolynomial) -> Result<Body, Failure> {
    let b = eigenvalue_annulus(p)?;
    Ok(Body {
        result: json!({ "r": b.r, "R": b.big_r }),
        certificate: json!("annulus-bounds"),
        witness: Value::Null,
        residuals: json!([]),
    })
}

fn stability_body(p: &MatrixPolynomial, v: &StabilityVerdict) -> Body {
    let residual = match (&v.eigenvector, v.witness) {
        (Some(y), Some(mu)) => eigenpair_residual(p, y, mu).map_or(json!([]), |r| json!([r])),
        _ => json!([]),
    };
    Body {
        result: json!({ "status": v.status, "eigenvector": opt_vector(&v.eigenvector) }),
        certificate: json!(v.certificate),
        witness: v.witness.map_or(Value::Null, quaternion_json),
        residuals: residual,
    }
}

fn hyper_body(v: &HyperVerdict) -> Body {
    Body {
        result: json!({ "status": v.status, "eigenvalue": v.eigenvalue.map_or(Value::Null, quaternion_json) }),
        certificate: json!(v.certificate),
        witness: opt_vector(&v.witness),
        residuals: json!([]),
    }
}

fn run_hyper(job: &JobSpec, input: &PolynomialInput) -> Result<Body, Failure> {
    let opts = HyperOptions { blocks: input.blocks.clone(), range_samples: job.samples, seed: job.seed, ..HyperOptions::default() };
    Ok(hyper_body(&check_hyperstability_with(&input.polynomial, &region(job)?, &opts)))
}

fn run_nrange(job: &JobSpec, p: &MatrixPolynomial) -> Body {
    let nr = sample_numerical_range(p, job.samples, job.seed);
    let points: Vec<Value> =
        nr.points.iter().map(|pt| json!({ "point": quaternion_json(pt.point), "spherical": pt.spherical })).collect();
    Body {
        result: json!({ "points": points, "degenerate": nr.degenerate, "samples": job.samples }),
        certificate: json!("sampled-inner-approximation"),
        witness: Value::Null,
        residuals: json!([]),
    }
}

fn run_multivar(job: &JobSpec) -> Result<Body, Failure> {
    let omega = region(job)?;
    match io::load_any_polynomial(&job.input)? {
        AnyPolynomial::Multivariate(m) => {
            let v = multivar::check_stability_multi(&m, &omega)?;
            let witness = match (&v.tuple, &v.vector) {
                (Some(t), Some(y)) => json!({ "tuple": vector_json(t), "vector": vector_json(y) }),
                _ => Value::Null,
            };
            let residuals = match (&v.tuple, &v.vector) {
                (Some(t), Some(y)) => multivar::eval_action_multi(&m, y, t)
                    .map_or(json!([]), |r| json!([crate::linalg::vec_norm(&r)])),
                _ => json!([]),
            };
            Ok(Body { result: json!({ "status": v.status }), certificate: json!(v.certificate), witness, residuals })
        }
        AnyPolynomial::Univariate(input) => {
            let c = input.polynomial.coeffs();
            match (input.polynomial.degree(), job.form, job.cubic_leading) {
                (2, Some(f), None) => {
                    Ok(hyper_body(&multivar::derive_hyperstability_quadratic(&c[2], &c[1], &c[0], &omega, form(f))?))
                }
                (3, None, lead) => {
                    let lead = lead.map_or(CubicLeading::default(), cubic);
                    Ok(hyper_body(&multivar::derive_hyperstability_cubic(&c[3], &c[2], &c[1], &c[0], &omega, lead)?))
                }
                (d, f, l) => Err(Failure::Input(format!(
                    "multivar needs a two-variable polynomial, a quadratic with --form, or a cubic \
                     (got degree {d}, form {}, cubic-leading {})",
                    f.is_some(),
                    l.is_some()
                ))),
            }
        }
    }
}

/// Rounds every float to 12 significant digits, flushes magnitudes below
/// 1e-15 to zero and clears negative zero.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            let r: f64 = format!("{x:.11e}").parse().expect("float");
            let r = if r.abs() < 1e-15 { 0.0 } else { r };
            *v = if r.fract() == 0.0 && r.abs() < 1e15 { json!(r as i64) } else { json!(r) };
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}
