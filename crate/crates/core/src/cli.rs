//! Batch front end: one JSON request in, one JSON report out.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liealg::{audit_generic_fiber, audit_null_cone};
use crate::lifting::{is_nilpotent_y, theta_with_limit, transport_report_with_limit};
use crate::quotients::DEFAULT_MAX_MINORS;
use crate::scenarios::{predicted_x_invariants, y_invariants, Dims, Scenario, ScenarioId, YPoint};
use crate::spherical::{hilbert_trivial_lift, oracle_invariant_dim, ORACLE_MAX_DEGREE, ORACLE_MAX_VARIABLES};

pub const MAX_MINORS_VAR: &str = "ORBITLIFT_MAX_MINORS";
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Verb {
    Lift,
    Audit,
    Hilbert,
    Invariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub verb: Verb,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioId>,
    #[serde(default)]
    pub dims: Dims,
    #[serde(default, alias = "y", skip_serializing_if = "Option::is_none")]
    pub payload: Option<YPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

impl Request {
    pub fn new(verb: Verb) -> Self {
        Self {
            verb,
            scenario: None,
            dims: Dims::default(),
            payload: None,
            samples: None,
            seed: None,
            oracle: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "orbitlift",
    version,
    about = "Exact orbit lifting between quotient spaces"
)]
pub struct Args {
    pub verb: Verb,
    /// Scenario id, e.g. T3.1 or DSZ-A.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Dimensions as k=v pairs separated by commas.
    #[arg(long, value_parser = parse_dims)]
    pub dims: Option<Dims>,
    /// JSON request file; flags given on the command line take precedence.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Report destination (stdout by default).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-check Hilbert coefficients against the brute-force oracle.
    #[arg(long)]
    pub oracle: bool,
}

pub fn parse_dims(s: &str) -> std::result::Result<Dims, String> {
    let mut dims = Dims::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected k=v, got `{part}`"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad value in `{part}`"))?;
        dims.set(k.trim(), v);
    }
    Ok(dims)
}

/// Builds the request from an optional file and the command-line flags.
pub fn request_from_args(args: &Args) -> Result<Request> {
    let mut req = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Request(format!("cannot read {}: {e}", path.display())))?;
            let mut value: Value = serde_json::from_str(&text).map_err(|e| Error::Request(e.to_string()))?;
            if let Value::Object(map) = &mut value {
                map.entry("verb").or_insert_with(|| json!(args.verb));
            }
            serde_json::from_value::<Request>(value).map_err(|e| Error::Request(e.to_string()))?
        }
        None => Request::new(args.verb),
    };
    if req.verb != args.verb {
        return Err(Error::Request(format!(
            "request file is for `{}`, command line asks for `{}`",
            json!(req.verb).as_str().unwrap_or_default(),
            json!(args.verb).as_str().unwrap_or_default()
        )));
    }
    if let Some(id) = &args.scenario {
        req.scenario = Some(ScenarioId::parse(id)?);
    }
    if let Some(d) = &args.dims {
        for (k, v) in d.iter() {
            req.dims.set(k, *v);
        }
    }
    if args.samples.is_some() {
        req.samples = args.samples;
    }
    if args.seed.is_some() {
        req.seed = args.seed;
    }
    if args.oracle {
        req.oracle = Some(true);
    }
    Ok(req)
}

/// Reads the Plücker enumeration cap from the environment.
pub fn max_minors_from_env() -> Result<usize> {
    match std::env::var(MAX_MINORS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Request(format!(
                "{MAX_MINORS_VAR} must be a nonnegative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_MINORS),
    }
}

fn scenario_of(req: &Request) -> Result<Scenario> {
    let id = req
        .scenario
        .ok_or_else(|| Error::Request("this verb needs a scenario".into()))?;
    Scenario::new(id, &req.dims)
}

fn payload_of(req: &Request) -> Result<&YPoint> {
    req.payload
        .as_ref()
        .ok_or_else(|| Error::Request("this verb needs a payload y".into()))
}

fn scenario_block(s: &Scenario) -> Value {
    json!({
        "id": s.id(),
        "dims": s.dims(),
        "condition": s.condition(),
        "G": s.g_factors().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "G'": s.gp_factors().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "dim_W": s.dim_w(),
        "dim_Y": s.dim_y(),
    })
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn big(n: &BigInt) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Evaluates a request. The report is a deterministic function of the request.
pub fn run(req: &Request, max_minors: usize) -> Result<Value> {
    let mut report = serde_json::Map::new();
    report.insert("tool".into(), json!("orbitlift"));
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("request".into(), to_json(req)?);
    match req.verb {
        Verb::Lift => {
            let s = scenario_of(req)?;
            let y = payload_of(req)?;
            s.check_y(y)?;
            let lift = theta_with_limit(&s, y, max_minors)?;
            let transport = transport_report_with_limit(&s, y, max_minors)?;
            if !transport.passed {
                return Err(Error::Internal(format!(
                    "transport identities failed: {:?}",
                    transport.checks
                )));
            }
            report.insert("scenario".into(), scenario_block(&s));
            report.insert("lift".into(), to_json(&lift)?);
            report.insert("transport".into(), to_json(&transport)?);
        }
        Verb::Invariants => {
            let s = scenario_of(req)?;
            let y = payload_of(req)?;
            report.insert("scenario".into(), scenario_block(&s));
            report.insert("y_invariants".into(), to_json(&y_invariants(&s, y)?)?);
            report.insert(
                "predicted_x_invariants".into(),
                to_json(&predicted_x_invariants(&s, y)?)?,
            );
            report.insert("nilpotency".into(), to_json(&is_nilpotent_y(&s, y)?)?);
        }
        Verb::Audit => {
            let s = scenario_of(req)?;
            let seed = req
                .seed
                .ok_or_else(|| Error::Request("audit needs an explicit seed".into()))?;
            let samples = req.samples.unwrap_or(DEFAULT_SAMPLES);
            let null_cone = audit_null_cone(&s, samples, seed);
            let generic = audit_generic_fiber(&s, samples, seed);
            let passed = null_cone.status.passed() && generic.status.passed();
            report.insert("scenario".into(), scenario_block(&s));
            report.insert("null_cone".into(), to_json(&null_cone)?);
            report.insert("generic_fiber".into(), to_json(&generic)?);
            report.insert("status".into(), json!(if passed { "PASS" } else { "FAIL" }));
        }
        Verb::Hilbert => {
            let n = req.dims.get("n")?;
            let m = req.dims.get("m")?;
            let d_max = req.dims.get("d_max")?;
            let coeffs = hilbert_trivial_lift(n, m, d_max)?;
            report.insert("grading".into(), json!("W"));
            report.insert(
                "coefficients".into(),
                Value::Array(coeffs.iter().map(big).collect()),
            );
            if req.oracle == Some(true) {
                if 2 * n * m > ORACLE_MAX_VARIABLES {
                    return Err(Error::Guard(format!(
                        "oracle needs 2nm <= {ORACLE_MAX_VARIABLES}, got {}",
                        2 * n * m
                    )));
                }
                let mut oracle = Vec::new();
                let mut agree = true;
                for (d, c) in coeffs.iter().enumerate() {
                    if d > ORACLE_MAX_DEGREE {
                        oracle.push(Value::Null);
                        continue;
                    }
                    let o = oracle_invariant_dim(n, m, d)?;
                    agree &= BigInt::from(o) == *c;
                    oracle.push(json!(o));
                }
                report.insert("oracle".into(), Value::Array(oracle));
                report.insert("agree".into(), json!(agree));
            }
        }
    }
    Ok(Value::Object(report))
}

/// Exit code for an error: 3 for internal assertion failures, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

pub fn render(report: &Value) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("JSON values always serialize");
    text.push('\n');
    text
}

/// Parses arguments, runs the request and writes the report; returns the exit code.
pub fn main_with(args: Args) -> i32 {
    let outcome = max_minors_from_env().and_then(|limit| {
        let req = request_from_args(&args)?;
        run(&req, limit)
    });
    match outcome {
        Ok(report) => {
            let text = render(&report);
            match &args.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RationalMatrix;

    fn request(verb: Verb, scenario: Option<ScenarioId>, dims: &[(&str, usize)]) -> Request {
        Request {
            scenario,
            dims: Dims::from_pairs(dims.iter().copied()),
            ..Request::new(verb)
        }
    }

    #[test]
    fn dims_flag() {
        let d = parse_dims("n=2, m=1").unwrap();
        assert_eq!(d.get("n").unwrap(), 2);
        assert!(parse_dims("n2").is_err());
    }

    #[test]
    fn lift_trivial_orbit() {
        let mut req = request(Verb::Lift, Some(ScenarioId::DszA), &[("n", 2), ("m", 1)]);
        req.payload = Some(YPoint::single(RationalMatrix::zeros(1, 1)));
        let report = run(&req, DEFAULT_MAX_MINORS).unwrap();
        assert_eq!(report["lift"]["x"][0]["coords"], json!(["1", "0", "0", "0"]));
        assert_eq!(report["scenario"]["id"], json!("DSZ-A"));
    }

    #[test]
    fn hilbert_report() {
        let req = request(Verb::Hilbert, None, &[("n", 2), ("m", 1), ("d_max", 4)]);
        let report = run(&req, DEFAULT_MAX_MINORS).unwrap();
        assert_eq!(report["coefficients"], json!([1, 4, 9, 16, 25]));
    }

    #[test]
    fn validation_errors() {
        let req = request(Verb::Lift, Some(ScenarioId::T3_1), &[("n", 2), ("m", 1)]);
        let err = run(&req, DEFAULT_MAX_MINORS).unwrap_err();
        assert!(err.to_string().contains("requires 2m < n"));
        assert_eq!(exit_code(&err), 2);

        let req = request(Verb::Audit, Some(ScenarioId::T3_1), &[("n", 3), ("m", 1)]);
        assert!(run(&req, DEFAULT_MAX_MINORS).is_err());

        let bad: std::result::Result<Request, _> =
            serde_json::from_str(r#"{"verb":"lift","scenario":"T3.1","dims":{"n":3,"m":1},"y":[["x"]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn request_json_round_trip() {
        let text = r#"{"verb":"lift","scenario":"DSZ-A","dims":{"m":1,"n":2},"payload":[["1/2"]]}"#;
        let req: Request = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&req).unwrap(), text);
    }
}
