//! Command-line front end.

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::limits::{decide_limit, BranchResult, BranchValue, LimitConfig, LimitOutcome, Verdict};
use crate::polyq::{parse_poly, shift_origin, BivarPoly};
use crate::series::SeriesTerm;

pub const EXIT_EXISTS: i32 = 0;
pub const EXIT_DOES_NOT_EXIST: i32 = 1;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_INPUT: i32 = 64;

/// Decide whether lim f(x,y)/g(x,y) exists as (x,y) approaches a point,
/// and compute it when it does.
///
/// Exit codes: 0 exists, 1 does not exist, 2 undefined, 3 inconclusive,
/// 64 input error.
#[derive(Parser, Clone, Debug, PartialEq)]
#[command(name = "limit2", version)]
pub struct CliRequest {
    /// Numerator polynomial, e.g. "6*x^3*y".
    pub f: String,
    /// Denominator polynomial, e.g. "2*x^4+y^4".
    pub g: String,
    /// Truncation order N of the series expansions.
    #[arg(long, default_value_t = 20)]
    pub order: i64,
    /// Working precision in bits.
    #[arg(long, env = "LIMIT2_PRECISION", default_value_t = 192)]
    pub precision: u32,
    /// Limit point "a,b" (rationals or decimals); defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
    /// Print every trajectory and the diagnostics.
    #[arg(long)]
    pub verbose: bool,
    /// Skip the check that g has an isolated zero at the point.
    #[arg(long)]
    pub no_isolated_check: bool,
}

impl CliRequest {
    pub fn new(f: &str, g: &str) -> Self {
        Self {
            f: f.into(),
            g: g.into(),
            order: 20,
            precision: 192,
            point: None,
            json: false,
            verbose: false,
            no_isolated_check: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonBranch {
    pub half_plane: String,
    pub ram_exp: u32,
    pub trajectory: String,
    pub series: Vec<SeriesTerm>,
    /// Last known exponent of the series, absent when exact.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trunc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub limit_value: Option<f64>,
    /// "+infinity" or "-infinity".
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub infinite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonConfig {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "P")]
    pub p: u32,
    #[serde(rename = "retriesUsed")]
    pub retries_used: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonOutcome {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub branches: Vec<JsonBranch>,
    pub config: JsonConfig,
    pub diagnostics: Vec<String>,
}

/// Parses, decides and renders one request.
pub fn run(req: &CliRequest) -> CliOutput {
    match prepare(req).and_then(|(f, g, cfg)| decide(&f, &g, &cfg)) {
        Ok(out) => render(req, &out),
        Err(e) => render_error(req, &e),
    }
}

fn prepare(req: &CliRequest) -> Result<(BivarPoly, BivarPoly, LimitConfig), EngineError> {
    let mut f = parse_poly(&req.f)?;
    let mut g = parse_poly(&req.g)?;
    if let Some(pt) = &req.point {
        let (a, b) = parse_point(pt)?;
        f = shift_origin(&f, &a, &b);
        g = shift_origin(&g, &a, &b);
    }
    let cfg = LimitConfig {
        order: req.order,
        precision: req.precision,
        check_isolated_zero: !req.no_isolated_check,
        ..LimitConfig::default()
    };
    cfg.validate()?;
    if req.precision > 1 << 16 || req.order > 1 << 12 {
        return Err(EngineError::InputError(
            "order or precision too large".into(),
        ));
    }
    Ok((f, g, cfg))
}

fn decide(f: &BivarPoly, g: &BivarPoly, cfg: &LimitConfig) -> Result<LimitOutcome, EngineError> {
    std::panic::catch_unwind(|| decide_limit(f, g, cfg))
        .unwrap_or_else(|_| Err(EngineError::Internal("engine panicked".into())))
}

fn parse_point(s: &str) -> Result<(rug::Rational, rug::Rational), EngineError> {
    let bad =
        || EngineError::InputError(format!("point must be \"a,b\" with rational a, b: {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let coord = |t: &str| -> Result<rug::Rational, EngineError> {
        let p = parse_poly(t).map_err(|_| bad())?;
        if p.is_constant() {
            Ok(p.constant_term())
        } else {
            Err(bad())
        }
    };
    Ok((coord(a)?, coord(b)?))
}

fn verdict_parts(v: &Verdict) -> (&'static str, Option<f64>, Option<String>, i32) {
    match v {
        Verdict::Exists(l) => ("exists", Some(*l), None, EXIT_EXISTS),
        Verdict::DoesNotExist => ("does_not_exist", None, None, EXIT_DOES_NOT_EXIST),
        Verdict::Undefined(d) => ("undefined", None, Some(d.clone()), EXIT_UNDEFINED),
        Verdict::Inconclusive(d) => ("inconclusive", None, Some(d.clone()), EXIT_INCONCLUSIVE),
    }
}

fn json_branch(b: &BranchResult, digits: usize) -> JsonBranch {
    let t = &b.trajectory;
    let (limit_value, infinite, status) = match &b.value {
        BranchValue::Finite(v) => (Some(*v), None, None),
        BranchValue::PosInfinity => (None, Some("+infinity".to_string()), None),
        BranchValue::NegInfinity => (None, Some("-infinity".to_string()), None),
        BranchValue::DenominatorVanishes => (None, None, Some("denominator vanishes".to_string())),
        BranchValue::Inconclusive(r) => (None, None, Some(format!("inconclusive: {r}"))),
    };
    JsonBranch {
        half_plane: format!("{:?}", t.half_plane),
        ram_exp: t.ram_exp,
        trajectory: t.describe(),
        series: t.a.to_terms_json(digits),
        trunc: t.a.trunc_exponent().map(|e| e.to_string()),
        limit_value,
        infinite,
        status,
    }
}

pub fn to_json(out: &LimitOutcome) -> JsonOutcome {
    let (verdict, value, detail, _) = verdict_parts(&out.verdict);
    let digits = (out.config.precision as f64 * std::f64::consts::LOG10_2) as usize;
    JsonOutcome {
        verdict: verdict.into(),
        value,
        detail,
        branches: out
            .branches
            .iter()
            .map(|b| json_branch(b, digits))
            .collect(),
        config: JsonConfig {
            n: out.config.order,
            p: out.config.precision,
            retries_used: out.retries_used,
        },
        diagnostics: out.diagnostics.clone(),
    }
}

/// `v` with `digits` significant digits, trailing zeros removed.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let e = v.abs().log10().floor() as i32;
    if !(-5..=15).contains(&e) {
        let s = format!("{:.*e}", digits - 1, v);
        let (m, x) = s.split_once('e').unwrap();
        let m = if m.contains('.') {
            m.trim_end_matches('0').trim_end_matches('.')
        } else {
            m
        };
        return format!("{m}e{x}");
    }
    let decimals = (digits as i32 - 1 - e).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn value_text(v: &BranchValue) -> String {
    match v {
        BranchValue::Finite(x) => format_sig(*x, 10),
        BranchValue::PosInfinity => "+infinity".into(),
        BranchValue::NegInfinity => "-infinity".into(),
        BranchValue::DenominatorVanishes => "undefined".into(),
        BranchValue::Inconclusive(_) => "?".into(),
    }
}

fn render(req: &CliRequest, out: &LimitOutcome) -> CliOutput {
    let (_, _, _, code) = verdict_parts(&out.verdict);
    let stdout = if req.json {
        let mut s = serde_json::to_string_pretty(&to_json(out)).expect("serializable outcome");
        s.push('\n');
        s
    } else {
        human(req, out)
    };
    CliOutput {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn human(req: &CliRequest, out: &LimitOutcome) -> String {
    let mut s = match &out.verdict {
        Verdict::Exists(l) => format!("limit exists: {}\n", format_sig(*l, 10)),
        Verdict::DoesNotExist => "limit does not exist\n".to_string(),
        Verdict::Undefined(d) => format!("limit undefined: {d}\n"),
        Verdict::Inconclusive(d) => format!("inconclusive: {d}\n"),
    };
    if !out.branches.is_empty() {
        let vals: Vec<String> = out.branches.iter().map(|b| value_text(&b.value)).collect();
        s.push_str(&format!("branch values: [{}]\n", vals.join(", ")));
    }
    if req.verbose {
        for b in &out.branches {
            s.push_str(&format!(
                "  {} -> {}\n",
                b.trajectory.describe(),
                value_text(&b.value)
            ));
        }
        s.push_str(&format!(
            "order N = {}, precision P = {}, retries = {}\n",
            out.config.order, out.config.precision, out.retries_used
        ));
        for d in &out.diagnostics {
            s.push_str(&format!("note: {d}\n"));
        }
    }
    s
}

fn render_error(req: &CliRequest, e: &EngineError) -> CliOutput {
    let code = match e {
        EngineError::Parse(_) | EngineError::InputError(_) => EXIT_INPUT,
        EngineError::IsolatedZeroViolated(_) => EXIT_UNDEFINED,
        _ => EXIT_INCONCLUSIVE,
    };
    let kind = match e {
        EngineError::Parse(_) => "parse_error",
        EngineError::InputError(_) => "input_error",
        EngineError::IsolatedZeroViolated(_) => "isolated_zero_violated",
        _ => "engine_error",
    };
    let message = e.to_string();
    if req.json {
        let v = serde_json::json!({ "error": kind, "message": message });
        CliOutput {
            code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&v).unwrap()),
            stderr: String::new(),
        }
    } else {
        CliOutput {
            code,
            stdout: String::new(),
            stderr: format!("error ({kind}): {message}\n"),
        }
    }
}
