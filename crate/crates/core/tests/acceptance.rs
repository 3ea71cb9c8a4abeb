//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on failure.

mod common;

use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use common::*;
use limit2::cli::{run, CliRequest};
use limit2::limits::{decide_limit, LimitConfig, LimitOutcome, Verdict};
use limit2::polyq::{parse_poly, BivarPoly};
use limit2::series::eps_agg;
use limit2::EngineError;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

static PANICS: AtomicUsize = AtomicUsize::new(0);

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, name: &str, ok: bool, detail: String, started: Instant) {
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} {name}: {detail} [{:.1}s]",
            started.elapsed().as_secs_f64()
        );
    }
}

fn decide(f: &BivarPoly, g: &BivarPoly, order: i64) -> limit2::Result<LimitOutcome> {
    let cfg = LimitConfig {
        order,
        ..LimitConfig::default()
    };
    decide_limit(f, g, &cfg)
}

fn decide_str(f: &str, g: &str, order: i64) -> limit2::Result<LimitOutcome> {
    decide(&parse_poly(f)?, &parse_poly(g)?, order)
}

fn golden(rep: &mut Report) {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for case in golden_cases() {
        let out = match decide_str(case.f, case.g, case.order) {
            Ok(o) => o,
            Err(e) => {
                bad.push(format!("{}: {e}", case.label));
                continue;
            }
        };
        let ok = match &case.expect {
            Expect::Exists(l) => matches!(out.verdict, Verdict::Exists(v) if (v - l).abs() < 1e-6),
            Expect::DoesNotExist(vals, inf) => {
                out.verdict == Verdict::DoesNotExist
                    && same_set(&out.finite_values(), vals, 1e-6)
                    && out.has_infinite() == *inf
            }
            Expect::Undefined => matches!(out.verdict, Verdict::Undefined(_)),
        };
        if !ok {
            bad.push(format!(
                "{}: {:?} {:?}",
                case.label,
                out.verdict,
                out.finite_values()
            ));
        }
    }
    let peak = maximize(|c| 6.0 * c / (2.0 + c.powi(4)), 0.0, 4.0);
    if (peak - PEAK).abs() >= 1e-6 || (2.25 * (2.0f64 / 3.0).powf(0.25) - PEAK).abs() >= 1e-6 {
        bad.push(format!("line maximum {peak}"));
    }
    let secs = t0.elapsed().as_secs_f64();
    if secs >= 60.0 {
        bad.push(format!("took {secs:.1}s"));
    }
    let detail = if bad.is_empty() {
        "10 examples reproduced".to_string()
    } else {
        bad.join("; ")
    };
    rep.line("1 golden examples", bad.is_empty(), detail, t0);
}

fn discussion(rep: &mut Report) {
    let t0 = Instant::now();
    let a = decide_str("x^4-y^2+3*x^2*y-x^2", "x^2+y^2", 20).map(|o| o.verdict);
    let b = decide_str("x^6-y^4+3*x^2*y^3-x^4*y", "x^4+y^4+x^2+y^2", 20).map(|o| o.verdict);
    let ok = matches!(a, Ok(Verdict::Exists(v)) if (v + 1.0).abs() < 1e-6)
        && matches!(b, Ok(Verdict::Exists(v)) if v.abs() < 1e-6);
    rep.line("2 discussion limits", ok, format!("{a:?}, {b:?}"), t0);
}

fn hensel(rep: &mut Report) {
    let t0 = Instant::now();
    let mut rng = rng(3);
    let mut bad = Vec::new();
    let (mut worst_res, mut worst_base): (f64, f64) = (0.0, 0.0);
    for i in 0..200 {
        match hensel_case(&mut rng) {
            Ok(c) => {
                worst_res = worst_res.max(c.residual / c.bound);
                worst_base = worst_base.max(c.base_err / c.base_bound);
                if c.residual > c.bound || c.base_err > c.base_bound {
                    bad.push(format!("case {i} (deg {}, N {})", c.degree, c.order));
                }
            }
            Err(e) => bad.push(format!("case {i}: {e}")),
        }
    }
    let detail = format!(
        "200 cases, worst residual/bound {worst_res:.2e}, worst base/bound {worst_base:.2e}{}",
        failures(&bad)
    );
    rep.line("3 Hensel residual", bad.is_empty(), detail, t0);
}

fn branches(rep: &mut Report) {
    let t0 = Instant::now();
    let mut rng = rng(4);
    let n = 20;
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let mut total = 0;
    let mut own = 0;
    for i in 0..50 {
        match branch_case(&mut rng, n) {
            Ok(c) => {
                total += c.expected;
                own += c.matched_own;
                worst = worst.max(c.max_err);
                if c.found != c.expected || c.matched != c.expected {
                    bad.push(format!(
                        "case {i}: {}/{} matched, {} found",
                        c.matched, c.expected, c.found
                    ));
                }
            }
            Err(e) => bad.push(format!("case {i}: {e}")),
        }
    }
    let detail = format!(
        "50 cases, {total} real branches, N = {n}, worst error {worst:.2e}, {own}/{total} within bound through order N of x^(1/k){}",
        failures(&bad)
    );
    rep.line("4 branch oracle", bad.is_empty(), detail, t0);
}

fn sampling(rep: &mut Report) {
    let t0 = Instant::now();
    let mut rng = rng(5);
    let radii = [1e-2, 1e-3, 1e-4];
    let tol = 10.0 * eps_agg(P);
    let mut bad = Vec::new();
    let (mut exists, mut dne) = (0, 0);
    for i in 0..100 {
        let (f, g) = sampling_pair(&mut rng);
        let out = match decide(&f, &g, 20) {
            Ok(o) => o,
            Err(e) => {
                bad.push(format!("case {i}: {e}"));
                continue;
            }
        };
        match out.verdict {
            Verdict::Exists(l) => {
                exists += 1;
                let dev: Vec<f64> = radii
                    .iter()
                    .map(|&r| sample_circle(&f, &g, r, 720, l).0)
                    .collect();
                let decays = dev[1] <= 0.5 * dev[0] && dev[2] <= 0.5 * dev[1];
                if !(dev[2] < tol || decays) {
                    bad.push(format!("case {i}: L = {l}, deviations {dev:?}"));
                }
            }
            Verdict::DoesNotExist => {
                dne += 1;
                let vals = out.finite_values();
                let gap = vals.iter().cloned().fold(f64::MIN, f64::max)
                    - vals.iter().cloned().fold(f64::MAX, f64::min);
                let (_, lo, hi) = sample_circle(&f, &g, 1e-4, 720, 0.0);
                if vals.len() >= 2 && hi - lo < 0.5 * gap {
                    bad.push(format!(
                        "case {i}: sampled range {} < half gap {gap}",
                        hi - lo
                    ));
                }
            }
            v => bad.push(format!("case {i}: {v:?}")),
        }
    }
    let detail = format!("100 cases ({exists} exist, {dne} do not){}", failures(&bad));
    rep.line("5 sampling cross-validation", bad.is_empty(), detail, t0);
}

fn round_trips(rep: &mut Report) {
    let t0 = Instant::now();
    let mut rng = rng(6);
    let mut bad = Vec::new();
    let worst = transform_round_trip(&mut rng, 100);
    if worst > 1.0 {
        bad.push(format!("transform round trip error/tol {worst:.2e}"));
    }
    for i in 0..200 {
        let p = random_bivar(&mut rng, 6, 6);
        match parse_poly(&p.to_string()) {
            Ok(q) if q == p => {}
            other => bad.push(format!("parse case {i}: {p} -> {other:?}")),
        }
    }
    bad.extend(invariance_failures());
    let detail = format!(
        "transform worst error/tol {worst:.2e}, 200 parses, invariance on 10 examples{}",
        failures(&bad)
    );
    rep.line("6 round trips and invariance", bad.is_empty(), detail, t0);
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => "x".into(),
            1 => "y".into(),
            2 => rng.gen_range(0..20).to_string(),
            3 => format!("{}/{}", rng.gen_range(-9..10), rng.gen_range(1..10)),
            4 => format!("{}.{}", rng.gen_range(0..10), rng.gen_range(0..100)),
            _ => format!(
                "{}^{}",
                if rng.gen_bool(0.5) { "x" } else { "y" },
                rng.gen_range(0..5)
            ),
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => format!("{a} + {}", random_expr(rng, depth - 1)),
        1 => format!("{a} - {}", random_expr(rng, depth - 1)),
        2 => format!("{a}*{}", random_expr(rng, depth - 1)),
        3 => format!("({a})^{}", rng.gen_range(0..4)),
        4 => format!("-({a})"),
        _ => format!("({a})"),
    }
}

fn robustness(rep: &mut Report) {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let code = |f: &str, g: &str| run(&CliRequest::new(f, g)).code;
    if code("x", "0") != 64 || code("x^2", "x-x") != 64 {
        bad.push("g = 0 not rejected with 64".to_string());
    }
    match decide_str("0", "x^2+y^4", 20).map(|o| o.verdict) {
        Ok(Verdict::Exists(0.0)) => {}
        other => bad.push(format!("f = 0: {other:?}")),
    }
    match decide_str("x^2+3*y^4", "x^2+3*y^4", 20) {
        Ok(o)
            if o.verdict == Verdict::Exists(1.0)
                && o.diagnostics
                    .iter()
                    .any(|d| d.contains("critical curve vanishes")) => {}
        other => bad.push(format!(
            "f = g: {:?}",
            other.map(|o| (o.verdict, o.diagnostics))
        )),
    }
    match decide_str("x", "x^2-y^2", 20) {
        Err(EngineError::IsolatedZeroViolated(w)) if !w.is_empty() => {}
        other => bad.push(format!("x^2-y^2: {:?}", other.map(|o| o.verdict))),
    }
    if code("x", "x^2-y^2") != 2 {
        bad.push("x^2-y^2 exit code".to_string());
    }

    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {
        PANICS.fetch_add(1, Ordering::SeqCst);
    }));
    let mut rng = rng(7);
    let mut counts = [0usize; 5];
    for _ in 0..10_000 {
        let f = random_expr(&mut rng, 3);
        let g = random_expr(&mut rng, 3);
        let c = code(&f, &g);
        match [0, 1, 2, 3, 64].iter().position(|&k| k == c) {
            Some(j) => counts[j] += 1,
            None => bad.push(format!("{f:?} / {g:?}: exit {c}")),
        }
    }
    std::panic::set_hook(default_hook);
    let panics = PANICS.load(Ordering::SeqCst);
    if panics > 0 {
        bad.push(format!("{panics} panics"));
    }
    let detail = format!(
        "fuzz exit codes 0/1/2/3/64: {}/{}/{}/{}/{}, {panics} panics{}",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4],
        failures(&bad)
    );
    rep.line("7 robustness", bad.is_empty(), detail, t0);
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        return String::new();
    }
    let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
    format!(", {} failures: {}", bad.len(), shown.join("; "))
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    golden(&mut rep);
    discussion(&mut rep);
    hensel(&mut rep);
    branches(&mut rep);
    sampling(&mut rep);
    round_trips(&mut rep);
    robustness(&mut rep);
    if rep.failed == 0 {
        println!("all 7 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} of 7 criteria failed", rep.failed);
        ExitCode::FAILURE
    }
}
