//! Decision procedure for `lim f/g` at the origin.
//!
//! The extremes of `f/g` on small circles lie on the critical curve
//! `h'' = y (g f_x - f g_x) - x (g f_y - f g_y) = 0`, so the limit exists
//! iff the one-variable limits along every real branch of `h''` through the
//! origin agree. Branches are computed separately for `x > 0` and, through
//! `x -> -x`, for `x < 0`.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::polyq::{self, BivarPoly};
use crate::puiseux::factorize_branches;
use crate::series::{
    compose_poly_series, eps_agg, eps_im, eps_z, CFloat, SeriesYPoly, TruncSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitConfig {
    /// Truncation order `N` of every series.
    pub order: i64,
    /// Working precision in bits.
    pub precision: u32,
    /// Escalations allowed, each doubling `order` and `precision`.
    pub max_retries: u32,
    pub check_isolated_zero: bool,
}

impl Default for LimitConfig {
    fn default() -> Self {
        Self {
            order: 20,
            precision: 192,
            max_retries: 3,
            check_isolated_zero: true,
        }
    }
}

impl LimitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order < 4 {
            return Err(EngineError::InputError(format!(
                "order {} is below 4",
                self.order
            )));
        }
        if self.precision < 64 {
            return Err(EngineError::InputError(format!(
                "precision {} is below 64 bits",
                self.precision
            )));
        }
        Ok(())
    }

    fn escalated(&self, k: u32) -> Self {
        Self {
            order: self.order << k,
            precision: self.precision << k,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfPlane {
    PlusX,
    MinusX,
}

impl HalfPlane {
    pub fn sign(self) -> i32 {
        match self {
            HalfPlane::PlusX => 1,
            HalfPlane::MinusX => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Real branch `factor` of the critical curve after rotation by `rotation`.
    Branch { rotation: u32, factor: usize },
    /// A coordinate axis: `y = 0`, or `x = 0` when `swapped`.
    AxisProbe { swapped: bool },
}

/// `t -> (s t^ram_exp, a(t))`, `t > 0`, in rotated (or swapped) coordinates.
#[derive(Clone, Debug)]
pub struct BranchTrajectory {
    pub ram_exp: u32,
    pub a: TruncSeries,
    pub half_plane: HalfPlane,
    pub provenance: Provenance,
}

impl BranchTrajectory {
    fn axis(half_plane: HalfPlane, swapped: bool, prec: u32) -> Self {
        Self {
            ram_exp: 1,
            a: TruncSeries::zero(prec),
            half_plane,
            provenance: Provenance::AxisProbe { swapped },
        }
    }

    /// The point at parameter `t` in the caller's coordinates.
    pub fn point(&self, t: f64) -> (f64, f64) {
        let xr = self.half_plane.sign() as f64 * t.powi(self.ram_exp as i32);
        let yr = self.a.eval_f64(t).0;
        match self.provenance {
            Provenance::Branch { rotation, .. } => {
                let n = rotation as f64;
                (xr + n * yr, -n * xr + yr)
            }
            Provenance::AxisProbe { swapped: false } => (xr, yr),
            Provenance::AxisProbe { swapped: true } => (yr, xr),
        }
    }

    /// Human-readable parametrization.
    pub fn describe(&self) -> String {
        let x = match self.half_plane {
            HalfPlane::PlusX => power("t", self.ram_exp as i64, 1).to_string(),
            HalfPlane::MinusX => format!("-{}", power("t", self.ram_exp as i64, 1)),
        };
        let y = format_series(&self.a, "t", 10);
        match self.provenance {
            Provenance::Branch { rotation: 0, .. } => format!("x = {x}, y = {y}"),
            Provenance::Branch { rotation: 1, .. } => {
                format!("X = {x}, Y = {y} where x = X + Y, y = Y - X")
            }
            Provenance::Branch { rotation, .. } => {
                format!("X = {x}, Y = {y} where x = X + {rotation}Y, y = Y - {rotation}X")
            }
            Provenance::AxisProbe { swapped: false } => format!("x = {x}, y = 0"),
            Provenance::AxisProbe { swapped: true } => format!("x = 0, y = {x}"),
        }
    }
}

fn power(var: &str, num: i64, den: u32) -> String {
    let g = gcd(num, den as i64).max(1);
    match (num / g, den / g as u32) {
        (0, _) => "1".into(),
        (1, 1) => var.into(),
        (k, 1) => format!("{var}^{k}"),
        (k, d) => format!("{var}^({k}/{d})"),
    }
}

/// `c1*t^k1 + ... + O(t^m)` with `digits` significant digits.
pub fn format_series(a: &TruncSeries, var: &str, digits: usize) -> String {
    let mut out = String::new();
    for term in a.to_terms_json(digits) {
        let mut c = term.re.clone();
        if term.im != "0" {
            c = format!("({} + {}i)", term.re, term.im);
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let p = power(var, term.num, term.den);
        if p == "1" {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&p);
        } else {
            out.push_str(&format!("{mag}*{p}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    if !a.is_exact() {
        out.push_str(&format!(" + O({})", power(var, a.trunc() + 1, a.ram())));
    }
    out
}

/// One-variable limit along a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub enum BranchValue {
    Finite(f64),
    PosInfinity,
    NegInfinity,
    /// The denominator is identically zero along the trajectory.
    DenominatorVanishes,
    Inconclusive(String),
}

impl BranchValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, BranchValue::PosInfinity | BranchValue::NegInfinity)
    }
}

#[derive(Clone, Debug)]
pub struct BranchResult {
    pub trajectory: BranchTrajectory,
    pub value: BranchValue,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Exists(f64),
    DoesNotExist,
    Undefined(String),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct LimitOutcome {
    pub verdict: Verdict,
    pub branches: Vec<BranchResult>,
    pub diagnostics: Vec<String>,
    /// Configuration of the attempt that produced the verdict.
    pub config: LimitConfig,
    pub retries_used: u32,
}

impl LimitOutcome {
    pub fn finite_values(&self) -> Vec<f64> {
        self.branches
            .iter()
            .filter_map(|b| match b.value {
                BranchValue::Finite(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    pub fn has_infinite(&self) -> bool {
        self.branches.iter().any(|b| b.value.is_infinite())
    }
}

/// Real branches through the origin of the critical curve `h`, on both
/// half-planes, after the rotation that makes `h` monic in `y`.
pub fn real_branches(h: &BivarPoly, cfg: &LimitConfig) -> Result<(u32, Vec<BranchTrajectory>)> {
    assert!(!h.is_zero(), "real_branches: zero polynomial");
    let rot = polyq::rotate(h);
    let sq = polyq::squarefree_part_y(&rot.poly);
    let prec = cfg.precision;
    let mut out: Vec<BranchTrajectory> = Vec::new();
    for half in [HalfPlane::PlusX, HalfPlane::MinusX] {
        let p = match half {
            HalfPlane::PlusX => sq.clone(),
            HalfPlane::MinusX => polyq::mirror_x(&sq),
        };
        let sp = SeriesYPoly::from_bivar(&p, prec);
        let scale = sp.at_x0().iter().map(|c| c.abs_f64()).fold(1.0, f64::max);
        let fact = factorize_branches(&sp, cfg.order)?;
        for (idx, (e, a, _)) in fact.real_branches().into_iter().enumerate() {
            let a0 = a.constant_term().abs_f64();
            if a0 > eps_z(prec) * scale {
                continue;
            }
            let a = drop_constant(&a);
            let (ram_exp, a) = normalize(fact.ram, e, &a);
            let dup = out.iter().any(|t| {
                t.half_plane == half
                    && t.ram_exp == ram_exp
                    && t.a.max_diff(&a) <= eps_z(prec) * (1.0 + a.max_abs())
            });
            if !dup {
                out.push(BranchTrajectory {
                    ram_exp,
                    a,
                    half_plane: half,
                    provenance: Provenance::Branch {
                        rotation: rot.n,
                        factor: idx,
                    },
                });
            }
        }
    }
    Ok((rot.n, out))
}

fn drop_constant(a: &TruncSeries) -> TruncSeries {
    let terms: Vec<(i64, CFloat)> = a
        .terms()
        .filter(|(k, _)| *k != 0)
        .map(|(k, c)| (k, c.value.clone()))
        .collect();
    TruncSeries::from_terms(a.prec(), a.ram(), a.trunc(), terms)
}

/// Rewrites `(t^ram, a(t^e))` with the smallest possible exponent on `x`.
fn normalize(ram: u32, e: u32, a: &TruncSeries) -> (u32, TruncSeries) {
    let b = a.substitute_x_pow(e).reduce_ram();
    debug_assert_eq!(b.ram(), 1);
    let mut g = ram as i64;
    for (k, _) in b.terms() {
        g = gcd(g, k);
    }
    let g = g.max(1) as u32;
    if g == 1 {
        return (ram, b);
    }
    (ram / g, b.substitute_x_root(g).reduce_ram())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `lim_{t -> 0+} f1/g1` along the trajectory. `f1`, `g1` must be in the
/// trajectory's coordinates.
pub fn branch_limit(
    f1: &BivarPoly,
    g1: &BivarPoly,
    traj: &BranchTrajectory,
    cfg: &LimitConfig,
) -> BranchValue {
    let prec = cfg.precision;
    let s = CFloat::from_f64(prec, traj.half_plane.sign() as f64);
    let xs = TruncSeries::monomial(traj.ram_exp as i64, 1, s);
    let num = compose_poly_series(f1, &xs, &traj.a);
    let den = compose_poly_series(g1, &xs, &traj.a);
    let Some(od) = den.order() else {
        return if den.is_exact() {
            BranchValue::DenominatorVanishes
        } else {
            BranchValue::Inconclusive(format!(
                "denominator vanishes through t^{}",
                den.trunc_exponent().unwrap()
            ))
        };
    };
    let Some(on) = num.order() else {
        return match num.trunc_exponent() {
            Some(t) if t < od => BranchValue::Inconclusive(format!(
                "numerator vanishes through t^{t}, below the denominator order {od}"
            )),
            _ => BranchValue::Finite(0.0),
        };
    };
    if on > od {
        return BranchValue::Finite(0.0);
    }
    let ln = &num.leading().unwrap().1.value;
    let ld = &den.leading().unwrap().1.value;
    let q = ln.div_ref(ld);
    if q.im_f64().abs() > eps_im(prec) * q.abs_f64().max(1.0) {
        return BranchValue::Inconclusive("non-real leading ratio".into());
    }
    let v = q.re_f64();
    if on == od {
        BranchValue::Finite(v)
    } else if v > 0.0 {
        BranchValue::PosInfinity
    } else {
        BranchValue::NegInfinity
    }
}

/// Whether `g` has a real curve of zeros through the origin; returns a
/// witness trajectory when it does.
pub fn verify_isolated_zero(g: &BivarPoly, cfg: &LimitConfig) -> Result<Option<BranchTrajectory>> {
    if g.is_zero() {
        return Err(EngineError::InputError(
            "denominator is identically zero".into(),
        ));
    }
    if g.constant_term() != 0 {
        return Ok(None);
    }
    let (_, trajs) = real_branches(g, cfg)?;
    Ok(trajs.into_iter().next())
}

/// Aggregated verdict over branch values, and whether finite values form a
/// near tie that deserves a precision escalation.
fn aggregate(values: &[BranchValue], prec: u32) -> (Verdict, bool) {
    if let Some(BranchValue::Inconclusive(r)) = values
        .iter()
        .find(|v| matches!(v, BranchValue::Inconclusive(_)))
    {
        return (Verdict::Inconclusive(r.clone()), false);
    }
    if values.contains(&BranchValue::DenominatorVanishes) {
        return (
            Verdict::Undefined("denominator vanishes along a trajectory".into()),
            false,
        );
    }
    let finite: Vec<f64> = values
        .iter()
        .filter_map(|v| match v {
            BranchValue::Finite(x) => Some(*x),
            _ => None,
        })
        .collect();
    if finite.len() < values.len() {
        let pos = values.contains(&BranchValue::PosInfinity);
        let neg = values.contains(&BranchValue::NegInfinity);
        if finite.is_empty() && pos && neg {
            return (
                Verdict::Undefined("quotient tends to +infinity and -infinity".into()),
                false,
            );
        }
        return (Verdict::DoesNotExist, false);
    }
    if finite.is_empty() {
        return (Verdict::Inconclusive("no trajectory".into()), false);
    }
    let lo = finite.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let big = finite.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tol = eps_agg(prec) * (1.0 + big);
    let spread = hi - lo;
    if spread > tol {
        return (Verdict::DoesNotExist, spread <= 10.0 * tol);
    }
    let mean = finite.iter().sum::<f64>() / finite.len() as f64;
    (Verdict::Exists(mean), false)
}

/// Decides `lim_{(x,y) -> 0} f/g`, escalating order and precision on
/// numerically inconclusive attempts.
pub fn decide_limit(f: &BivarPoly, g: &BivarPoly, cfg: &LimitConfig) -> Result<LimitOutcome> {
    cfg.validate()?;
    if g.is_zero() {
        return Err(EngineError::InputError(
            "denominator is identically zero".into(),
        ));
    }
    let mut ladder = Vec::new();
    let mut last: Option<LimitOutcome> = None;
    for k in 0..=cfg.max_retries {
        let c = cfg.escalated(k);
        let final_try = k == cfg.max_retries;
        match attempt(f, g, &c) {
            Ok((mut out, near_tie)) => {
                out.retries_used = k;
                let inconclusive = matches!(out.verdict, Verdict::Inconclusive(_));
                if (inconclusive || near_tie) && !final_try {
                    ladder.push(format!(
                        "N={} P={}: {}",
                        c.order,
                        c.precision,
                        if near_tie {
                            "near tie between branch values".to_string()
                        } else {
                            verdict_reason(&out.verdict)
                        }
                    ));
                    last = Some(out);
                    continue;
                }
                out.diagnostics.splice(0..0, ladder);
                return Ok(out);
            }
            Err(e) if e.is_retryable() => {
                ladder.push(format!("N={} P={}: {e}", c.order, c.precision));
                if final_try {
                    let mut out = last.unwrap_or(LimitOutcome {
                        verdict: Verdict::Inconclusive(e.to_string()),
                        branches: Vec::new(),
                        diagnostics: Vec::new(),
                        config: c,
                        retries_used: k,
                    });
                    out.verdict = Verdict::Inconclusive(e.to_string());
                    out.config = c;
                    out.retries_used = k;
                    out.diagnostics.splice(0..0, ladder);
                    return Ok(out);
                }
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("the final attempt always returns")
}

fn verdict_reason(v: &Verdict) -> String {
    match v {
        Verdict::Inconclusive(r) => r.clone(),
        other => format!("{other:?}"),
    }
}

fn outcome(
    verdict: Verdict,
    branches: Vec<BranchResult>,
    diagnostics: Vec<String>,
    cfg: &LimitConfig,
) -> LimitOutcome {
    LimitOutcome {
        verdict,
        branches,
        diagnostics,
        config: *cfg,
        retries_used: 0,
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64()
}

fn attempt(f: &BivarPoly, g: &BivarPoly, cfg: &LimitConfig) -> Result<(LimitOutcome, bool)> {
    let mut diags = Vec::new();
    let g0 = g.constant_term();
    if g0 != 0 {
        let v = to_f64(&(f.constant_term() / g0));
        diags.push("denominator is nonzero at the point".into());
        return Ok((outcome(Verdict::Exists(v), Vec::new(), diags, cfg), false));
    }
    if cfg.check_isolated_zero {
        if let Some(w) = verify_isolated_zero(g, cfg)? {
            return Err(EngineError::IsolatedZeroViolated(w.describe()));
        }
    }
    if polyq::discriminant_numerator(f, g).is_zero() {
        diags.push("critical curve vanishes identically; quotient is constant on circles".into());
        let mut out = radial_case(f, g, cfg);
        out.diagnostics.splice(0..0, diags);
        return Ok((out, false));
    }
    let (mut f, mut g) = (f.clone(), g.clone());
    let c = polyq::gcd(&f, &g);
    if !c.is_constant() {
        if c.constant_term() == 0 && !real_branches(&c, cfg)?.1.is_empty() {
            diags.push(format!("common factor {c}"));
            return Ok((
                outcome(
                    Verdict::Undefined("common factor vanishes along a curve".into()),
                    Vec::new(),
                    diags,
                    cfg,
                ),
                false,
            ));
        }
        diags.push(format!("cancelled common factor {c}"));
        f = polyq::div_exact(&f, &c);
        g = polyq::div_exact(&g, &c);
        let g0 = g.constant_term();
        if g0 != 0 {
            let v = to_f64(&(f.constant_term() / g0));
            return Ok((outcome(Verdict::Exists(v), Vec::new(), diags, cfg), false));
        }
    }
    let h = polyq::discriminant_numerator(&f, &g);
    let (n, trajs) = real_branches(&h, cfg)?;
    if trajs.is_empty() {
        diags.push("no real critical branch through the point; probing the axes".into());
        let (verdict, results) = axis_probes(&f, &g, cfg);
        return Ok((outcome(verdict, results, diags, cfg), false));
    }
    let f1 = polyq::apply_rotation(&f, n);
    let g1 = polyq::apply_rotation(&g, n);
    if n != 0 {
        diags.push(format!("rotation n = {n}"));
    }
    let results: Vec<BranchResult> = trajs
        .into_iter()
        .map(|t| {
            let value = branch_limit(&f1, &g1, &t, cfg);
            BranchResult {
                trajectory: t,
                value,
            }
        })
        .collect();
    let values: Vec<BranchValue> = results.iter().map(|r| r.value.clone()).collect();
    let (verdict, near_tie) = aggregate(&values, cfg.precision);
    Ok((outcome(verdict, results, diags, cfg), near_tie))
}

fn axis_results(
    f: &BivarPoly,
    g: &BivarPoly,
    swapped: bool,
    cfg: &LimitConfig,
) -> Vec<BranchResult> {
    let (f, g) = if swapped {
        (f.swap_xy(), g.swap_xy())
    } else {
        (f.clone(), g.clone())
    };
    [HalfPlane::PlusX, HalfPlane::MinusX]
        .into_iter()
        .map(|h| {
            let t = BranchTrajectory::axis(h, swapped, cfg.precision);
            let value = branch_limit(&f, &g, &t, cfg);
            BranchResult {
                trajectory: t,
                value,
            }
        })
        .collect()
}

/// Probes along both axes; any disagreement is reported as inconclusive.
fn axis_probes(f: &BivarPoly, g: &BivarPoly, cfg: &LimitConfig) -> (Verdict, Vec<BranchResult>) {
    let mut results = axis_results(f, g, false, cfg);
    results.extend(axis_results(f, g, true, cfg));
    let values: Vec<BranchValue> = results.iter().map(|r| r.value.clone()).collect();
    let verdict = match aggregate(&values, cfg.precision).0 {
        Verdict::DoesNotExist if values.iter().all(|v| v.is_infinite()) => Verdict::DoesNotExist,
        Verdict::DoesNotExist => Verdict::Inconclusive("axis probes disagree".into()),
        v => v,
    };
    (verdict, results)
}

/// Limit when `f/g` is constant on circles: the two sides of the `x` axis
/// decide it, with the `y` axis as fallback when `g` vanishes on the
/// `x` axis.
pub fn radial_case(f: &BivarPoly, g: &BivarPoly, cfg: &LimitConfig) -> LimitOutcome {
    let mut results = axis_results(f, g, false, cfg);
    let mut values: Vec<BranchValue> = results.iter().map(|r| r.value.clone()).collect();
    if values.contains(&BranchValue::DenominatorVanishes) {
        results = axis_results(f, g, true, cfg);
        values = results.iter().map(|r| r.value.clone()).collect();
        if values.contains(&BranchValue::DenominatorVanishes) {
            return outcome(
                Verdict::Undefined("denominator vanishes on both axes".into()),
                results,
                Vec::new(),
                cfg,
            );
        }
    }
    let (verdict, _) = aggregate(&values, cfg.precision);
    outcome(verdict, results, Vec::new(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::parse_poly;

    fn p(s: &str) -> BivarPoly {
        parse_poly(s).unwrap()
    }

    fn decide(f: &str, g: &str) -> LimitOutcome {
        decide_limit(&p(f), &p(g), &LimitConfig::default()).unwrap()
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        v
    }

    #[test]
    fn axes_branches() {
        let cfg = LimitConfig::default();
        let h = polyq::discriminant_numerator(&p("x^2 - y^2"), &p("x^2 + y^2"));
        let (_, trajs) = real_branches(&h, &cfg).unwrap();
        assert!(!trajs.is_empty());
        // Every trajectory lies on an axis.
        for t in &trajs {
            let (x, y) = t.point(1e-3);
            assert!(x.abs() < 1e-12 || y.abs() < 1e-12, "{}", t.describe());
        }
        let (_, trajs) = real_branches(&p("y^2 + x^2"), &cfg).unwrap();
        assert!(trajs.is_empty());
    }

    #[test]
    fn cusp_branch() {
        let cfg = LimitConfig::default();
        let (n, trajs) = real_branches(&p("y^2 - x^3"), &cfg).unwrap();
        assert_eq!(n, 0);
        assert_eq!(trajs.len(), 2);
        for t in &trajs {
            assert_eq!(t.half_plane, HalfPlane::PlusX);
            assert_eq!(t.ram_exp, 2);
            let (x, y) = t.point(0.1);
            assert!((y * y - x * x * x).abs() < 1e-15);
        }
    }

    #[test]
    fn branch_limits() {
        let cfg = LimitConfig::default();
        let along_x = BranchTrajectory::axis(HalfPlane::PlusX, false, cfg.precision);
        assert_eq!(
            branch_limit(&p("x^3 + y^3"), &p("x^2 + x*y + y^2"), &along_x, &cfg),
            BranchValue::Finite(0.0)
        );
        assert_eq!(
            branch_limit(&p("x^2 - y^2"), &p("x^2 + y^2"), &along_x, &cfg),
            BranchValue::Finite(1.0)
        );
        let along_y = BranchTrajectory::axis(HalfPlane::PlusX, true, cfg.precision);
        assert_eq!(
            branch_limit(&p("x^2 - y^2").swap_xy(), &p("x^2 + y^2"), &along_y, &cfg),
            BranchValue::Finite(-1.0)
        );
        assert_eq!(
            branch_limit(&p("x"), &p("x^2 + y^2"), &along_x, &cfg),
            BranchValue::PosInfinity
        );
    }

    #[test]
    fn decisions() {
        let out = decide("6*x^3*y", "2*x^4 + y^4");
        assert_eq!(out.verdict, Verdict::DoesNotExist);
        let want = 2.25 * (2.0f64 / 3.0).powf(0.25);
        let vals = sorted(out.finite_values());
        assert_eq!(vals.len(), 3);
        assert!(
            (vals[0] + want).abs() < 1e-9 && vals[1].abs() < 1e-12 && (vals[2] - want).abs() < 1e-9
        );

        assert_eq!(
            decide("x^4 - y^2 + 3*x^2*y - x^2", "x^2 + y^2").verdict,
            Verdict::Exists(-1.0)
        );
        let out = decide("y^4", "x^4 + 3*y^4");
        assert_eq!(out.verdict, Verdict::DoesNotExist);
        let vals = sorted(out.finite_values());
        assert!(vals[0].abs() < 1e-12 && (vals[1] - 1.0 / 3.0).abs() < 1e-12);
        let out = decide("x^4*y^4", "(x^8 + y^8)^3");
        assert_eq!(out.verdict, Verdict::DoesNotExist);
        assert!(out.has_infinite());
        assert!(matches!(
            decide("x", "x^2 + y^2").verdict,
            Verdict::Undefined(_)
        ));
    }

    #[test]
    fn radial() {
        let cfg = LimitConfig::default();
        assert_eq!(
            radial_case(&p("x^2+y^2"), &p("2*(x^2+y^2)"), &cfg).verdict,
            Verdict::Exists(0.5)
        );
        assert_eq!(
            radial_case(&p("(x^2+y^2)^2"), &p("x^2+y^2"), &cfg).verdict,
            Verdict::Exists(0.0)
        );
        assert_eq!(
            radial_case(&p("x^2+y^2"), &p("(x^2+y^2)^2"), &cfg).verdict,
            Verdict::DoesNotExist
        );
    }

    #[test]
    fn isolated_zero() {
        let cfg = LimitConfig::default();
        assert!(verify_isolated_zero(&p("x^2 + y^2"), &cfg)
            .unwrap()
            .is_none());
        assert!(verify_isolated_zero(&p("x^2 + x*y + y^2"), &cfg)
            .unwrap()
            .is_none());
        let w = verify_isolated_zero(&p("x^2 - y^2"), &cfg)
            .unwrap()
            .unwrap();
        let (x, y) = w.point(1e-2);
        assert!((x.abs() - y.abs()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            decide_limit(&p("x"), &p("0"), &LimitConfig::default()),
            Err(EngineError::InputError(_))
        ));
        assert_eq!(decide("0", "x^2 + y^2").verdict, Verdict::Exists(0.0));
        assert_eq!(
            decide("x^2 + 3*y^4", "x^2 + 3*y^4").verdict,
            Verdict::Exists(1.0)
        );
        assert_eq!(decide("x + 3", "x - 2").verdict, Verdict::Exists(-1.5));
        assert!(matches!(
            decide_limit(&p("x"), &p("x^2 - y^2"), &LimitConfig::default()),
            Err(EngineError::IsolatedZeroViolated(_))
        ));
    }

    #[test]
    fn series_formatting() {
        let a = TruncSeries::from_terms(
            64,
            2,
            7,
            [
                (3, CFloat::from_f64(64, -1.0)),
                (4, CFloat::from_f64(64, 2.5)),
            ],
        );
        assert_eq!(format_series(&a, "t", 10), "-t^(3/2) + 2.5*t^2 + O(t^4)");
    }
}
