//! Newton-Puiseux factorization isolating the real branches of a monic
//! polynomial in `y` over power series in `x`.
//!
//! One reduction step kills the `y^(d-1)` term, picks the Newton slope
//! `u/r`, rescales to `q = x^(-d u) f(x^r, y x^u)`, splits `q(0, y)` into
//! coprime real factors and lifts that split with Hensel's lemma. The
//! driver repeats this until every factor is linear, a pure power of a
//! linear factor, or has no real root at `x = 0`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::hensel::hensel_lift_multi;
use crate::roots::{build_base_factors, cluster_polynomial_roots, find_roots, RootCluster};
use crate::series::{eps_c, eps_im, CFloat, SeriesYPoly, TruncSeries};

/// Newton exponent data: the smallest `r` minimising `u_r / r`, where `u_i`
/// is the order of the coefficient of `y^(d-i)`. `u` is `None` (infinite)
/// when every sub-leading coefficient vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NewtonData {
    pub r: u32,
    pub u: Option<Ratio<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchKind {
    /// `(y - a(x))^d` with `a` real.
    RealLinearPower,
    /// No real root at `x = 0` after rescaling (or a non-real linear power).
    NonRealIrreducible,
}

#[derive(Clone, Debug)]
pub struct BranchFactor {
    pub poly: SeriesYPoly,
    /// The factor appears as `poly(x^ram_exp, y)`.
    pub ram_exp: u32,
    pub kind: BranchKind,
}

/// `input(x^ram, y) = prod factors_i(x^(ram_exp_i), y)`.
#[derive(Clone, Debug)]
pub struct BranchFactorization {
    pub ram: u32,
    pub factors: Vec<BranchFactor>,
    /// Number of reduction rounds performed.
    pub rounds: usize,
}

/// Global ramification and per-factor exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamState {
    pub ram: u32,
    pub exps: Vec<u32>,
}

/// Bookkeeping after factor `i` (0-based) was split as
/// `f_i(x^b, y) = q_1 ... q_m`: the global ramification and every other
/// exponent are multiplied by `b`, and position `i` becomes `m` copies of
/// its current exponent.
pub fn ram_bookkeep(state: &RamState, i: usize, b: u32, m: usize) -> RamState {
    let mut exps = Vec::with_capacity(state.exps.len() + m - 1);
    for (j, &e) in state.exps.iter().enumerate() {
        if j == i {
            exps.extend(std::iter::repeat_n(e, m));
        } else {
            exps.push(e * b);
        }
    }
    RamState {
        ram: state.ram * b,
        exps,
    }
}

/// Newton exponent of a monic polynomial, read off the coefficients as
/// given.
pub fn newton_exponent(p: &SeriesYPoly) -> NewtonData {
    let d = p.degree();
    let mut best: Option<(u32, Ratio<i64>)> = None;
    for i in 1..=d {
        if let Some(u) = p.coeff(d - i).order() {
            let slope = u / i as i64;
            if best.is_none_or(|(r, bu)| slope < bu / r as i64) {
                best = Some((i as u32, u));
            }
        }
    }
    match best {
        Some((r, u)) => NewtonData { r, u: Some(u) },
        None => NewtonData { r: 1, u: None },
    }
}

/// Fails when a coefficient that is empty only up to its truncation could
/// still change the Newton exponent.
fn check_newton_truncation(p: &SeriesYPoly, nd: &NewtonData) -> Result<()> {
    let Some(u) = nd.u else {
        return Ok(());
    };
    let d = p.degree();
    let slope = u / nd.r as i64;
    for i in 1..=d {
        let c = p.coeff(d - i);
        if c.is_zero() {
            if let Some(t) = c.trunc_exponent() {
                // The true order is at least the next exponent above `t`.
                let lower = t + Ratio::new(1, c.ram() as i64);
                let s = lower / i as i64;
                if s < slope || (s == slope && (i as u32) < nd.r) {
                    return Err(EngineError::TruncationExhausted(format!(
                        "coefficient of y^{} unknown beyond x^{}",
                        d - i,
                        t
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Tschirnhaus shift and Newton rescaling.
///
/// Returns `(q, shift, nd)` where `f(x, y) = p(x, y + shift)` has no
/// `y^(d-1)` term (`shift = -b1/d`) and `q = x^(-d u) f(x^r, y x^u)`. When
/// `u` is infinite, `p = (y - shift)^d` and `p` itself is returned.
pub fn newton_transform(p: &SeriesYPoly) -> (SeriesYPoly, TruncSeries, NewtonData) {
    let (_, q, shift, nd) = transform_parts(p);
    (q, shift, nd)
}

/// Also returns the shifted polynomial `f`.
fn transform_parts(p: &SeriesYPoly) -> (SeriesYPoly, SeriesYPoly, TruncSeries, NewtonData) {
    let d = p.degree();
    let shift = shift_of(p);
    let f = kill_subleading(&p.shift_y(&shift));
    let nd = newton_exponent(&f);
    let Some(u) = nd.u else {
        return (f, p.clone(), shift, nd);
    };
    let q = f
        .substitute_x_pow(nd.r)
        .scale_y(u)
        .shift_exponent(-u * d as i64)
        .reduce_ram();
    (f, q, shift, nd)
}

/// Zeroes the `y^(d-1)` coefficient, which the shift cancels exactly in
/// exact arithmetic.
fn kill_subleading(f: &SeriesYPoly) -> SeriesYPoly {
    let d = f.degree();
    let mut cs = f.coeffs().to_vec();
    let c = &cs[d - 1];
    cs[d - 1] = TruncSeries::zero_to(f.prec(), c.ram(), c.trunc());
    SeriesYPoly::new(f.prec(), cs)
}

/// Inverse of [`newton_transform`] for a factor `g` of `q`:
/// `x^(D u/r) g(x^(1/r), y x^(-u/r))` followed by `y <- y + b/d`, where `b`
/// is the `y^(d-1)` coefficient of the original polynomial.
pub fn newton_untransform(
    d: usize,
    b: &TruncSeries,
    r: u32,
    u: Ratio<i64>,
    g: &SeriesYPoly,
) -> SeriesYPoly {
    let big_d = g.degree() as i64;
    let e = u / r as i64;
    let back = g.substitute_x_root(r).scale_y(-e).shift_exponent(e * big_d);
    let s = b.scale(&CFloat::from_rational(
        b.prec(),
        &rug::Rational::from((1, d as i64)),
    ));
    back.shift_y(&s).reduce_ram()
}

/// Outcome of inspecting one factor.
enum Class {
    Linear,
    PurePower,
    NoRealRoot,
    Reducible {
        q: SeriesYPoly,
        nd: NewtonData,
        clusters: Vec<RootCluster>,
    },
}

fn classify(p: &SeriesYPoly) -> Result<Class> {
    p.require_monic()?;
    if p.degree() <= 1 {
        return Ok(Class::Linear);
    }
    let (f, q, _, nd) = transform_parts(p);
    if nd.u.is_none() {
        return Ok(Class::PurePower);
    }
    check_newton_truncation(&f, &nd)?;
    let prec = p.prec();
    let q0 = q.at_x0();
    let roots = find_roots(&q0, prec)?;
    let clusters = cluster_polynomial_roots(&q0, &roots, prec)?;
    if clusters.len() == 1 {
        return Err(EngineError::Internal(
            "rescaled polynomial has a single root at x = 0".into(),
        ));
    }
    if !clusters.iter().any(|c| c.is_real) {
        return Ok(Class::NoRealRoot);
    }
    Ok(Class::Reducible { q, nd, clusters })
}

fn shift_of(p: &SeriesYPoly) -> TruncSeries {
    let d = p.degree();
    p.coeff(d - 1).scale(&CFloat::from_rational(
        p.prec(),
        &rug::Rational::from((-1, d as i64)),
    ))
}

/// One reduction step: returns `(r, parts)` with `p(x^r, y) = prod parts`
/// modulo `x^(n+1)`, or `(1, [p])` when `p` needs no further reduction.
pub fn reduce_step(p: &SeriesYPoly, n: i64) -> Result<(u32, Vec<SeriesYPoly>)> {
    match classify(p)? {
        Class::Linear | Class::PurePower | Class::NoRealRoot => Ok((1, vec![p.clone()])),
        Class::Reducible { q, nd, clusters } => split(p, &q, &nd, &clusters, n),
    }
}

fn split(
    p: &SeriesYPoly,
    q: &SeriesYPoly,
    nd: &NewtonData,
    clusters: &[RootCluster],
    n: i64,
) -> Result<(u32, Vec<SeriesYPoly>)> {
    let prec = p.prec();
    let d = p.degree();
    let u =
        nd.u.expect("reducible factors have a finite Newton exponent");
    if let Some(t) = q.trunc_exponent() {
        if t < Ratio::from_integer(1) {
            return Err(EngineError::TruncationExhausted(format!(
                "rescaled polynomial known only to x^{t}"
            )));
        }
    }
    let base = build_base_factors(clusters)?;
    let lifted = hensel_lift_multi(q, &base, n)?;
    let real_input = p.is_real(eps_im(prec));
    let b1 = p.coeff(d - 1);
    let mut parts = Vec::with_capacity(lifted.factors.len());
    for g in &lifted.factors {
        let back = newton_untransform(d, b1, nd.r, u, &g.with_prec(prec));
        // x -> x^r clears the 1/r ramification.
        let mut part = back.substitute_x_pow(nd.r).reduce_ram();
        if part.ram() != 1 {
            return Err(EngineError::Internal(format!(
                "ramification {} left after clearing",
                part.ram()
            )));
        }
        part = part.truncate(n);
        if real_input {
            if !part.is_real(eps_c(prec)) {
                return Err(EngineError::Internal(
                    "lifted real factor is not real".into(),
                ));
            }
            part = part.map_coeffs(|c| c.real_part());
        }
        parts.push(part);
    }
    Ok((nd.r, parts))
}

/// Whether any of `parts` still admits a real reduction.
pub fn needs_reduction(parts: &[SeriesYPoly]) -> Result<bool> {
    for p in parts {
        if let Class::Reducible { .. } = classify(p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `a(x)` when `f = (y - a(x))^d` to tolerance.
pub fn extract_linear_branch(f: &SeriesYPoly) -> Option<TruncSeries> {
    let d = f.degree();
    if d == 0 || !f.is_monic() {
        return None;
    }
    let a = shift_of(f);
    if d == 1 {
        return Some(a);
    }
    let lin = SeriesYPoly::linear(&a);
    let mut pw = lin.clone();
    for _ in 1..d {
        pw = pw.mul(&lin);
    }
    let scale = f.max_abs().max(1.0);
    (pw.max_diff(f) <= eps_c(f.prec()) * scale).then_some(a)
}

/// Factors `p(x^R, y)` until no factor admits a real reduction, with every
/// factor known through `x^n` in the variable of `p` (or as far as `p`
/// itself is known). `p` must be monic with ramification 1.
///
/// Each reduction round loses precision in `x`, so the internal working
/// order is doubled until the target is met.
pub fn factorize_branches(p: &SeriesYPoly, n: i64) -> Result<BranchFactorization> {
    let target = match p.trunc_exponent() {
        Some(t) => t.min(Ratio::from_integer(n)),
        None => Ratio::from_integer(n),
    };
    let mut w = n;
    let mut last = None;
    for _ in 0..4 {
        match factorize_at(p, w) {
            Ok(f) => match f.known_order() {
                Some(k) if k < target => {
                    last = Some(EngineError::TruncationExhausted(format!(
                        "factors known through x^{k} at working order {w}"
                    )))
                }
                _ => return Ok(f),
            },
            Err(e @ EngineError::TruncationExhausted(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        w *= 2;
    }
    Err(last.expect("at least one attempt"))
}

fn factorize_at(p: &SeriesYPoly, n: i64) -> Result<BranchFactorization> {
    p.require_monic()?;
    let d = p.degree();
    let cap = 8 * d * d.max(1);
    let mut polys = vec![p.clone()];
    let mut kinds: Vec<Option<BranchKind>> = vec![None];
    let mut state = RamState {
        ram: 1,
        exps: vec![1],
    };
    let mut rounds = 0;
    let prec = p.prec();
    while let Some(i) = kinds.iter().position(|k| k.is_none()) {
        if rounds >= cap {
            return Err(EngineError::IterationCapExceeded(cap));
        }
        rounds += 1;
        match classify(&polys[i])? {
            Class::Linear | Class::PurePower => {
                let real = extract_linear_branch(&polys[i])
                    .map(|a| a.is_real(eps_im(prec)))
                    .unwrap_or(false);
                kinds[i] = Some(if real {
                    BranchKind::RealLinearPower
                } else {
                    BranchKind::NonRealIrreducible
                });
            }
            Class::NoRealRoot => kinds[i] = Some(BranchKind::NonRealIrreducible),
            Class::Reducible { q, nd, clusters } => {
                // The parts live in x^(1/(R b / e_i)) of the input variable.
                let own = n * (state.ram * nd.r / state.exps[i]) as i64;
                let (b, parts) = split(&polys[i], &q, &nd, &clusters, own)?;
                let m = parts.len();
                state = ram_bookkeep(&state, i, b, m);
                polys.splice(i..=i, parts);
                kinds.splice(i..=i, std::iter::repeat_n(None, m));
            }
        }
    }
    let factors = polys
        .into_iter()
        .zip(kinds)
        .zip(&state.exps)
        .map(|((poly, kind), &ram_exp)| BranchFactor {
            poly,
            ram_exp,
            kind: kind.expect("all factors settled"),
        })
        .collect();
    Ok(BranchFactorization {
        ram: state.ram,
        factors,
        rounds,
    })
}

impl BranchFactorization {
    /// Exponent of `x` (variable of the input) through which every factor
    /// is known; `None` when all are exact.
    pub fn known_order(&self) -> Option<Ratio<i64>> {
        self.factors
            .iter()
            .filter_map(|f| {
                f.poly
                    .trunc_exponent()
                    .map(|t| t * f.ram_exp as i64 / self.ram as i64)
            })
            .min()
    }

    /// `(exponent, a)` for every real linear branch `y = a(x^exponent)` of
    /// `input(x^ram, y)`, with the multiplicity of the linear factor.
    pub fn real_branches(&self) -> Vec<(u32, TruncSeries, usize)> {
        self.factors
            .iter()
            .filter(|f| f.kind == BranchKind::RealLinearPower)
            .filter_map(|f| {
                extract_linear_branch(&f.poly).map(|a| (f.ram_exp, a.real_part(), f.poly.degree()))
            })
            .collect()
    }

    /// `input(x^ram, y) - prod factors_i(x^(e_i), y)`, largest coefficient
    /// through `x^n`.
    pub fn residual(&self, input: &SeriesYPoly, n: i64) -> f64 {
        let lhs = input.substitute_x_pow(self.ram).truncate(n);
        let mut prod: Option<SeriesYPoly> = None;
        for f in &self.factors {
            let g = f.poly.substitute_x_pow(f.ram_exp);
            prod = Some(match prod {
                None => g,
                Some(p) => p.mul(&g),
            });
        }
        let prod = prod.expect("at least one factor").truncate(n);
        lhs.max_diff(&prod)
    }
}
