//! Order-by-order Hensel lifting of a coprime factorization of `F(0, y)` to
//! a factorization of `F(x, y)` modulo `x^(N+1)`.

use crate::error::{EngineError, Result};
use crate::roots::{coeff_norm, poly_mul};
use crate::series::{eps_c, eps_z, CFloat, Coef, SeriesYPoly, TruncSeries, EXACT};

/// Lifted factors of a monic polynomial.
#[derive(Clone, Debug)]
pub struct LiftedFactorization {
    pub factors: Vec<SeriesYPoly>,
    /// Order in `x` up to which the factorization holds.
    pub trunc: i64,
    /// Largest coefficient of `F - prod factors` through `x^trunc`.
    pub residual_norm: f64,
}

/// Precomputed inverse of the Sylvester matrix of `(g0, h0)`.
struct Bezout {
    a: usize,
    b: usize,
    inv: Vec<Vec<CFloat>>,
    inv_abs: Vec<Vec<f64>>,
}

impl Bezout {
    /// Columns `0..b` multiply `g0` by `y^k` (unknown `s`), columns `b..b+a`
    /// multiply `h0` by `y^k` (unknown `t`).
    fn new(g0: &[CFloat], h0: &[CFloat], prec: u32) -> Result<Self> {
        let a = g0.len() - 1;
        let b = h0.len() - 1;
        let n = a + b;
        let mut m = vec![vec![CFloat::zero(prec); n]; n];
        for k in 0..b {
            for (r, c) in g0.iter().enumerate() {
                if r + k < n {
                    m[r + k][k] = c.with_prec(prec);
                }
            }
        }
        for k in 0..a {
            for (r, c) in h0.iter().enumerate() {
                if r + k < n {
                    m[r + k][b + k] = c.with_prec(prec);
                }
            }
        }
        let norm_m = row_norm(&m);
        let inv = invert(m, prec).ok_or(EngineError::NotCoprime(i64::MAX))?;
        let cond = norm_m * row_norm(&inv);
        if !cond.is_finite() || cond > (prec as f64 / 2.0).exp2() {
            return Err(EngineError::NotCoprime(if cond.is_finite() {
                cond.log2() as i64
            } else {
                i64::MAX
            }));
        }
        // Entries that should vanish come out at noise level.
        let inv_max = inv
            .iter()
            .flatten()
            .fold(0.0, |m: f64, v| m.max(v.abs_f64()));
        let tol = eps_z(prec) * inv_max;
        let inv: Vec<Vec<CFloat>> = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| {
                        if v.abs_f64() <= tol {
                            CFloat::zero(prec)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let inv_abs = inv
            .iter()
            .map(|r| r.iter().map(|v| v.abs_f64()).collect())
            .collect();
        Ok(Self { a, b, inv, inv_abs })
    }

    /// Solves `s g0 + t h0 = rhs`; returns `(s, t)`. Zero detection uses
    /// `eps_z(noise)`.
    fn solve(&self, rhs: &[Coef], prec: u32, noise: u32) -> (Vec<Coef>, Vec<Coef>) {
        let n = self.a + self.b;
        let mut out = Vec::with_capacity(n);
        for r in 0..n {
            let mut v = CFloat::zero(prec);
            let mut scale = 0.0;
            for (c, x) in rhs.iter().enumerate() {
                if !x.value.is_zero() {
                    v.add_mul(&self.inv[r][c], &x.value);
                    scale += self.inv_abs[r][c] * x.scale.max(x.abs());
                }
            }
            let c = Coef { value: v, scale };
            out.push(if c.is_noise_at(noise) {
                Coef::zero(prec)
            } else {
                c
            });
        }
        let t = out.split_off(self.b);
        (out, t)
    }
}

/// Non-leading coefficients of a monic base factor.
///
/// The base factors come from computed roots, so a coefficient that should
/// vanish (say the middle one of `y^2 + 1`) is noise relative to the roots,
/// not to itself. `C(a, k) rho^(a-k)` bounds the sum of the products making
/// up coefficient `k`, `rho` being the Fujiwara root bound.
fn base_coefs(f0: &[CFloat], noise: u32) -> Vec<Coef> {
    let a = f0.len() - 1;
    let rho = (1..=a)
        .map(|k| {
            let c = f0[a - k].abs_f64();
            let c = if k == a { c / 2.0 } else { c };
            2.0 * c.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max);
    let mut binom = 1.0;
    let mut out = Vec::with_capacity(a);
    for (k, v) in f0[..a].iter().enumerate() {
        let c = Coef {
            value: v.clone(),
            scale: binom * rho.powi((a - k) as i32),
        };
        out.push(if c.is_noise_at(noise) {
            Coef::zero(c.value.prec())
        } else {
            c
        });
        binom = binom * (a - k) as f64 / (k + 1) as f64;
    }
    out
}

fn neg(c: &Coef) -> Coef {
    Coef {
        value: -&c.value,
        scale: c.scale,
    }
}

fn row_norm(m: &[Vec<CFloat>]) -> f64 {
    m.iter()
        .map(|r| r.iter().map(|v| v.abs_f64()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Gauss-Jordan inversion with partial pivoting.
fn invert(mut m: Vec<Vec<CFloat>>, prec: u32) -> Option<Vec<Vec<CFloat>>> {
    let n = m.len();
    let mut inv: Vec<Vec<CFloat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CFloat::one(prec)
                    } else {
                        CFloat::zero(prec)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs_f64().total_cmp(&m[j][col].abs_f64()))?;
        if m[piv][col].is_zero() {
            return None;
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] = m[col][j].mul_ref(&p);
            inv[col][j] = inv[col][j].mul_ref(&p);
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..n {
                let (mc, ic) = (m[col][j].clone(), inv[col][j].clone());
                m[i][j].sub_mul(&f, &mc);
                inv[i][j].sub_mul(&f, &ic);
            }
        }
    }
    Some(inv)
}

/// Solves `s g0 + t h0 = rhs` with `deg s < deg h0`, `deg t < deg g0`.
///
/// `g0`, `h0` are monic coefficient vectors (ascending).
pub fn bezout_cofactors(
    g0: &[CFloat],
    h0: &[CFloat],
    rhs: &[CFloat],
) -> Result<(Vec<CFloat>, Vec<CFloat>)> {
    let prec = g0[0].prec();
    let bz = Bezout::new(g0, h0, prec)?;
    let n = bz.a + bz.b;
    if rhs.len() > n && rhs[n..].iter().any(|c| !c.is_zero()) {
        return Err(EngineError::DegreeOverflow);
    }
    let r: Vec<Coef> = (0..n)
        .map(|k| Coef::exact(rhs.get(k).cloned().unwrap_or_else(|| CFloat::zero(prec))))
        .collect();
    let (s, t) = bz.solve(&r, prec, prec);
    Ok((
        s.into_iter().map(|c| c.value).collect(),
        t.into_iter().map(|c| c.value).collect(),
    ))
}

/// Dense `x`-major view of a monic `F` with ramification 1: `out[i][k]` is
/// the coefficient of `x^i y^k` for `k < deg F`.
fn dense(f: &SeriesYPoly, order: i64, prec: u32) -> Result<Vec<Vec<Coef>>> {
    let n = f.degree();
    let mut out = vec![vec![Coef::exact(CFloat::zero(prec)); n]; order as usize + 1];
    for (k, c) in f.coeffs().iter().enumerate().take(n) {
        if c.ram() != 1 {
            return Err(EngineError::Internal(
                "Hensel lifting needs ramification 1".into(),
            ));
        }
        for (e, v) in c.terms() {
            if e < 0 {
                return Err(EngineError::Internal(
                    "negative exponent in lifted polynomial".into(),
                ));
            }
            if e <= order {
                out[e as usize][k] = v.clone();
            }
        }
    }
    Ok(out)
}

/// Order up to which `F` can be lifted: `min(n, trunc F)`.
fn lift_order(f: &SeriesYPoly, n: i64) -> i64 {
    let t = f.coeffs().iter().map(|c| c.trunc()).min().unwrap_or(EXACT);
    n.min(t)
}

fn to_series(parts: &[Vec<Coef>], k: usize, order: i64, prec: u32) -> TruncSeries {
    let mut s = TruncSeries::zero_to(prec, 1, order);
    let terms: Vec<(i64, Coef)> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p[k].value.is_zero())
        .map(|(i, p)| (i as i64, p[k].clone()))
        .collect();
    s.extend_coefs(terms);
    s
}

fn assemble(parts: &[Vec<Coef>], base: &[CFloat], order: i64, prec: u32) -> SeriesYPoly {
    let a = base.len() - 1;
    let mut cs = Vec::with_capacity(a + 1);
    for k in 0..a {
        cs.push(to_series(parts, k, order, prec));
    }
    cs.push(TruncSeries::one(prec));
    SeriesYPoly::new(prec, cs)
}

/// Lifts `F(0, y) = g0 h0` to `F = G H mod x^(n+1)` with `G(0, y) = g0`,
/// `H(0, y) = h0`.
pub fn hensel_lift2(
    f: &SeriesYPoly,
    g0: &[CFloat],
    h0: &[CFloat],
    n: i64,
) -> Result<(SeriesYPoly, SeriesYPoly)> {
    lift2(f, g0, h0, n, f.prec())
}

fn lift2(
    f: &SeriesYPoly,
    g0: &[CFloat],
    h0: &[CFloat],
    n: i64,
    base_prec: u32,
) -> Result<(SeriesYPoly, SeriesYPoly)> {
    let prec = f.prec();
    if !f.is_monic() {
        return Err(EngineError::DegreeOverflow);
    }
    let a = g0.len() - 1;
    let b = h0.len() - 1;
    if a + b != f.degree() {
        return Err(EngineError::Internal("base degrees do not add up".into()));
    }
    let order = lift_order(f, n).max(0);
    let fd = dense(f, order, prec)?;

    // F(0, y) must be g0 h0.
    let prod = poly_mul(g0, h0);
    let f0: Vec<CFloat> = f.at_x0();
    let scale = coeff_norm(&f0).max(1.0);
    let gap = prod
        .iter()
        .zip(&f0)
        .map(|(p, q)| p.sub_ref(q).abs_f64())
        .fold(0.0, f64::max);
    if gap > eps_c(base_prec) * scale {
        return Err(EngineError::Internal(format!(
            "base factors do not reduce F (gap {gap:e})"
        )));
    }

    let (gb, hb) = (base_coefs(g0, base_prec), base_coefs(h0, base_prec));
    let monic = |c: &[Coef]| -> Vec<CFloat> {
        c.iter()
            .map(|v| v.value.clone())
            .chain([CFloat::one(prec)])
            .collect()
    };
    let bz = Bezout::new(&monic(&gb), &monic(&hb), prec)?;
    let zero = Coef::exact(CFloat::zero(prec));
    let mut g: Vec<Vec<Coef>> = vec![gb];
    let mut h: Vec<Vec<Coef>> = vec![hb];
    for i in 1..=order as usize {
        let mut l: Vec<Coef> = fd[i].clone();
        for j in 1..i {
            for (p, gp) in g[j].iter().enumerate() {
                if gp.value.is_zero() {
                    continue;
                }
                for (q, hq) in h[i - j].iter().enumerate() {
                    if !hq.value.is_zero() {
                        l[p + q].add_mul(gp, &neg(hq));
                    }
                }
            }
        }
        for e in l.iter_mut() {
            if e.is_noise_at(base_prec) {
                *e = Coef::zero(prec);
            }
        }
        if l.iter().all(|e| e.value.is_zero()) {
            g.push(vec![zero.clone(); a]);
            h.push(vec![zero.clone(); b]);
            continue;
        }
        let (s, t) = bz.solve(&l, prec, base_prec);
        h.push(s);
        g.push(t);
    }
    Ok((assemble(&g, g0, order, prec), assemble(&h, h0, order, prec)))
}

/// Lifts each base factor against the product of the others and keeps it.
pub fn hensel_lift_multi(
    f: &SeriesYPoly,
    base: &[Vec<CFloat>],
    n: i64,
) -> Result<LiftedFactorization> {
    let prec = f.prec();
    let order = lift_order(f, n).max(0);
    if base.len() == 1 {
        return Ok(LiftedFactorization {
            factors: vec![f.truncate(order)],
            trunc: order,
            residual_norm: 0.0,
        });
    }
    let lifted = lift_each(f, base, order, prec)?;
    let residual_norm = product_residual(f, &lifted, order);
    let bound = eps_c(prec) * f.max_abs();
    if residual_norm <= bound {
        return Ok(LiftedFactorization {
            factors: lifted,
            trunc: order,
            residual_norm,
        });
    }
    // Fast-growing coefficients: the rounding of the products alone exceeds
    // the bound. Redo the lift with enough extra bits to absorb the growth.
    let growth = lifted.iter().map(|g| g.max_abs()).fold(1.0, f64::max);
    let extra = (2.0 * growth.log2()).ceil() as u32 + 64;
    let wide = (prec + extra).div_ceil(64) * 64;
    let base: Vec<Vec<CFloat>> = base
        .iter()
        .map(|b| {
            base_coefs(b, prec)
                .iter()
                .map(|c| c.value.with_prec(wide))
                .chain([CFloat::one(wide)])
                .collect()
        })
        .collect();
    let fw = f.with_prec(wide);
    let factors = lift_each(&fw, &base, order, prec)?;
    let residual_norm = product_residual(&fw, &factors, order);
    Ok(LiftedFactorization {
        factors,
        trunc: order,
        residual_norm,
    })
}

/// `base_prec` is the precision the base factors are accurate to.
fn lift_each(
    f: &SeriesYPoly,
    base: &[Vec<CFloat>],
    order: i64,
    base_prec: u32,
) -> Result<Vec<SeriesYPoly>> {
    let prec = f.prec();
    let mut factors = Vec::with_capacity(base.len());
    for (i, bi) in base.iter().enumerate() {
        let mut rest = vec![CFloat::one(prec)];
        for (j, bj) in base.iter().enumerate() {
            if j != i {
                rest = poly_mul(&rest, bj);
            }
        }
        let (gi, _) = lift2(f, bi, &rest, order, base_prec)?;
        factors.push(gi);
    }
    Ok(factors)
}

/// Largest coefficient of `F - prod factors` through `x^order`.
///
/// The product is formed densely without zero detection: chained products
/// of ill-conditioned factors cancel far below the noise threshold before
/// the next factor scales the survivors back up.
pub fn product_residual(f: &SeriesYPoly, factors: &[SeriesYPoly], order: i64) -> f64 {
    let prec = factors.iter().map(|g| g.prec()).fold(f.prec(), u32::max);
    let rows = order.max(0) as usize + 1;
    let grid = |p: &SeriesYPoly| -> Option<Vec<Vec<CFloat>>> {
        let mut out = vec![vec![CFloat::zero(prec); p.degree() + 1]; rows];
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.ram() != 1 {
                return None;
            }
            for (e, v) in c.terms() {
                if e < 0 {
                    return None;
                }
                if e <= order {
                    out[e as usize][k] = v.value.with_prec(prec);
                }
            }
        }
        Some(out)
    };
    let grids: Option<Vec<_>> = factors.iter().map(grid).collect();
    let (Some(grids), Some(target)) = (grids, grid(f)) else {
        let mut prod = factors[0].clone();
        for g in &factors[1..] {
            prod = prod.mul(g);
        }
        return prod.truncate(order).max_diff(&f.truncate(order));
    };
    let mut prod = grids[0].clone();
    for g in &grids[1..] {
        let width = prod[0].len() + g[0].len() - 1;
        let mut next = vec![vec![CFloat::zero(prec); width]; rows];
        for (i, row) in prod.iter().enumerate() {
            for (j, grow) in g.iter().enumerate().take(rows - i) {
                for (p, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (q, y) in grow.iter().enumerate() {
                        if !y.is_zero() {
                            next[i + j][p + q].add_mul(x, y);
                        }
                    }
                }
            }
        }
        prod = next;
    }
    let zero = CFloat::zero(prec);
    let mut worst: f64 = 0.0;
    for (row, want) in prod.iter().zip(&target) {
        for k in 0..row.len().max(want.len()) {
            let x = row.get(k).unwrap_or(&zero);
            let y = want.get(k).unwrap_or(&zero);
            worst = worst.max(x.sub_ref(y).abs_f64());
        }
    }
    worst
}
