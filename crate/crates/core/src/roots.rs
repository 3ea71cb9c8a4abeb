//! Complex roots of univariate polynomials, multiplicity clustering and the
//! real base factorization used to seed Hensel lifting.
//!
//! Polynomials are slices of [`CFloat`] coefficients in ascending order.

use std::cmp::Ordering;

use rug::Float;

use crate::error::{EngineError, Result};
use crate::series::{eps_c, eps_im, eps_z, CFloat};

/// A group of numerically coincident roots.
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub center: CFloat,
    pub multiplicity: usize,
    pub is_real: bool,
    pub conjugate_partner: Option<usize>,
}

/// Largest coefficient magnitude.
pub fn coeff_norm(p: &[CFloat]) -> f64 {
    p.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
}

fn horner(p: &[CFloat], z: &CFloat) -> CFloat {
    let mut acc = CFloat::zero(z.prec());
    for c in p.iter().rev() {
        acc = acc.mul_ref(z).add_ref(c);
    }
    acc
}

/// Value and derivative at `z`, plus the roundoff scale `sum |a_k| |z|^k`.
fn horner2(p: &[CFloat], z: &CFloat) -> (CFloat, CFloat, f64) {
    let prec = z.prec();
    let mut v = CFloat::zero(prec);
    let mut d = CFloat::zero(prec);
    let az = z.abs_f64();
    let mut s = 0.0;
    for c in p.iter().rev() {
        d = d.mul_ref(z).add_ref(&v);
        v = v.mul_ref(z).add_ref(c);
        s = s * az + c.abs_f64();
    }
    (v, d, s)
}

/// Coefficients of `p(c + y)` (Taylor coefficients of `p` at `c`).
fn taylor_shift(p: &[CFloat], c: &CFloat) -> Vec<CFloat> {
    let mut a: Vec<CFloat> = p.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].mul_ref(c);
            a[j] = a[j].add_ref(&t);
        }
    }
    a
}

/// Taylor coefficients of the polynomial with coefficients `|a_k|` at `|c|`.
fn taylor_shift_abs(p: &[CFloat], c: f64) -> Vec<f64> {
    let mut a: Vec<f64> = p.iter().map(|v| v.abs_f64()).collect();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            a[j] += a[j + 1] * c;
        }
    }
    a
}

/// Extra bits carried by the root iteration beyond the caller's precision.
const GUARD_BITS: u32 = 32;

fn round_all(v: Vec<CFloat>, prec: u32) -> Vec<CFloat> {
    v.into_iter().map(|z| z.with_prec(prec)).collect()
}

/// All `deg p` complex roots by Aberth-Ehrlich simultaneous iteration.
///
/// Exact zero trailing coefficients yield exact zero roots. Each
/// approximation is frozen once its residual reaches roundoff level.
pub fn find_roots(p: &[CFloat], prec: u32) -> Result<Vec<CFloat>> {
    let out_prec = prec;
    let prec = prec + GUARD_BITS;
    let mut p: Vec<CFloat> = p.iter().map(|c| c.with_prec(prec)).collect();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        return Err(EngineError::InputError(
            "root finding on the zero polynomial".into(),
        ));
    }
    let mut roots = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    roots.extend((0..zeros).map(|_| CFloat::zero(prec)));
    let p: Vec<CFloat> = p[zeros..].to_vec();
    let n = p.len() - 1;
    if n == 0 {
        return Ok(round_all(roots, out_prec));
    }
    let lead = p[n].clone();
    let p: Vec<CFloat> = p.iter().map(|c| c.div_ref(&lead)).collect();
    if n == 1 {
        roots.push(-&p[0]);
        return Ok(round_all(roots, out_prec));
    }

    // Starting circle: radius from the geometric mean of the roots, bounded
    // by the Fujiwara bound.
    let a0 = p[0].abs_f64();
    let mut fuj: f64 = 0.0;
    for (k, c) in p.iter().enumerate().take(n) {
        let v = c.abs_f64();
        if v > 0.0 {
            let e = if k == 0 { 2.0 * v } else { v };
            fuj = fuj.max(e.powf(1.0 / (n - k) as f64));
        }
    }
    let mut radius = if a0 > 0.0 {
        a0.powf(1.0 / n as f64)
    } else {
        1.0
    };
    if !radius.is_finite() || radius == 0.0 {
        radius = 1.0;
    }
    radius = radius.min(2.0 * fuj.max(f64::MIN_POSITIVE));
    let mut z: Vec<CFloat> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / n as f64 + 0.7;
            CFloat::from_parts_f64(prec, radius * th.cos(), radius * th.sin())
        })
        .collect();
    let mut done = vec![false; n];
    let unit = (-(prec as f64)).exp2();
    let cap = 500 + 2 * prec as usize + 20 * n;
    let one = CFloat::one(prec);
    for _ in 0..cap {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d, s) = horner2(&p, &z[i]);
            if v.abs_f64() <= 8.0 * n as f64 * unit * s {
                done[i] = true;
                continue;
            }
            all = false;
            if d.is_zero() {
                // Nudge off a critical point.
                let bump = CFloat::from_parts_f64(prec, radius * 1e-3, radius * 1e-3);
                z[i] = z[i].add_ref(&bump);
                continue;
            }
            let ratio = v.div_ref(&d);
            let mut sum = CFloat::zero(prec);
            for j in 0..n {
                if j != i {
                    let diff = z[i].sub_ref(&z[j]);
                    if !diff.is_zero() {
                        sum = sum.add_ref(&diff.recip());
                    }
                }
            }
            let den = one.sub_ref(&ratio.mul_ref(&sum));
            let w = if den.is_zero() {
                ratio
            } else {
                ratio.div_ref(&den)
            };
            z[i] = z[i].sub_ref(&w);
        }
        if all {
            roots.extend(z);
            return Ok(round_all(roots, out_prec));
        }
    }
    Err(EngineError::NonConvergence(cap))
}

/// Single-linkage clustering at distance `eps * scale`, `scale` being
/// `max(1, max |root|)`. Centers are arithmetic means.
///
/// Fails with [`EngineError::AmbiguousClustering`] when two distinct
/// clusters come within `4 eps * scale` of each other.
pub fn cluster_roots(roots: &[CFloat], eps: f64) -> Result<Vec<RootCluster>> {
    let prec = roots.first().map_or(64, |r| r.prec());
    let scale = roots.iter().map(|r| r.abs_f64()).fold(1.0, f64::max);
    let tol = eps * scale;
    let n = roots.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if roots[i].sub_ref(&roots[j]).abs_f64() <= tol {
                uf.union(i, j);
            }
        }
    }
    let groups = uf.groups();
    for (a, ga) in groups.iter().enumerate() {
        for gb in groups.iter().skip(a + 1) {
            let d = ga
                .iter()
                .flat_map(|&i| gb.iter().map(move |&j| (i, j)))
                .map(|(i, j)| roots[i].sub_ref(&roots[j]).abs_f64())
                .fold(f64::INFINITY, f64::min);
            if d <= 4.0 * tol {
                return Err(EngineError::AmbiguousClustering);
            }
        }
    }
    let clusters = groups
        .into_iter()
        .map(|g| RootCluster {
            center: mean(roots, &g, prec),
            multiplicity: g.len(),
            is_real: false,
            conjugate_partner: None,
        })
        .collect();
    finish_clusters(clusters, prec, true)
}

/// Clusters the computed roots of `p` into multiplicity groups, accepting a
/// group of size `m` only when the Taylor coefficients of `p` of order below
/// `m` at its mean vanish to tolerance (so the group really is an `m`-fold
/// root of a polynomial within roundoff of `p`).
///
/// Candidate groups come from single-linkage merging in increasing distance
/// order; the coarsest partition whose groups all pass is kept. Fails with
/// [`EngineError::AmbiguousClustering`] when the next merge distance is not
/// clearly separated from the largest accepted one.
pub fn cluster_polynomial_roots(
    p: &[CFloat],
    roots: &[CFloat],
    prec: u32,
) -> Result<Vec<RootCluster>> {
    let n = roots.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((roots[i].sub_ref(&roots[j]).abs_f64(), i, j));
        }
    }
    edges.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(Ordering::Equal)
            .then((a.1, a.2).cmp(&(b.1, b.2)))
    });

    let tol = eps_z(prec);
    let mut uf = UnionFind::new(n);
    let mut valid = vec![true; n];
    let mut centers: Vec<Option<CFloat>> = vec![None; n];
    let mut invalid_count = 0usize;
    // Best partition so far: (number of accepted merges, max merged distance).
    let mut best_merges = 0usize;
    let mut best_link = 0.0f64;
    let mut merges: Vec<(f64, usize, usize)> = Vec::new();
    for &(d, i, j) in &edges {
        let (a, b) = (uf.find(i), uf.find(j));
        if a == b {
            continue;
        }
        if !valid[a] {
            invalid_count -= 1;
        }
        if !valid[b] {
            invalid_count -= 1;
        }
        let r = uf.union(a, b);
        let members = uf.members(r);
        let c = refine_center(p, mean(roots, &members, prec), members.len());
        let ok = is_multiple_root(p, &c, members.len(), tol);
        centers[r] = Some(c);
        valid[r] = ok;
        if !ok {
            invalid_count += 1;
        }
        merges.push((d, i, j));
        if invalid_count == 0 {
            best_merges = merges.len();
            best_link = d;
        }
    }
    let mut uf = UnionFind::new(n);
    for &(_, i, j) in &merges[..best_merges] {
        uf.union(i, j);
    }
    if let Some(&(next, _, _)) = merges.get(best_merges) {
        if best_merges > 0 && next <= 4.0 * best_link {
            return Err(EngineError::AmbiguousClustering);
        }
    }
    let clusters = uf
        .groups()
        .into_iter()
        .map(|g| {
            let center = if g.len() == 1 {
                roots[g[0]].clone()
            } else {
                refine_center(p, mean(roots, &g, prec), g.len())
            };
            RootCluster {
                center,
                multiplicity: g.len(),
                is_real: false,
                conjugate_partner: None,
            }
        })
        .collect();
    finish_clusters(clusters, prec, is_real_poly(p, prec))
}

/// First `count` Taylor coefficients of `p` at `c`, by repeated synthetic
/// division.
fn taylor_head(p: &[CFloat], c: &CFloat, count: usize) -> Vec<CFloat> {
    let mut a: Vec<CFloat> = p.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if a.is_empty() {
            out.push(CFloat::zero(c.prec()));
            continue;
        }
        let n = a.len();
        let mut q = vec![CFloat::zero(c.prec()); n - 1];
        let mut acc = CFloat::zero(c.prec());
        for j in (0..n).rev() {
            acc = acc.mul_ref(c).add_ref(&a[j]);
            if j > 0 {
                q[j - 1] = acc.clone();
            }
        }
        out.push(acc);
        a = q;
    }
    out
}

/// Polishes the center of an `m`-fold cluster by Newton's method on
/// `p^(m-1)`, of which an `m`-fold root of `p` is a simple root.
fn refine_center(p: &[CFloat], mut c: CFloat, m: usize) -> CFloat {
    if m < 2 || m >= p.len() {
        return c;
    }
    let prec = c.prec();
    let unit = (-(prec as f64)).exp2();
    let scale = Float::with_val(prec, m as f64);
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let t = taylor_head(p, &c, m + 1);
        let der = t[m].scale(&scale);
        if der.is_zero() {
            break;
        }
        let step = t[m - 1].div_ref(&der);
        let size = step.abs_f64();
        if size.is_nan() || size >= last {
            break;
        }
        c = c.sub_ref(&step);
        last = size;
        if size <= unit * c.abs_f64().max(1.0) {
            break;
        }
    }
    c
}

fn is_multiple_root(p: &[CFloat], c: &CFloat, m: usize, tol: f64) -> bool {
    let b = taylor_shift(p, c);
    let s = taylor_shift_abs(p, c.abs_f64());
    (0..m).all(|k| b[k].abs_f64() <= tol * s[k])
}

fn is_real_poly(p: &[CFloat], prec: u32) -> bool {
    let t = eps_im(prec);
    p.iter()
        .all(|c| c.im_f64().abs() <= t * c.abs_f64().max(f64::MIN_POSITIVE))
}

fn mean(roots: &[CFloat], idx: &[usize], prec: u32) -> CFloat {
    let mut s = CFloat::zero(prec);
    for &i in idx {
        s = s.add_ref(&roots[i]);
    }
    s.scale(&Float::with_val(prec, 1.0 / idx.len() as f64))
}

/// Sets realness flags, pairs conjugates (when `real_input`) and sorts the
/// clusters by real part, then imaginary part.
fn finish_clusters(
    mut cs: Vec<RootCluster>,
    prec: u32,
    real_input: bool,
) -> Result<Vec<RootCluster>> {
    let scale = cs.iter().map(|c| c.center.abs_f64()).fold(1.0, f64::max);
    let tim = eps_im(prec) * scale;
    for c in cs.iter_mut() {
        if c.center.im_f64().abs() <= tim {
            c.is_real = true;
            c.center.im = Float::new(prec);
        }
    }
    if real_input {
        let tpair = eps_c(prec) * scale;
        let n = cs.len();
        for i in 0..n {
            if cs[i].is_real || cs[i].conjugate_partner.is_some() {
                continue;
            }
            let target = cs[i].center.conj();
            let partner = (0..n)
                .filter(|&j| {
                    j != i
                        && !cs[j].is_real
                        && cs[j].conjugate_partner.is_none()
                        && cs[j].multiplicity == cs[i].multiplicity
                })
                .map(|j| (cs[j].center.sub_ref(&target).abs_f64(), j))
                .filter(|&(d, _)| d <= tpair)
                .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
            match partner {
                Some((_, j)) => {
                    // Symmetrize the pair exactly.
                    let half = Float::with_val(prec, 0.5);
                    let avg = cs[i].center.add_ref(&cs[j].center.conj()).scale(&half);
                    cs[j].center = avg.conj();
                    cs[i].center = avg;
                    cs[i].conjugate_partner = Some(j);
                    cs[j].conjugate_partner = Some(i);
                }
                None => return Err(EngineError::UnpairedComplexRoot),
            }
        }
    }
    let mut order: Vec<usize> = (0..cs.len()).collect();
    order.sort_by(|&a, &b| {
        let (a, b) = (&cs[a].center, &cs[b].center);
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
    let mut pos = vec![0; cs.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    Ok(order
        .iter()
        .map(|&i| {
            let mut c = cs[i].clone();
            c.conjugate_partner = c.conjugate_partner.map(|j| pos[j]);
            c
        })
        .collect())
}

/// Coefficients (ascending) of `(y - r)^m`, or of `(y^2 - a y + b)^m` for a
/// conjugate pair; complex clusters of a non-real input give `(y - c)^m`.
///
/// Factors appear in cluster order, each conjugate pair once (at its first
/// member).
pub fn build_base_factors(clusters: &[RootCluster]) -> Result<Vec<Vec<CFloat>>> {
    let mut out = Vec::new();
    let prec = clusters.first().map_or(64, |c| c.center.prec());
    for (i, c) in clusters.iter().enumerate() {
        let base: Vec<CFloat> = if c.is_real {
            let mut r = c.center.clone();
            r.im = Float::new(prec);
            vec![-&r, CFloat::one(prec)]
        } else {
            match c.conjugate_partner {
                Some(j) if j < i => continue,
                Some(_) => {
                    let alpha = Float::with_val(prec, &c.center.re * 2u32);
                    let beta = Float::with_val(
                        prec,
                        c.center.re.clone().square() + c.center.im.clone().square(),
                    );
                    vec![
                        CFloat::new(beta, Float::new(prec)),
                        CFloat::new(-alpha, Float::new(prec)),
                        CFloat::one(prec),
                    ]
                }
                None => vec![-&c.center, CFloat::one(prec)],
            }
        };
        let mut f = vec![CFloat::one(prec)];
        for _ in 0..c.multiplicity {
            f = poly_mul(&f, &base);
        }
        out.push(f);
    }
    Ok(out)
}

/// Product of two coefficient vectors.
pub fn poly_mul(a: &[CFloat], b: &[CFloat]) -> Vec<CFloat> {
    let prec = a[0].prec().max(b[0].prec());
    let mut out = vec![CFloat::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul(x, y);
        }
    }
    out
}

/// Monic polynomial with the given roots.
pub fn poly_from_roots(roots: &[CFloat], prec: u32) -> Vec<CFloat> {
    let mut f = vec![CFloat::one(prec)];
    for r in roots {
        f = poly_mul(&f, &[-r, CFloat::one(prec)]);
    }
    f
}

/// Residual `|p(z)|`.
pub fn residual(p: &[CFloat], z: &CFloat) -> f64 {
    horner(p, z).abs_f64()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut i = i;
        while self.parent[i] != r {
            let next = self.parent[i];
            self.parent[i] = r;
            i = next;
        }
        r
    }

    /// Joins the sets of `a` and `b`; returns the new root (the smaller index).
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        lo
    }

    fn members(&mut self, r: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == r)
            .collect()
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(i);
        }
        out
    }
}
