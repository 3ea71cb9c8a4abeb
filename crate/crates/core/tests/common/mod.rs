#![allow(dead_code)]

use limit2::polyq::BivarPoly;
use limit2::series::{CFloat, TruncSeries, EXACT};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub enum Expect {
    Exists(f64),
    /// Distinct finite branch values, and whether an infinite value occurs.
    DoesNotExist(Vec<f64>, bool),
    Undefined,
}

pub struct Golden {
    pub label: &'static str,
    pub f: &'static str,
    pub g: &'static str,
    pub order: i64,
    pub expect: Expect,
}

/// Printed decimals of the published run.
pub const PEAK: f64 = 2.033104508;
pub const THIRD: f64 = 0.3333333333;

pub fn golden_cases() -> Vec<Golden> {
    use Expect::*;
    vec![
        Golden {
            label: "ex1",
            f: "6*x^3*y",
            g: "2*x^4+y^4",
            order: 20,
            expect: DoesNotExist(vec![-PEAK, 0.0, PEAK], false),
        },
        Golden {
            label: "ex2",
            f: "x^3+y^3",
            g: "x^2+x*y+y^2",
            order: 20,
            expect: Exists(0.0),
        },
        Golden {
            label: "ex3",
            f: "6*x^3*y",
            g: "2*x^4+y^4",
            order: 20,
            expect: DoesNotExist(vec![-PEAK, 0.0, PEAK], false),
        },
        Golden {
            label: "ex4",
            f: "x^4-y^2+3*x^2*y-x^2",
            g: "x^2+y^2",
            order: 20,
            expect: Exists(-1.0),
        },
        Golden {
            label: "ex5",
            f: "x^2-y^2",
            g: "x^2+y^2",
            order: 10,
            expect: DoesNotExist(vec![-1.0, 1.0], false),
        },
        Golden {
            label: "ex6",
            f: "x^6-y^4+3*x^2*y^3-x^4*y",
            g: "x^4+y^4+x^2+y^2",
            order: 20,
            expect: Exists(0.0),
        },
        Golden {
            label: "ex7",
            f: "x",
            g: "x^2+y^2",
            order: 30,
            expect: Undefined,
        },
        Golden {
            label: "ex8",
            f: "y^4",
            g: "x^4+3*y^4",
            order: 50,
            expect: DoesNotExist(vec![0.0, THIRD], false),
        },
        Golden {
            label: "ex9",
            f: "6*x^3*y",
            g: "2*x^4+y^4",
            order: 10,
            expect: DoesNotExist(vec![-PEAK, 0.0, PEAK], false),
        },
        Golden {
            label: "ex10",
            f: "x^4*y^4",
            g: "(x^8+y^8)^3",
            order: 20,
            expect: DoesNotExist(vec![0.0], true),
        },
    ]
}

/// Sorted values with near-duplicates (within `tol`) merged.
pub fn distinct(mut v: Vec<f64>, tol: f64) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| (*a - *b).abs() <= tol);
    v
}

pub fn same_set(got: &[f64], want: &[f64], tol: f64) -> bool {
    let got = distinct(got.to_vec(), tol);
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol)
}

/// Maximum of `phi` on `[lo, hi]` by golden-section search.
pub fn maximize(phi: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let a = hi - r * (hi - lo);
        let b = lo + r * (hi - lo);
        if phi(a) < phi(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    phi((lo + hi) / 2.0)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Rational with numerator in `[-10, 10]` and denominator in `[1, 10]`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != 0 {
            return q;
        }
    }
}

/// Random polynomial in `x` alone of degree at most `deg`.
pub fn random_xpoly(rng: &mut ChaCha8Rng, deg: u32) -> BivarPoly {
    BivarPoly::from_terms((0..=deg).map(|i| (i, 0, small_rational(rng))))
}

/// Random `y^d + sum c_j(x) y^j`.
pub fn random_monic(rng: &mut ChaCha8Rng, d: u32, xdeg: u32) -> BivarPoly {
    let mut p = BivarPoly::monomial(0, d, rat(1, 1));
    for j in 0..d {
        let c = random_xpoly(rng, xdeg);
        p = &p + &(&c * &BivarPoly::monomial(0, j, rat(1, 1)));
    }
    p
}

type Matrix = Vec<Vec<BivarPoly>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).fold(BivarPoly::zero(), |acc, l| &acc + &(&a[i][l] * &b[l][j])))
                .collect()
        })
        .collect()
}

fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BivarPoly::one()
                    } else {
                        BivarPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `prod over k-th roots of unity w of (y - p(w x^(1/k)))` as the
/// characteristic polynomial of `p(C)`, where `C` is the companion matrix
/// of `z^k - x` (Faddeev-LeVerrier over `Q[x]`). `p` is given by its
/// coefficients in ascending powers of `s = x^(1/k)`.
pub fn conjugate_orbit(p: &[Rational], k: usize) -> BivarPoly {
    let mut c: Matrix = vec![vec![BivarPoly::zero(); k]; k];
    for i in 0..k - 1 {
        c[i + 1][i] = BivarPoly::one();
    }
    c[0][k - 1] = &c[0][k - 1] + &BivarPoly::x();
    // A = p(C) by Horner.
    let mut a: Matrix = vec![vec![BivarPoly::zero(); k]; k];
    for coef in p.iter().rev() {
        a = mat_mul(&a, &c);
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = &row[i] + &BivarPoly::constant(coef.clone());
        }
    }
    let mut coeffs = vec![BivarPoly::zero(); k + 1];
    coeffs[k] = BivarPoly::one();
    let mut m: Matrix = vec![vec![BivarPoly::zero(); k]; k];
    for i in 1..=k {
        m = mat_mul(&a, &m);
        let id = identity(k);
        for r in 0..k {
            m[r][r] = &m[r][r] + &(&id[r][r] * &coeffs[k - i + 1]);
        }
        let am = mat_mul(&a, &m);
        let tr = (0..k).fold(BivarPoly::zero(), |acc, r| &acc + &am[r][r]);
        coeffs[k - i] = tr.scale(&rat(-1, i as i64));
    }
    coeffs
        .iter()
        .enumerate()
        .fold(BivarPoly::zero(), |acc, (j, cj)| {
            &acc + &(cj * &BivarPoly::monomial(0, j as u32, rat(1, 1)))
        })
}

/// `p(sign * t^step)` as a series in `t`.
pub fn branch_series(p: &[Rational], sign: i64, step: i64, prec: u32) -> TruncSeries {
    TruncSeries::from_terms(
        prec,
        1,
        EXACT,
        p.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(m, c)| {
                let s = if sign < 0 && m % 2 == 1 {
                    Rational::from(-c)
                } else {
                    c.clone()
                };
                (m as i64 * step, CFloat::from_rational(prec, &s))
            }),
    )
}

/// `max |f/g - l|` and the range of `f/g` over `n` angles on the circle of
/// radius `r`.
pub fn sample_circle(f: &BivarPoly, g: &BivarPoly, r: f64, n: usize, l: f64) -> (f64, f64, f64) {
    let mut dev: f64 = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let th = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
        let (x, y) = (r * th.cos(), r * th.sin());
        let q = f.eval_f64(x, y) / g.eval_f64(x, y);
        dev = dev.max((q - l).abs());
        lo = lo.min(q);
        hi = hi.max(q);
    }
    (dev, lo, hi)
}

pub const P: u32 = 192;

pub fn two_pow(e: f64) -> f64 {
    2f64.powf(e)
}

pub struct HenselCheck {
    pub degree: u32,
    pub order: i64,
    pub factors: usize,
    pub residual: f64,
    pub bound: f64,
    pub base_err: f64,
    pub base_bound: f64,
}

/// Random monic `F` lifted from the root clusters of `F(0, y)`.
pub fn hensel_case(rng: &mut ChaCha8Rng) -> limit2::Result<HenselCheck> {
    use limit2::hensel::{hensel_lift_multi, product_residual};
    use limit2::roots::{build_base_factors, cluster_polynomial_roots, find_roots};
    use limit2::series::SeriesYPoly;
    let d = rng.gen_range(1..=8);
    let order = rng.gen_range(1..=40);
    let xdeg = rng.gen_range(0..=3);
    let f = random_monic(rng, d, xdeg);
    let sf = SeriesYPoly::from_bivar(&f, P);
    let f0 = sf.at_x0();
    let roots = find_roots(&f0, P)?;
    let clusters = cluster_polynomial_roots(&f0, &roots, P)?;
    let base = build_base_factors(&clusters)?;
    let lifted = hensel_lift_multi(&sf, &base, order)?;
    let residual = product_residual(&sf, &lifted.factors, order);
    let mut base_err: f64 = 0.0;
    for (g, b) in lifted.factors.iter().zip(&base) {
        for (u, v) in g.at_x0().iter().zip(b) {
            base_err = base_err.max(u.sub_ref(v).abs_f64());
        }
    }
    Ok(HenselCheck {
        degree: d,
        order,
        factors: lifted.factors.len(),
        residual,
        bound: two_pow(-(P as f64) / 3.0) * sf.max_abs(),
        base_err,
        base_bound: two_pow(-(P as f64) / 2.0),
    })
}

pub struct BranchCheck {
    pub degree: usize,
    pub expected: usize,
    pub found: usize,
    pub matched: usize,
    /// Branches matched through order `n` in their own parameter `x^(1/k)`
    /// rather than in `x`.
    pub matched_own: usize,
    pub max_err: f64,
    pub bound: f64,
    pub ram: u32,
    pub orbits: Vec<(Vec<Rational>, usize)>,
}

/// Random product of conjugate orbits with known branches, checked against
/// the real branches recovered by the factorization.
pub fn branch_case(rng: &mut ChaCha8Rng, n: i64) -> limit2::Result<BranchCheck> {
    use limit2::puiseux::factorize_branches;
    use limit2::series::SeriesYPoly;
    let mut orbits: Vec<(Vec<Rational>, usize)> = Vec::new();
    let mut deg = 0;
    let count = rng.gen_range(1..=3);
    while orbits.len() < count {
        let k = rng.gen_range(1..=4usize);
        if deg + k > 8 {
            break;
        }
        let len = rng.gen_range(2..=5);
        let mut p: Vec<Rational> = (0..len).map(|_| small_rational(rng)).collect();
        if rng.gen_bool(0.5) {
            p[0] = Rational::new();
        }
        // A nonzero x^(1/k) term keeps the k conjugates distinct.
        p[1] = nonzero_rational(rng);
        if orbits.iter().any(|(q, _)| q[0] == p[0] && q[1] == p[1]) {
            continue;
        }
        deg += k;
        orbits.push((p, k));
    }
    let poly = orbits.iter().fold(BivarPoly::one(), |acc, (p, k)| {
        &acc * &conjugate_orbit(p, *k)
    });
    let sp = SeriesYPoly::from_bivar(&poly, P);
    let fact = factorize_branches(&sp, n)?;
    let ram = fact.ram;
    let found: Vec<TruncSeries> = fact
        .real_branches()
        .into_iter()
        .flat_map(|(e, a, m)| std::iter::repeat_n(a.substitute_x_pow(e), m))
        .collect();
    let limit = n * ram as i64;
    // Each expected branch with the exponent limit of its own parameter
    // `x^(1/k)` through order `n`.
    let mut expected = Vec::new();
    for (p, k) in &orbits {
        let step = ram as i64 / *k as i64;
        expected.push((branch_series(p, 1, step, P), n * step));
        if k % 2 == 0 {
            expected.push((branch_series(p, -1, step, P), n * step));
        }
    }
    let mut used = vec![false; found.len()];
    let mut max_err: f64 = 0.0;
    let mut matched = 0;
    let mut matched_own = 0;
    for (want, own) in &expected {
        let close = |a: &TruncSeries| {
            a.truncate(*own).max_diff(&want.truncate(*own)) <= two_pow(-(P as f64) / 4.0)
        };
        if found.iter().any(|a| a.trunc() >= *own && close(a)) {
            matched_own += 1;
        }
        let want = want.truncate(limit);
        let best = found
            .iter()
            .enumerate()
            .filter(|(j, a)| !used[*j] && a.trunc() >= limit)
            .map(|(j, a)| (j, a.truncate(limit).max_diff(&want)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if let Some((j, err)) = best {
            if err <= two_pow(-(P as f64) / 4.0) {
                used[j] = true;
                matched += 1;
            }
            max_err = max_err.max(err);
        }
    }
    Ok(BranchCheck {
        degree: deg,
        expected: expected.len(),
        found: found.len(),
        matched,
        matched_own,
        max_err,
        bound: two_pow(-(P as f64) / 4.0),
        ram,
        orbits,
    })
}

/// Random monic polynomial with truncated series coefficients.
pub fn random_series_poly(rng: &mut ChaCha8Rng) -> limit2::series::SeriesYPoly {
    use limit2::series::SeriesYPoly;
    let d = rng.gen_range(2..=5);
    let mut cs = Vec::new();
    for _ in 0..d {
        let t = rng.gen_range(0..=20);
        let mut terms: Vec<(i64, CFloat)> = Vec::new();
        for k in 0..=t {
            if rng.gen_bool(0.4) {
                terms.push((k, CFloat::from_rational(P, &small_rational(rng))));
            }
        }
        cs.push(TruncSeries::from_terms(P, 1, t, terms));
    }
    cs.push(TruncSeries::one(P));
    SeriesYPoly::new(P, cs)
}

/// Worst `|p - untransform(transform(p))| / tol` over `count` random inputs.
pub fn transform_round_trip(rng: &mut ChaCha8Rng, count: usize) -> f64 {
    use limit2::puiseux::{newton_transform, newton_untransform};
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let p = random_series_poly(rng);
        let (q, _, nd) = newton_transform(&p);
        let tol = two_pow(-(P as f64) / 2.0) * (1.0 + p.max_abs());
        let err = match nd.u {
            Some(u) => {
                let d = p.degree();
                newton_untransform(d, p.coeff(d - 1), nd.r, u, &q).max_diff(&p)
            }
            None => q.max_diff(&p),
        };
        worst = worst.max(err / tol);
    }
    worst
}

/// Random sparse polynomial with small rational coefficients.
pub fn random_bivar(rng: &mut ChaCha8Rng, terms: usize, max_deg: u32) -> BivarPoly {
    BivarPoly::from_terms((0..terms).map(|_| {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg - i);
        (i, j, small_rational(rng))
    }))
}

/// Golden cases whose verdict changes under rotation, scaling of `f` or
/// swapping the variables.
pub fn invariance_failures() -> Vec<String> {
    use limit2::limits::{decide_limit, LimitConfig, LimitOutcome, Verdict};
    use limit2::polyq::{apply_rotation, parse_poly};
    let mut bad = Vec::new();
    for case in golden_cases() {
        let cfg = LimitConfig {
            order: case.order,
            ..LimitConfig::default()
        };
        let f = parse_poly(case.f).unwrap();
        let g = parse_poly(case.g).unwrap();
        let base = match decide_limit(&f, &g, &cfg) {
            Ok(o) => o,
            Err(e) => {
                bad.push(format!("{}: {e}", case.label));
                continue;
            }
        };
        let same = |out: &LimitOutcome, scale: f64| match (&base.verdict, &out.verdict) {
            (Verdict::Exists(a), Verdict::Exists(b)) => {
                (a * scale - b).abs() <= 1e-6 * (1.0 + a.abs())
            }
            (Verdict::DoesNotExist, Verdict::DoesNotExist) => {
                let want: Vec<f64> = base.finite_values().iter().map(|v| v * scale).collect();
                same_set(&out.finite_values(), &distinct(want, 1e-6), 1e-6)
            }
            (Verdict::Undefined(_), Verdict::Undefined(_)) => true,
            _ => false,
        };
        let mut variants: Vec<(String, BivarPoly, BivarPoly, f64)> = Vec::new();
        for k in [1, 2] {
            variants.push((
                format!("rotation {k}"),
                apply_rotation(&f, k),
                apply_rotation(&g, k),
                1.0,
            ));
        }
        for (c, s) in [(rat(2, 1), 2.0), (rat(-3, 2), -1.5)] {
            variants.push((format!("scale {s}"), f.scale(&c), g.clone(), s));
        }
        variants.push(("swap".into(), f.swap_xy(), g.swap_xy(), 1.0));
        for (what, f2, g2, s) in variants {
            match decide_limit(&f2, &g2, &cfg) {
                Ok(out) if same(&out, s) => {}
                Ok(out) => bad.push(format!("{} {what}: {:?}", case.label, out.verdict)),
                Err(e) => bad.push(format!("{} {what}: {e}", case.label)),
            }
        }
    }
    bad
}

/// `x^2 + y^2 + (a x^2 + b x y + c y^2)^2` and a numerator of degree 2..4.
pub fn sampling_pair(rng: &mut ChaCha8Rng) -> (BivarPoly, BivarPoly) {
    let q = BivarPoly::from_terms([
        (2, 0, small_rational(rng)),
        (1, 1, small_rational(rng)),
        (0, 2, small_rational(rng)),
    ]);
    let circle = limit2::polyq::parse_poly("x^2+y^2").unwrap();
    let g = &circle + &(&q * &q);
    let mut f = BivarPoly::from_terms((0..rng.gen_range(1..=4)).map(|_| {
        let d = rng.gen_range(2..=4);
        let i = rng.gen_range(0..=d);
        (i, d - i, small_rational(rng))
    }));
    if rng.gen_bool(0.25) {
        // Makes a nonzero limit possible.
        let high = BivarPoly::from_terms(
            f.terms()
                .filter(|((i, j), _)| i + j >= 3)
                .map(|(&(i, j), c)| (i, j, c.clone())),
        );
        f = &high + &circle.scale(&nonzero_rational(rng));
    }
    (f, g)
}
