//! Exact bivariate polynomials over the rationals.
//!
//! Everything in this module is exact: the critical-curve numerator, the
//! quasi-monic rotation and the squarefree reduction are all computed over
//! `Q` before any floating point enters the pipeline.

mod parse;
pub mod upoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

pub use parse::{parse_poly, ParseError};
use upoly::{QPoly, YPoly};

/// Variable selector for partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Sparse polynomial in `x`, `y` with rational coefficients.
///
/// The term map is keyed by `(i, j)` meaning `x^i y^j`; zero coefficients are
/// never stored, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::from(1))
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::from(1))
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(i, j, coefficient)` triples, summing repeats.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in it {
            p.add_term(i, j, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `((i, j), coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    fn add_term(&mut self, i: u32, j: u32, c: &Rational) {
        if *c == 0 {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c.clone());
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Lowest total degree among the terms, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, v)| (k, Rational::from(v * c)))
            .collect();
        Self { terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::new();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            t *= pow_rat(x, i);
            t *= pow_rat(y, j);
            acc += t;
        }
        acc
    }

    /// Evaluates at a floating point `(x, y)`; used for sampling checks.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    /// Substitutes `x <- xs`, `y <- ys` and expands.
    pub fn substitute(&self, xs: &BivarPoly, ys: &BivarPoly) -> BivarPoly {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let xpow = powers(xs, dx);
        let ypow = powers(ys, dy);
        let mut out = BivarPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = &xpow[i as usize] * &ypow[j as usize];
            for (&(a, b), v) in &t.terms {
                out.add_term(a, b, &Rational::from(v * c));
            }
        }
        out
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn coeff_y(&self, j: u32) -> QPoly {
        let mut v = Vec::new();
        for (&(a, b), c) in &self.terms {
            if b == j {
                let a = a as usize;
                if v.len() <= a {
                    v.resize(a + 1, Rational::new());
                }
                v[a] = c.clone();
            }
        }
        QPoly::from_coeffs(v)
    }

    /// Leading coefficient in `y` (as a polynomial in `x`).
    pub fn leading_coeff_y(&self) -> QPoly {
        match self.degree_y() {
            Some(d) => self.coeff_y(d),
            None => QPoly::zero(),
        }
    }

    /// Monic in `y`: the highest power of `y` has coefficient exactly 1.
    pub fn is_monic_y(&self) -> bool {
        let lc = self.leading_coeff_y();
        lc.degree() == Some(0) && lc.coeffs()[0] == 1
    }

    pub(crate) fn to_ypoly(&self) -> YPoly {
        let d = self.degree_y().unwrap_or(0);
        YPoly::from_coeffs((0..=d).map(|j| self.coeff_y(j)).collect())
    }

    pub(crate) fn from_ypoly(p: &YPoly) -> Self {
        let mut out = BivarPoly::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, v);
            }
        }
        out
    }

    /// Univariate restriction `p(t, 0)` as a polynomial in `t`.
    pub fn restrict_to_x_axis(&self) -> QPoly {
        self.coeff_y(0)
    }

    /// Univariate restriction `p(0, t)`.
    pub fn restrict_to_y_axis(&self) -> QPoly {
        let mut v = Vec::new();
        for (&(a, b), c) in &self.terms {
            if a == 0 {
                let b = b as usize;
                if v.len() <= b {
                    v.resize(b + 1, Rational::new());
                }
                v[b] = c.clone();
            }
        }
        QPoly::from_coeffs(v)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((j, i), c.clone()))
            .collect();
        Self { terms }
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn powers(p: &BivarPoly, n: usize) -> Vec<BivarPoly> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BivarPoly::one());
    for k in 1..=n {
        let next = &v[k - 1] * p;
        v.push(next);
    }
    v
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, &Rational::from(-c));
        }
        out
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, &Rational::from(a * b));
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, Rational::from(-c)))
            .collect();
        BivarPoly { terms }
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: BivarPoly) -> BivarPoly {
        &self + &rhs
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        &self - &rhs
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Descending total degree, then descending power of x.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let negative = *c < 0;
            if n == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = Rational::from(c.abs_ref());
            let (i, j) = *key;
            let mut factors = Vec::new();
            if abs != 1 || (i == 0 && j == 0) {
                factors.push(abs.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".to_string()),
                _ => factors.push(format!("y^{j}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

/// Formal partial derivative.
pub fn differentiate(p: &BivarPoly, var: Var) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for (&(i, j), c) in &p.terms {
        match var {
            Var::X if i > 0 => out.add_term(i - 1, j, &Rational::from(c * i)),
            Var::Y if j > 0 => out.add_term(i, j - 1, &Rational::from(c * j)),
            _ => {}
        }
    }
    out
}

/// Numerator of the angular derivative of `f/g`:
/// `y (g f_x - f g_x) - x (g f_y - f g_y)`.
///
/// Its real zero set contains, on every small circle about the origin, the
/// points where `f/g` restricted to the circle is extremal.
pub fn discriminant_numerator(f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    let fx = differentiate(f, Var::X);
    let fy = differentiate(f, Var::Y);
    let gx = differentiate(g, Var::X);
    let gy = differentiate(g, Var::Y);
    let wx = &(g * &fx) - &(f * &gx);
    let wy = &(g * &fy) - &(f * &gy);
    &(&BivarPoly::y() * &wx) - &(&BivarPoly::x() * &wy)
}

/// `p(x + n y, -n x + y)`.
pub fn apply_rotation(p: &BivarPoly, n: u32) -> BivarPoly {
    if n == 0 {
        return p.clone();
    }
    let n = Rational::from(n);
    let xs = &BivarPoly::x() + &BivarPoly::monomial(0, 1, n.clone());
    let ys = &BivarPoly::y() + &BivarPoly::monomial(1, 0, -n);
    p.substitute(&xs, &ys)
}

/// Result of [`rotate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    /// The rotated polynomial divided by `lead`, monic in `y`.
    pub poly: BivarPoly,
    pub n: u32,
    /// Constant coefficient of the top power of `y` before normalisation.
    pub lead: Rational,
}

/// Finds the smallest `n >= 0` making `p(x + n y, -n x + y)` quasi-monic in
/// `y` and returns it normalised to be monic.
///
/// Panics if `p` is zero.
pub fn rotate(p: &BivarPoly) -> Rotation {
    assert!(!p.is_zero(), "rotate: zero polynomial");
    // The leading form vanishes at (n, 1) for at most deg p values of n.
    for n in 0u32.. {
        let q = apply_rotation(p, n);
        let lc = q.leading_coeff_y();
        if lc.degree() == Some(0) {
            let lead = lc.coeffs()[0].clone();
            let inv = Rational::from(1) / lead.clone();
            return Rotation {
                poly: q.scale(&inv),
                n,
                lead,
            };
        }
    }
    unreachable!()
}

/// `p(x + a, y + b)`.
pub fn shift_origin(p: &BivarPoly, a: &Rational, b: &Rational) -> BivarPoly {
    if *a == 0 && *b == 0 {
        return p.clone();
    }
    let xs = &BivarPoly::x() + &BivarPoly::constant(a.clone());
    let ys = &BivarPoly::y() + &BivarPoly::constant(b.clone());
    p.substitute(&xs, &ys)
}

/// `p(-x, y)`.
pub fn mirror_x(p: &BivarPoly) -> BivarPoly {
    let terms = p
        .terms
        .iter()
        .map(|(&(i, j), c)| {
            let v = if i % 2 == 1 {
                Rational::from(-c)
            } else {
                c.clone()
            };
            ((i, j), v)
        })
        .collect();
    BivarPoly { terms }
}

/// Squarefree part of `p` viewed in `Q(x)[y]`: `p / gcd(p, dp/dy)`, cleared
/// of denominators and normalised monic in `y`.
///
/// `p` must be monic in `y` (as produced by [`rotate`]).
pub fn squarefree_part_y(p: &BivarPoly) -> BivarPoly {
    if p.degree_y().unwrap_or(0) == 0 {
        return p.clone();
    }
    let a = p.to_ypoly();
    let da = a.derivative();
    let g = upoly::gcd_y_monic(&a, &da);
    if g.degree() == Some(0) {
        return p.clone();
    }
    let q = a.divrem_monic(&g).0;
    BivarPoly::from_ypoly(&q.monic_in_y())
}

/// Greatest common divisor in `Q[x, y]`, normalised so that its leading
/// coefficient (highest `y` power, then highest `x` power) is 1.
pub fn gcd(f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    if f.is_zero() {
        return normalize_lead(g);
    }
    if g.is_zero() {
        return normalize_lead(f);
    }
    let a = f.to_ypoly();
    let b = g.to_ypoly();
    let c = upoly::gcd_full(&a, &b);
    normalize_lead(&BivarPoly::from_ypoly(&c))
}

/// Exact quotient `p / d`; panics when `d` does not divide `p`.
pub fn div_exact(p: &BivarPoly, d: &BivarPoly) -> BivarPoly {
    let q = p.to_ypoly().div_exact(&d.to_ypoly());
    BivarPoly::from_ypoly(&q)
}

fn normalize_lead(p: &BivarPoly) -> BivarPoly {
    let lc = p.leading_coeff_y();
    match lc.leading() {
        Some(c) => p.scale(&(Rational::from(1) / c.clone())),
        None => p.clone(),
    }
}
