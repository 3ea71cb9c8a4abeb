//! Truncated Puiseux series with arbitrary precision complex coefficients,
//! and polynomials in `y` over them.
//!
//! A [`TruncSeries`] stores terms `c_k x^(k/ram)` for `k <= trunc`; nothing
//! is known about exponents above `trunc`. Every coefficient carries a
//! `scale`: the sum of the absolute values of the terms it was summed from.
//! Sums and scalings carry the scale along; products start afresh from the
//! absolute values of their factors, so the bound cannot compound. A
//! coefficient is treated as zero (and dropped) when `|c| <= eps_z * scale`,
//! i.e. when it is indistinguishable from cancellation noise.

mod cfloat;
mod ypoly;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

pub use cfloat::CFloat;
pub use ypoly::SeriesYPoly;

use crate::error::{EngineError, Result};
use crate::polyq::BivarPoly;

/// Truncation marker for series known exactly (finite sums).
pub const EXACT: i64 = i64::MAX;

/// Zero tolerance `2^(-P/2)`.
pub fn eps_z(prec: u32) -> f64 {
    (-(prec as f64) / 2.0).exp2()
}

/// Realness tolerance, same scale as [`eps_z`].
pub fn eps_im(prec: u32) -> f64 {
    eps_z(prec)
}

/// Root clustering tolerance `2^(-P/3)`.
pub fn eps_c(prec: u32) -> f64 {
    (-(prec as f64) / 3.0).exp2()
}

/// Aggregation tolerance `max(1e-6, 2^(-P/4))`, before scaling.
pub fn eps_agg(prec: u32) -> f64 {
    (-(prec as f64) / 4.0).exp2().max(1e-6)
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

fn sat_mul(a: i64, f: i64) -> i64 {
    if a == EXACT {
        EXACT
    } else {
        a * f
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// A coefficient together with the size of the terms it was summed from.
#[derive(Clone, Debug)]
pub struct Coef {
    pub value: CFloat,
    pub scale: f64,
}

impl Coef {
    pub fn exact(value: CFloat) -> Self {
        let scale = value.abs_f64();
        Self { value, scale }
    }

    pub fn zero(prec: u32) -> Self {
        Self {
            value: CFloat::zero(prec),
            scale: 0.0,
        }
    }

    pub fn abs(&self) -> f64 {
        self.value.abs_f64()
    }

    /// Accumulates `x * y` into `self`.
    pub fn add_mul(&mut self, x: &Coef, y: &Coef) {
        self.value.add_mul(&x.value, &y.value);
        self.scale += x.abs() * y.abs();
    }

    pub fn is_noise(&self) -> bool {
        self.is_noise_at(self.value.prec())
    }

    /// Zero test for a value only accurate to `prec` bits.
    pub fn is_noise_at(&self, prec: u32) -> bool {
        self.value.is_zero() || self.abs() <= eps_z(prec) * self.scale
    }
}

#[derive(Clone)]
pub struct TruncSeries {
    prec: u32,
    ram: u32,
    trunc: i64,
    terms: BTreeMap<i64, Coef>,
}

impl TruncSeries {
    /// The exact zero series.
    pub fn zero(prec: u32) -> Self {
        Self {
            prec,
            ram: 1,
            trunc: EXACT,
            terms: BTreeMap::new(),
        }
    }

    /// Zero known only up to `trunc` (in units of `1/ram`).
    pub fn zero_to(prec: u32, ram: u32, trunc: i64) -> Self {
        Self {
            prec,
            ram,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CFloat) -> Self {
        Self::monomial(0, 1, c)
    }

    pub fn one(prec: u32) -> Self {
        Self::constant(CFloat::one(prec))
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        Self::constant(CFloat::from_rational(prec, q))
    }

    /// `c x^(k/ram)`, exact.
    pub fn monomial(k: i64, ram: u32, c: CFloat) -> Self {
        let mut s = Self::zero_to(c.prec(), ram, EXACT);
        s.push(k, Coef::exact(c));
        s
    }

    /// Builds a series from exact coefficient values.
    pub fn from_terms<I>(prec: u32, ram: u32, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, CFloat)>,
    {
        let mut s = Self::zero_to(prec, ram, trunc);
        for (k, v) in terms {
            if k <= trunc {
                let mut c = Coef::exact(v.with_prec(prec));
                if let Some(old) = s.terms.remove(&k) {
                    c.scale += old.scale;
                    c.value = c.value.add_ref(&old.value);
                }
                s.push(k, c);
            }
        }
        s
    }

    /// Inserts coefficients that already carry their bounds; noise-level
    /// values are dropped.
    pub fn extend_coefs<I>(&mut self, terms: I)
    where
        I: IntoIterator<Item = (i64, Coef)>,
    {
        for (k, c) in terms {
            self.push(k, c);
        }
    }

    /// Series from an exact univariate rational polynomial in `x`.
    pub fn from_qpoly(prec: u32, p: &crate::polyq::upoly::QPoly) -> Self {
        Self::from_terms(
            prec,
            1,
            EXACT,
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(k, c)| (k as i64, CFloat::from_rational(prec, c))),
        )
    }

    fn push(&mut self, k: i64, c: Coef) {
        if k > self.trunc || c.is_noise() {
            return;
        }
        self.terms.insert(k, c);
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    /// Truncation in units of `1/ram`, [`EXACT`] for exact series.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// Truncation as an exponent of `x`, `None` when exact.
    pub fn trunc_exponent(&self) -> Option<Ratio<i64>> {
        (!self.is_exact()).then(|| Ratio::new(self.trunc, self.ram as i64))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coef)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i64) -> Option<&CFloat> {
        self.terms.get(&k).map(|c| &c.value)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest stored exponent, `None` (order `+inf`) when empty.
    pub fn order(&self) -> Option<Ratio<i64>> {
        self.order_units().map(|k| Ratio::new(k, self.ram as i64))
    }

    /// Smallest stored `k`.
    pub fn order_units(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, &Coef)> {
        self.terms.iter().next().map(|(&k, c)| (k, c))
    }

    pub fn constant_term(&self) -> CFloat {
        self.coeff(0)
            .cloned()
            .unwrap_or_else(|| CFloat::zero(self.prec))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.value.abs_f64())
            .fold(0.0, f64::max)
    }

    /// Effective order used for truncation bookkeeping of products.
    fn eff_order(&self) -> i64 {
        match self.order_units() {
            Some(k) => k,
            None => sat_add(self.trunc, 1),
        }
    }

    /// Re-expresses the series over ramification `m` (a multiple of `ram`).
    pub fn with_ram(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.ram),
            "with_ram: {m} is not a multiple of {}",
            self.ram
        );
        let f = (m / self.ram) as i64;
        if f == 1 {
            return self.clone();
        }
        Self {
            prec: self.prec,
            ram: m,
            trunc: sat_mul(self.trunc, f),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k * f, c.clone()))
                .collect(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm_u32(a.ram, b.ram);
        (a.with_ram(m), b.with_ram(m))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = Self::common(self, o);
        let mut out = Self::zero_to(self.prec.max(o.prec), a.ram, a.trunc.min(b.trunc));
        let mut keys: Vec<i64> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            if k > out.trunc {
                break;
            }
            let c = match (a.terms.get(&k), b.terms.get(&k)) {
                (Some(x), Some(y)) => {
                    let value = x.value.add_ref(&y.value);
                    Coef {
                        value,
                        scale: x.scale + y.scale,
                    }
                }
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            };
            out.push(k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            c.value = -&c.value;
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = Self::common(self, o);
        let trunc = sat_add(a.eff_order(), b.trunc).min(sat_add(b.eff_order(), a.trunc));
        let prec = self.prec.max(o.prec);
        let mut acc: BTreeMap<i64, Coef> = BTreeMap::new();
        for (&i, x) in &a.terms {
            for (&j, y) in &b.terms {
                let k = i + j;
                if k > trunc {
                    break;
                }
                acc.entry(k)
                    .or_insert_with(|| Coef::zero(prec))
                    .add_mul(x, y);
            }
        }
        let mut out = Self::zero_to(prec, a.ram, trunc);
        for (k, c) in acc {
            out.push(k, c);
        }
        out
    }

    /// Multiplies by a constant.
    pub fn scale(&self, c: &CFloat) -> Self {
        let cm = c.abs_f64();
        let mut out = Self::zero_to(self.prec, self.ram, self.trunc);
        if c.is_zero() {
            out.trunc = EXACT;
            return out;
        }
        for (&k, x) in &self.terms {
            out.push(
                k,
                Coef {
                    value: x.value.mul_ref(c),
                    scale: x.scale * cm,
                },
            );
        }
        out
    }

    /// Multiplies by `x^e`.
    pub fn shift_exponent(&self, e: Ratio<i64>) -> Self {
        let m = lcm_u32(self.ram, *e.denom() as u32);
        let s = self.with_ram(m);
        let d = e.numer() * (m as i64 / e.denom());
        Self {
            prec: s.prec,
            ram: s.ram,
            trunc: sat_add(s.trunc, d),
            terms: s.terms.into_iter().map(|(k, c)| (k + d, c)).collect(),
        }
    }

    /// Substitutes `x <- x^r`.
    pub fn substitute_x_pow(&self, r: u32) -> Self {
        let r = r as i64;
        Self {
            prec: self.prec,
            ram: self.ram,
            trunc: sat_mul(self.trunc, r),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k * r, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x <- x^(1/r)`.
    pub fn substitute_x_root(&self, r: u32) -> Self {
        let mut out = self.clone();
        out.ram *= r;
        out
    }

    /// Substitutes `x <- -x`; requires `ram == 1`.
    pub fn mirror_x(&self) -> Self {
        assert_eq!(self.ram, 1);
        let mut out = self.clone();
        for (k, c) in out.terms.iter_mut() {
            if k.rem_euclid(2) == 1 {
                c.value = -&c.value;
            }
        }
        out
    }

    /// Drops every term of exponent above `n`.
    pub fn truncate(&self, n: i64) -> Self {
        let t = n * self.ram as i64;
        let mut out = self.clone();
        out.trunc = out.trunc.min(t);
        out.terms.retain(|&k, _| k <= t);
        out
    }

    /// Drops terms above `t` (in units of `1/ram`).
    pub fn truncate_units(&self, t: i64) -> Self {
        let mut out = self.clone();
        if t < out.trunc {
            out.trunc = t;
            out.terms.retain(|&k, _| k <= t);
        }
        out
    }

    /// Smallest `m` dividing `ram` such that every stored exponent and the
    /// truncation is a multiple of `ram / m`; returns the series over `m`.
    pub fn reduce_ram(&self) -> Self {
        let mut g = self.ram;
        for &k in self.terms.keys() {
            g = gcd_u32(g, k.unsigned_abs() as u32);
        }
        if g <= 1 {
            return self.clone();
        }
        let gi = g as i64;
        Self {
            prec: self.prec,
            ram: self.ram / g,
            // Round the truncation down to the coarser grid.
            trunc: if self.trunc == EXACT {
                EXACT
            } else {
                self.trunc.div_euclid(gi)
            },
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k / gi, c.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse up to exponent `limit_units` (units of `1/ram`)
    /// past the order; requires order 0.
    pub fn inverse(&self, limit_units: i64) -> Result<Self> {
        let (k0, c0) = self.leading().ok_or(EngineError::NotInvertibleLeading)?;
        if k0 != 0 {
            return Err(EngineError::NotInvertibleLeading);
        }
        let trunc = self.trunc.min(limit_units);
        let inv0 = c0.value.recip();
        let a0 = c0.value.abs_f64();
        let mut out: BTreeMap<i64, Coef> = BTreeMap::new();
        out.insert(
            0,
            Coef {
                value: inv0.clone(),
                scale: 1.0 / a0,
            },
        );
        let rest: Vec<(i64, &Coef)> = self
            .terms
            .iter()
            .filter(|(&k, _)| k > 0)
            .map(|(&k, c)| (k, c))
            .collect();
        if let Some(&(step, _)) = rest.first() {
            // Exponents of the inverse lie in the semigroup generated by `rest`;
            // it suffices to visit multiples of the gcd.
            let mut g = step;
            for &(k, _) in &rest {
                g = gcd_i64(g, k);
            }
            let mut k = g;
            while k <= trunc {
                let mut acc = Coef::zero(self.prec);
                for &(j, a) in &rest {
                    if j > k {
                        break;
                    }
                    if let Some(b) = out.get(&(k - j)) {
                        acc.add_mul(a, b);
                    }
                }
                let value = -&acc.value.mul_ref(&inv0);
                let c = Coef {
                    value,
                    scale: acc.scale / a0,
                };
                if !c.is_noise() {
                    out.insert(k, c);
                }
                k += g;
            }
        }
        Ok(Self {
            prec: self.prec,
            ram: self.ram,
            trunc,
            terms: out,
        })
    }

    /// Whether every coefficient has imaginary part within `tol` of its scale.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms
            .values()
            .all(|c| c.value.im_f64().abs() <= tol * c.scale.max(c.abs()))
    }

    /// The same series with values rounded or padded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        let mut out = self.clone();
        out.prec = prec;
        for c in out.terms.values_mut() {
            c.value = c.value.with_prec(prec);
        }
        if prec < self.prec {
            out.terms.retain(|_, c| !c.is_noise());
        }
        out
    }

    /// Zeroes all imaginary parts.
    pub fn real_part(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            c.value.im = Float::new(self.prec);
        }
        out.terms.retain(|_, c| !c.value.is_zero());
        out
    }

    /// Evaluates the truncated sum at a real `t > 0` in double precision.
    pub fn eval_f64(&self, t: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&k, c) in &self.terms {
            let w = t.powf(k as f64 / self.ram as f64);
            re += c.value.re_f64() * w;
            im += c.value.im_f64() * w;
        }
        (re, im)
    }

    /// Coefficient-wise maximum distance to another series on the common grid,
    /// over exponents up to the smaller truncation.
    pub fn max_diff(&self, o: &Self) -> f64 {
        let (a, b) = Self::common(self, o);
        let t = a.trunc.min(b.trunc);
        let mut keys: Vec<i64> = a
            .terms
            .keys()
            .chain(b.terms.keys())
            .copied()
            .filter(|&k| k <= t)
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let zero = CFloat::zero(self.prec);
        keys.into_iter()
            .map(|k| {
                let x = a.coeff(k).unwrap_or(&zero);
                let y = b.coeff(k).unwrap_or(&zero);
                x.sub_ref(y).abs_f64()
            })
            .fold(0.0, f64::max)
    }

    /// Terms as `(k, ram, re, im)` with decimal strings of `digits` digits.
    pub fn to_terms_json(&self, digits: usize) -> Vec<SeriesTerm> {
        self.terms
            .iter()
            .map(|(&k, c)| SeriesTerm {
                num: k,
                den: self.ram,
                re: CFloat::component_string(&c.value.re, digits),
                im: CFloat::component_string(&c.value.im, digits),
            })
            .collect()
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// Printed form of one series term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub num: i64,
    pub den: u32,
    pub re: String,
    pub im: String,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, (&k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?}*x^({k}/{})", c.value, self.ram)?;
        }
        if self.is_exact() {
            write!(f, "]")
        } else {
            write!(f, " + O(x^({}/{}))]", self.trunc + 1, self.ram)
        }
    }
}

/// Evaluates `f(xs, ys)` in truncated series arithmetic.
pub fn compose_poly_series(f: &BivarPoly, xs: &TruncSeries, ys: &TruncSeries) -> TruncSeries {
    let prec = xs.prec().max(ys.prec());
    let dy = match f.degree_y() {
        Some(d) => d,
        None => return TruncSeries::zero(prec),
    };
    let mut acc = TruncSeries::zero(prec);
    for j in (0..=dy).rev() {
        let cx = f.coeff_y(j);
        // Horner in xs for the coefficient of y^j.
        let mut c = TruncSeries::zero(prec);
        for v in cx.coeffs().iter().rev() {
            c = c.mul(xs);
            if *v != 0 {
                c = c.add(&TruncSeries::from_rational(prec, v));
            }
        }
        acc = acc.mul(ys).add(&c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyq::parse_poly;

    const P: u32 = 192;

    fn c(v: f64) -> CFloat {
        CFloat::from_f64(P, v)
    }

    fn ser(ram: u32, trunc: i64, t: &[(i64, f64)]) -> TruncSeries {
        TruncSeries::from_terms(P, ram, trunc, t.iter().map(|&(k, v)| (k, c(v))))
    }

    fn same(a: &TruncSeries, b: &TruncSeries) -> bool {
        a.ram() == b.ram()
            && a.trunc() == b.trunc()
            && a.max_diff(b) < 1e-50
            && a.num_terms() == b.num_terms()
    }

    #[test]
    fn addition() {
        let a = ser(1, 10, &[(0, 1.0), (3, 2.0)]);
        assert!(same(&a.add(&TruncSeries::zero(P)), &a));
        let b = ser(2, EXACT, &[(0, 1.0), (1, 1.0)]);
        let d = ser(2, EXACT, &[(0, 1.0), (1, -1.0)]);
        assert!(same(&b.add(&d), &ser(2, EXACT, &[(0, 2.0)])));
        // lcm(2, 3) = 6: x^(1/2) + x^(1/3) -> x^(3/6) + x^(2/6).
        let s = ser(2, 4, &[(1, 1.0)]).add(&ser(3, 9, &[(1, 1.0)]));
        assert_eq!(s.ram(), 6);
        assert_eq!(s.trunc(), 12);
        assert_eq!(s.terms().map(|(k, _)| k).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn multiplication() {
        let a = ser(1, 10, &[(0, 1.0), (3, 2.0)]);
        assert!(same(&a.mul(&TruncSeries::one(P)), &a));
        let p = ser(1, 5, &[(0, 1.0), (1, 1.0)]).mul(&ser(1, 5, &[(0, 1.0), (1, -1.0)]));
        assert!(same(&p, &ser(1, 5, &[(0, 1.0), (2, -1.0)])));
        let h = ser(2, EXACT, &[(1, 1.0)]);
        let x = h.mul(&h).reduce_ram();
        assert!(same(&x, &ser(1, EXACT, &[(1, 1.0)])));
        // Truncation bookkeeping: (x + O(x^4)) * (x^2 + O(x^6)) = x^3 + O(x^6).
        let m = ser(1, 3, &[(1, 1.0)]).mul(&ser(1, 5, &[(2, 1.0)]));
        assert_eq!(m.trunc(), 5);
        assert_eq!(m.order(), Some(Ratio::from_integer(3)));
    }

    #[test]
    fn truncation_and_order() {
        let a = ser(1, EXACT, &[(0, 1.0), (1, 1.0), (3, 1.0)]);
        let t = a.truncate(2);
        assert!(same(&t, &ser(1, 2, &[(0, 1.0), (1, 1.0)])));
        assert!(same(&t.truncate(2), &t));
        assert_eq!(
            ser(1, EXACT, &[(3, 1.0), (5, 1.0)]).order(),
            Some(Ratio::from_integer(3))
        );
        assert_eq!(TruncSeries::zero(P).order(), None);
        assert_eq!(
            ser(2, EXACT, &[(3, 1.0), (4, 1.0)]).order(),
            Some(Ratio::new(3, 2))
        );
    }

    #[test]
    fn geometric_inverse() {
        let a = ser(1, EXACT, &[(0, 1.0), (1, 1.0)]);
        let inv = a.inverse(12).unwrap();
        for k in 0..=12 {
            let v = inv.coeff(k).unwrap().re_f64();
            assert_eq!(v, if k % 2 == 0 { 1.0 } else { -1.0 });
        }
        let one = a.mul(&inv);
        assert!(same(&one, &ser(1, 12, &[(0, 1.0)])));
        assert!(ser(1, EXACT, &[(1, 1.0)]).inverse(5).is_err());
    }

    #[test]
    fn cancellation_is_dropped() {
        let third = CFloat::from_rational(P, &Rational::from((1, 3)));
        let a = TruncSeries::constant(third.clone()).mul(&TruncSeries::from_f64_const(3.0));
        let b = a.sub(&TruncSeries::one(P));
        assert!(b.is_zero());
    }

    #[test]
    fn composition() {
        let t = ser(1, EXACT, &[(1, 1.0)]);
        let zero = TruncSeries::zero(P);
        let r = compose_poly_series(&parse_poly("x^2+y^2").unwrap(), &t, &zero);
        assert!(same(&r, &ser(1, EXACT, &[(2, 1.0)])));
        let r = compose_poly_series(
            &parse_poly("y^2-x^3").unwrap(),
            &ser(1, EXACT, &[(2, 1.0)]),
            &ser(1, EXACT, &[(3, 1.0)]),
        );
        assert!(r.is_zero());
        let r = compose_poly_series(&parse_poly("x^2-y^2").unwrap(), &t, &t);
        assert!(r.is_zero());
    }

    impl TruncSeries {
        fn from_f64_const(v: f64) -> Self {
            TruncSeries::constant(CFloat::from_f64(P, v))
        }
    }
}
