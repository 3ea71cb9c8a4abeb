use num_rational::Ratio;

use super::{lcm_u32, CFloat, TruncSeries, EXACT};
use crate::error::{EngineError, Result};
use crate::polyq::BivarPoly;

/// Polynomial in `y` with truncated series coefficients in `x`.
///
/// Coefficients are stored in ascending powers of `y`. Most of the pipeline
/// works with monic polynomials; [`SeriesYPoly::is_monic`] checks that the
/// top coefficient is the exact constant 1.
#[derive(Clone, Debug)]
pub struct SeriesYPoly {
    prec: u32,
    coeffs: Vec<TruncSeries>,
}

impl SeriesYPoly {
    pub fn new(prec: u32, mut coeffs: Vec<TruncSeries>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero() && c.is_exact()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(TruncSeries::zero(prec));
        }
        Self { prec, coeffs }
    }

    pub fn from_bivar(p: &BivarPoly, prec: u32) -> Self {
        let d = p.degree_y().unwrap_or(0);
        let coeffs = (0..=d)
            .map(|j| TruncSeries::from_qpoly(prec, &p.coeff_y(j)))
            .collect();
        Self::new(prec, coeffs)
    }

    /// Monic polynomial from univariate constant coefficients (ascending).
    pub fn from_constants(prec: u32, c: &[CFloat]) -> Self {
        Self::new(
            prec,
            c.iter().map(|v| TruncSeries::constant(v.clone())).collect(),
        )
    }

    /// `y - a`.
    pub fn linear(a: &TruncSeries) -> Self {
        Self::new(a.prec(), vec![a.neg(), TruncSeries::one(a.prec())])
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &TruncSeries {
        &self.coeffs[j]
    }

    pub fn is_monic(&self) -> bool {
        let l = self.coeffs.last().unwrap();
        l.is_exact()
            && l.num_terms() == 1
            && l.coeff(0).is_some_and(|c| *c == CFloat::one(c.prec()))
    }

    /// Common ramification of the coefficients.
    pub fn ram(&self) -> u32 {
        self.coeffs.iter().fold(1, |m, c| lcm_u32(m, c.ram()))
    }

    /// Smallest truncation over the coefficients, as an exponent of `x`
    /// (`None` when every coefficient is exact).
    pub fn trunc_exponent(&self) -> Option<Ratio<i64>> {
        self.coeffs.iter().filter_map(|c| c.trunc_exponent()).min()
    }

    /// Brings all coefficients to the common ramification; the non-leading
    /// ones also share the smallest truncation.
    pub fn unify(&self) -> Self {
        let m = self.ram();
        let mut cs: Vec<TruncSeries> = self.coeffs.iter().map(|c| c.with_ram(m)).collect();
        let t = cs.iter().map(|c| c.trunc()).min().unwrap_or(EXACT);
        if t != EXACT {
            let d = cs.len() - 1;
            for c in cs.iter_mut().take(d) {
                *c = c.truncate_units(t);
            }
        }
        Self::new(self.prec, cs)
    }

    pub fn map_coeffs(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> Self {
        Self::new(self.prec, self.coeffs.iter().map(f).collect())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(
            prec,
            self.coeffs.iter().map(|c| c.with_prec(prec)).collect(),
        )
    }

    /// Drops every coefficient term with exponent above `n`.
    pub fn truncate(&self, n: i64) -> Self {
        let d = self.degree();
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j == d && self.is_monic() {
                    c.clone()
                } else {
                    c.truncate(n)
                }
            })
            .collect();
        Self::new(self.prec, cs)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = TruncSeries::zero(self.prec);
        let cs = (0..n)
            .map(|j| {
                self.coeffs
                    .get(j)
                    .unwrap_or(&z)
                    .add(o.coeffs.get(j).unwrap_or(&z))
            })
            .collect();
        Self::new(self.prec, cs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.map_coeffs(|c| c.neg()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut cs = vec![TruncSeries::zero(self.prec); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() && a.is_exact() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                cs[i + j] = cs[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.prec, cs)
    }

    /// Multiplies every coefficient by the series `s`.
    pub fn scale(&self, s: &TruncSeries) -> Self {
        self.map_coeffs(|c| c.mul(s))
    }

    /// `p(x, y + s)`.
    pub fn shift_y(&self, s: &TruncSeries) -> Self {
        if s.is_zero() && s.is_exact() {
            return self.clone();
        }
        let lin = Self::new(self.prec, vec![s.clone(), TruncSeries::one(self.prec)]);
        let mut acc = Self::new(self.prec, vec![TruncSeries::zero(self.prec)]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }

    /// `p(x, y x^e)`: the coefficient of `y^j` is multiplied by `x^(j e)`.
    pub fn scale_y(&self, e: Ratio<i64>) -> Self {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.shift_exponent(e * j as i64))
            .collect();
        Self::new(self.prec, cs)
    }

    /// Multiplies every coefficient by `x^e`.
    pub fn shift_exponent(&self, e: Ratio<i64>) -> Self {
        self.map_coeffs(|c| c.shift_exponent(e))
    }

    pub fn substitute_x_pow(&self, r: u32) -> Self {
        self.map_coeffs(|c| c.substitute_x_pow(r))
    }

    pub fn substitute_x_root(&self, r: u32) -> Self {
        self.map_coeffs(|c| c.substitute_x_root(r))
    }

    /// Reduces every coefficient's ramification as far as its exponents allow.
    pub fn reduce_ram(&self) -> Self {
        self.map_coeffs(|c| c.reduce_ram())
    }

    pub fn mirror_x(&self) -> Self {
        self.map_coeffs(|c| c.mirror_x())
    }

    /// Constant terms of the coefficients: `p(0, y)` in ascending powers.
    pub fn at_x0(&self) -> Vec<CFloat> {
        self.coeffs.iter().map(|c| c.constant_term()).collect()
    }

    /// Divides by the leading coefficient; the inverse is computed up to
    /// exponent `n`.
    pub fn monicize(&self, n: i64) -> Result<Self> {
        if self.is_monic() {
            return Ok(self.clone());
        }
        let lead = self.coeffs.last().unwrap();
        let m = lead.ram();
        let inv = lead.inverse(n * m as i64)?;
        let d = self.degree();
        let mut cs: Vec<TruncSeries> = self.coeffs[..d].iter().map(|c| c.mul(&inv)).collect();
        cs.push(TruncSeries::one(self.prec));
        Ok(Self::new(self.prec, cs))
    }

    /// Largest coefficient magnitude over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    /// Largest coefficient-wise difference on the common truncation.
    pub fn max_diff(&self, o: &Self) -> f64 {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = TruncSeries::zero(self.prec);
        (0..n)
            .map(|j| {
                self.coeffs
                    .get(j)
                    .unwrap_or(&z)
                    .max_diff(o.coeffs.get(j).unwrap_or(&z))
            })
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_real(tol))
    }

    /// Fails with [`EngineError::NotInvertibleLeading`] unless monic.
    pub fn require_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(EngineError::NotInvertibleLeading)
        }
    }
}
