//! Arbitrary precision complex numbers as a pair of MPFR floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::NegAssign;
use rug::{Float, Rational};

#[derive(Clone, PartialEq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0)
    }

    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::new(prec),
        }
    }

    pub fn from_parts_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        Self {
            re: Float::with_val(prec, q),
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        let mut im = self.im.clone();
        im.neg_assign();
        Self {
            re: self.re.clone(),
            im,
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn recip(&self) -> Self {
        CFloat::one(self.prec()).div_ref(self)
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &CFloat, b: &CFloat) {
        let p = self.prec();
        let mut t = Float::with_val(p, &a.re * &b.re);
        t -= Float::with_val(p, &a.im * &b.im);
        self.re += t;
        let mut t = Float::with_val(p, &a.re * &b.im);
        t += Float::with_val(p, &a.im * &b.re);
        self.im += t;
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &CFloat, b: &CFloat) {
        let p = self.prec();
        let mut t = Float::with_val(p, &a.re * &b.re);
        t -= Float::with_val(p, &a.im * &b.im);
        self.re -= t;
        let mut t = Float::with_val(p, &a.re * &b.im);
        t += Float::with_val(p, &a.im * &b.re);
        self.im -= t;
    }

    pub fn add_ref(&self, o: &CFloat) -> CFloat {
        let p = self.prec().max(o.prec());
        CFloat {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub_ref(&self, o: &CFloat) -> CFloat {
        let p = self.prec().max(o.prec());
        CFloat {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul_ref(&self, o: &CFloat) -> CFloat {
        let mut out = CFloat::zero(self.prec().max(o.prec()));
        out.add_mul(self, o);
        out
    }

    pub fn div_ref(&self, o: &CFloat) -> CFloat {
        let p = self.prec().max(o.prec());
        // Scale by the larger component to avoid overflow in |o|^2.
        let ore = Float::with_val(p, &o.re);
        let oim = Float::with_val(p, &o.im);
        if ore.cmp_abs(&oim) != Some(Ordering::Less) {
            let r = Float::with_val(p, &oim / &ore);
            let den = Float::with_val(p, &ore + Float::with_val(p, &oim * &r));
            let re = Float::with_val(p, &self.re + Float::with_val(p, &self.im * &r)) / &den;
            let im = Float::with_val(p, &self.im - Float::with_val(p, &self.re * &r)) / &den;
            CFloat { re, im }
        } else {
            let r = Float::with_val(p, &ore / &oim);
            let den = Float::with_val(p, &oim + Float::with_val(p, &ore * &r));
            let re = Float::with_val(p, Float::with_val(p, &self.re * &r) + &self.im) / &den;
            let im = Float::with_val(p, Float::with_val(p, &self.im * &r) - &self.re) / &den;
            CFloat { re, im }
        }
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut e: u32) -> CFloat {
        let mut base = self.clone();
        let mut acc = CFloat::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Decimal rendering of one component with `digits` significant digits.
    pub fn component_string(x: &Float, digits: usize) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let (neg, s, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        let exp = exp.unwrap_or(0) as i64;
        let s = s.trim_end_matches('0');
        let s = if s.is_empty() { "0" } else { s };
        let sign = if neg { "-" } else { "" };
        // value = 0.s * 10^exp
        let n = s.len() as i64;
        if !(-20..=21).contains(&exp) {
            let (head, tail) = s.split_at(1);
            let dot = if tail.is_empty() { "" } else { "." };
            format!("{sign}{head}{dot}{tail}e{}", exp - 1)
        } else if exp <= 0 {
            format!("{sign}0.{}{s}", "0".repeat((-exp) as usize))
        } else if exp >= n {
            format!("{sign}{s}{}", "0".repeat((exp - n) as usize))
        } else {
            let (a, b) = s.split_at(exp as usize);
            format!("{sign}{a}.{b}")
        }
    }
}

impl fmt::Debug for CFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}i)",
            CFloat::component_string(&self.re, 20),
            CFloat::component_string(&self.im, 20)
        )
    }
}

impl Add for &CFloat {
    type Output = CFloat;
    fn add(self, o: &CFloat) -> CFloat {
        self.add_ref(o)
    }
}

impl Sub for &CFloat {
    type Output = CFloat;
    fn sub(self, o: &CFloat) -> CFloat {
        self.sub_ref(o)
    }
}

impl Mul for &CFloat {
    type Output = CFloat;
    fn mul(self, o: &CFloat) -> CFloat {
        self.mul_ref(o)
    }
}

impl Div for &CFloat {
    type Output = CFloat;
    fn div(self, o: &CFloat) -> CFloat {
        self.div_ref(o)
    }
}

impl Neg for &CFloat {
    type Output = CFloat;
    fn neg(self) -> CFloat {
        let mut out = self.clone();
        out.re.neg_assign();
        out.im.neg_assign();
        out
    }
}
