//! Univariate rational polynomials and polynomials in `y` over `Q[x]`.

use rug::Rational;

/// Polynomial in one variable over `Q`, coefficients in ascending order,
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| *v == 0) {
            c.pop();
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|v| *v != 0)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::new();
        for v in self.c.iter().rev() {
            acc *= t;
            acc += v;
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.c.get(k).cloned().unwrap_or_default();
            if let Some(b) = o.c.get(k) {
                s += b;
            }
            v.push(s);
        }
        Self::from_coeffs(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            c: self.c.iter().map(|v| Rational::from(-v)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::new(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += Rational::from(a * b);
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| Rational::from(v * s)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.c[dd].clone();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::new(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = Rational::from(&r[k + dd] / &lc);
            if t != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= Rational::from(&t * b);
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(Rational::from(1) / l.clone())),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| Rational::from(v * k as u32))
                .collect(),
        )
    }

    /// Sign of `p(t)` as `t -> 0+`, `None` for the zero polynomial.
    pub fn sign_near_zero_right(&self) -> Option<i32> {
        self.order().map(|k| self.c[k].cmp0() as i32)
    }
}

impl QPoly {
    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Self {
        let mut out = Self::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if *yi == 0 {
                continue;
            }
            let mut basis = Self::constant(yi.clone());
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    let den = Rational::from(xi - xj);
                    let lin = Self::from_coeffs(vec![Rational::from(-xj), Rational::from(1)]);
                    basis = basis.mul(&lin).scale(&(Rational::from(1) / den));
                }
            }
            out = out.add(&basis);
        }
        out
    }
}

/// Polynomial in `y` whose coefficients are polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct YPoly {
    c: Vec<QPoly>,
}

impl YPoly {
    pub fn from_coeffs(mut c: Vec<QPoly>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// `p(x0, y)` as a polynomial in `y`.
    pub fn eval_x(&self, x0: &Rational) -> QPoly {
        QPoly::from_coeffs(self.c.iter().map(|v| v.eval(x0)).collect())
    }

    /// Quotient and remainder by a polynomial whose leading coefficient is
    /// the constant 1.
    pub fn divrem_monic(&self, m: &Self) -> (Self, Self) {
        let dm = m.degree().expect("division by zero polynomial");
        debug_assert!(m.lc().degree() == Some(0) && m.lc().coeffs()[0] == 1);
        let mut r = self.c.clone();
        if r.len() <= dm {
            return (Self::default(), self.clone());
        }
        let mut q = vec![QPoly::zero(); r.len() - dm];
        for k in (0..q.len()).rev() {
            let t = r[k + dm].clone();
            if !t.is_zero() {
                for (j, b) in m.c.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&t.mul(b));
                }
            }
            q[k] = t;
        }
        r.truncate(dm);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    fn lc(&self) -> &QPoly {
        self.c.last().expect("zero polynomial")
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v.scale(&Rational::from(k as u32)))
                .collect(),
        )
    }

    /// Gcd of the coefficients, monic in `x`.
    pub fn content(&self) -> QPoly {
        let mut g = QPoly::zero();
        for v in &self.c {
            g = g.gcd(v);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    fn div_coeffs(&self, d: &QPoly) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .map(|v| {
                    let (q, r) = v.divrem(d);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        )
    }

    fn mul_coeffs(&self, d: &QPoly) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| v.mul(d)).collect())
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_coeffs(&c).integer_primitive()
    }

    /// Rescales to integer coefficients with no common factor and a
    /// positive leading coefficient.
    fn integer_primitive(&self) -> Self {
        let mut den = rug::Integer::from(1);
        let mut num = rug::Integer::new();
        for v in self.c.iter().flat_map(|q| q.coeffs()) {
            den.lcm_mut(v.denom());
            num.gcd_mut(v.numer());
        }
        if num == 0 {
            return self.clone();
        }
        let mut s = Rational::from((den, num));
        if self.lc().leading().is_some_and(|l| *l < 0) {
            s = -s;
        }
        Self::from_coeffs(self.c.iter().map(|v| v.scale(&s)).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let lcb = b.lc().clone();
        let mut r = self.c.clone();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            if lr.is_zero() {
                r.pop();
                continue;
            }
            let shift = k - db;
            for v in r.iter_mut() {
                *v = v.mul(&lcb);
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&lr.mul(bj));
            }
            r.pop();
            while r.last().is_some_and(|v| v.is_zero()) {
                r.pop();
            }
        }
        Self::from_coeffs(r)
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lcd = d.lc().clone();
        let mut r = self.c.clone();
        if r.len() <= dd {
            assert!(self.is_zero(), "div_exact: not divisible");
            return Self::from_coeffs(Vec::new());
        }
        let mut q = vec![QPoly::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (t, rem) = r[k + dd].divrem(&lcd);
            assert!(rem.is_zero(), "div_exact: not divisible");
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&t.mul(b));
                }
            }
            q[k] = t;
        }
        assert!(r.iter().all(|v| v.is_zero()), "div_exact: not divisible");
        Self::from_coeffs(q)
    }

    /// Divides by the leading coefficient when it is a nonzero constant.
    pub fn monic_in_y(&self) -> Self {
        match self.c.last() {
            Some(l) if l.degree() == Some(0) => {
                let inv = Rational::from(1) / l.coeffs()[0].clone();
                Self::from_coeffs(self.c.iter().map(|v| v.scale(&inv)).collect())
            }
            _ => self.clone(),
        }
    }
}

/// Gcd of the primitive parts, by the primitive remainder sequence.
pub fn gcd_y(a: &YPoly, b: &YPoly) -> YPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !b.is_zero() {
        let r = a.prem(&b);
        a = b;
        b = r.primitive_part();
    }
    a
}

/// Gcd of `a` and `b` when `a` has leading coefficient 1 in `y`, by
/// evaluation at integer `x` and interpolation. The result is monic in `y`.
pub fn gcd_y_monic(a: &YPoly, b: &YPoly) -> YPoly {
    let one = YPoly::from_coeffs(vec![QPoly::constant(Rational::from(1))]);
    if b.is_zero() {
        return a.clone();
    }
    let bound =
        a.c.iter()
            .chain(&b.c)
            .filter_map(|v| v.degree())
            .max()
            .unwrap_or(0);
    let mut best: Option<usize> = None;
    let mut pts: Vec<(Rational, QPoly)> = Vec::new();
    for x0 in 0i64.. {
        let x0 = Rational::from(x0);
        let ga = a.eval_x(&x0);
        let gb = b.eval_x(&x0);
        if gb.degree() != b.degree() {
            // Leading coefficient of b vanishes here; the image is unreliable.
            continue;
        }
        let g = ga.gcd(&gb);
        let k = g.degree().unwrap_or(0);
        if k == 0 {
            return one;
        }
        match best {
            Some(bk) if k > bk => continue,
            Some(bk) if k < bk => pts.clear(),
            _ => {}
        }
        best = Some(k);
        pts.push((x0, g));
        if pts.len() > bound {
            let xs: Vec<Rational> = pts.iter().map(|(x, _)| x.clone()).collect();
            let coeffs: Vec<QPoly> = (0..=k)
                .map(|j| {
                    let ys: Vec<Rational> =
                        pts.iter().map(|(_, g)| g.coeffs()[j].clone()).collect();
                    QPoly::interpolate(&xs, &ys)
                })
                .collect();
            let cand = YPoly::from_coeffs(coeffs);
            if a.divrem_monic(&cand).1.is_zero() && b.divrem_monic(&cand).1.is_zero() {
                return cand;
            }
            pts.remove(0);
        }
    }
    unreachable!()
}

/// Cheap sufficient test that `a` and `b` share no factor of positive
/// degree in `y`: some image at an integer `x` with both leading
/// coefficients nonzero has a constant gcd.
fn coprime_in_y(a: &YPoly, b: &YPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return true;
    }
    (0i64..8).map(Rational::from).any(|x0| {
        let ga = a.eval_x(&x0);
        let gb = b.eval_x(&x0);
        ga.degree() == a.degree() && gb.degree() == b.degree() && ga.gcd(&gb).degree() == Some(0)
    })
}

/// Full gcd in `Q[x][y]`, content included.
pub fn gcd_full(a: &YPoly, b: &YPoly) -> YPoly {
    let c = a.content().gcd(&b.content());
    if coprime_in_y(a, b) {
        return YPoly::from_coeffs(vec![c]);
    }
    gcd_y(a, b).mul_coeffs(&c)
}
