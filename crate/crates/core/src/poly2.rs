//! Sparse bivariate polynomials over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, Rat};
use crate::poly1::{mono_text, write_terms, Poly1};
use crate::var::Var;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent pair `(j, k)` of `x^j y^k` where `(x, y) = vars`.
pub type Exp = (u32, u32);

#[derive(Clone, Debug)]
pub struct Poly2 {
    vars: (Var, Var),
    field: Field,
    terms: BTreeMap<Exp, FieldElem>,
}

impl Poly2 {
    pub fn zero(vars: (Var, Var), field: &Field) -> Self {
        Poly2 {
            vars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem, vars: (Var, Var), field: &Field) -> Self {
        Poly2::monomial(c, 0, 0, vars, field)
    }

    pub fn monomial(c: FieldElem, j: u32, k: u32, vars: (Var, Var), field: &Field) -> Self {
        let mut p = Poly2::zero(vars, field);
        p.add_term((j, k), c);
        p
    }

    pub fn from_terms(
        vars: (Var, Var),
        field: &Field,
        terms: impl IntoIterator<Item = (Exp, FieldElem)>,
    ) -> Self {
        let mut p = Poly2::zero(vars, field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_i64(vars: (Var, Var), field: &Field, terms: &[(u32, u32, i64)]) -> Self {
        Poly2::from_terms(
            vars,
            field,
            terms.iter().map(|&(j, k, c)| ((j, k), field.int(c))),
        )
    }

    /// The first variable as a polynomial.
    pub fn x(vars: (Var, Var), field: &Field) -> Self {
        Poly2::monomial(field.one(), 1, 0, vars, field)
    }

    /// The second variable as a polynomial.
    pub fn y(vars: (Var, Var), field: &Field) -> Self {
        Poly2::monomial(field.one(), 0, 1, vars, field)
    }

    /// Embeds a univariate polynomial in the first (`second = false`) or
    /// second variable.
    pub fn from_poly1(p: &Poly1, vars: (Var, Var), second: bool) -> Self {
        Poly2::from_terms(
            vars,
            p.field(),
            p.coeffs().iter().enumerate().map(|(i, c)| {
                let e = if second { (0, i as u32) } else { (i as u32, 0) };
                (e, c.clone())
            }),
        )
    }

    pub fn add_term(&mut self, e: Exp, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        if !c.is_rational() {
            self.field = self.field.join(c.field()).expect("field mismatch");
        }
        let c = c.in_field(&self.field).expect("field mismatch");
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, j: u32, k: u32) -> FieldElem {
        self.terms
            .get(&(j, k))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(j, k)| j == 0 && k == 0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    pub fn with_vars(&self, vars: (Var, Var)) -> Poly2 {
        Poly2 {
            vars,
            ..self.clone()
        }
    }

    /// Same polynomial with the roles of the variables exchanged.
    pub fn swap(&self) -> Poly2 {
        Poly2 {
            vars: (self.vars.1, self.vars.0),
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(j, k), c)| ((k, j), c.clone())).collect(),
        }
    }

    fn joined(&self, o: &Poly2) -> Field {
        if self.vars != o.vars && !self.is_constant() && !o.is_constant() {
            panic!(
                "variable mismatch: ({},{}) vs ({},{})",
                self.vars.0, self.vars.1, o.vars.0, o.vars.1
            );
        }
        self.field.join(&o.field).expect("field mismatch")
    }

    fn vars_with(&self, o: &Poly2) -> (Var, Var) {
        if self.is_constant() {
            o.vars
        } else {
            self.vars
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly2 {
        let field = self.field.join(c.field()).expect("field mismatch");
        Poly2::from_terms(
            self.vars,
            &field,
            self.terms.iter().map(|(e, x)| (*e, x * c)),
        )
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut result = Poly2::constant(self.field.one(), self.vars, &self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn diff_x(&self) -> Poly2 {
        Poly2::from_terms(
            self.vars,
            &self.field,
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(&(j, k), c)| ((j - 1, k), c * &self.field.int(j as i64))),
        )
    }

    pub fn diff_y(&self) -> Poly2 {
        Poly2::from_terms(
            self.vars,
            &self.field,
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(&(j, k), c)| ((j, k - 1), c * &self.field.int(k as i64))),
        )
    }

    pub fn eval(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.subs_x(x).eval(y)
    }

    pub fn eval_c64(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(j, k), c)| c.to_c64() * x.powu(j) * y.powu(k))
            .sum()
    }

    /// `K(a, y)` as a polynomial in the second variable.
    pub fn subs_x(&self, a: &FieldElem) -> Poly1 {
        let cols = self.as_poly_in_x();
        let field = self.field.join(a.field()).expect("field mismatch");
        let mut acc = Poly1::zero(self.vars.1, &field);
        for c in cols.iter().rev() {
            acc = &acc.scale(a) + &c.in_field(&field).expect("field");
        }
        acc
    }

    /// `K(x, b)` as a polynomial in the first variable.
    pub fn subs_y(&self, b: &FieldElem) -> Poly1 {
        self.swap().subs_x(b)
    }

    /// `K(x + x0, y + y0)`.
    pub fn translate(&self, x0: &FieldElem, y0: &FieldElem) -> Poly2 {
        let field = self
            .field
            .join(x0.field())
            .and_then(|f| f.join(y0.field()))
            .expect("field mismatch");
        let vars = self.vars;
        let xs = &Poly2::x(vars, &field) + &Poly2::constant(x0.clone(), vars, &field);
        let ys = &Poly2::y(vars, &field) + &Poly2::constant(y0.clone(), vars, &field);
        self.compose(&xs, &ys)
    }

    /// `K(X, Y)` for bivariate substitutes `X`, `Y` (sharing their variables).
    pub fn compose(&self, xs: &Poly2, ys: &Poly2) -> Poly2 {
        let field = xs.field.join(&ys.field).expect("field mismatch");
        let vars = xs.vars_with(ys);
        let mut xpow = vec![Poly2::constant(field.one(), vars, &field)];
        for _ in 0..self.deg_x() {
            let next = xpow.last().unwrap() * xs;
            xpow.push(next);
        }
        let mut ypow = vec![Poly2::constant(field.one(), vars, &field)];
        for _ in 0..self.deg_y() {
            let next = ypow.last().unwrap() * ys;
            ypow.push(next);
        }
        let mut acc = Poly2::zero(vars, &field);
        for (&(j, k), c) in &self.terms {
            acc = &acc + &(&xpow[j as usize] * &ypow[k as usize]).scale(c);
        }
        acc
    }

    /// Coefficients of powers of the second variable, as polynomials in the first.
    pub fn as_poly_in_y(&self) -> Vec<Poly1> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut cols = vec![vec![self.field.zero(); self.deg_x() as usize + 1]; self.deg_y() as usize + 1];
        for (&(j, k), c) in &self.terms {
            cols[k as usize][j as usize] = c.clone();
        }
        cols.into_iter()
            .map(|c| Poly1::new(self.vars.0, &self.field, c))
            .collect()
    }

    /// Coefficients of powers of the first variable, as polynomials in the second.
    pub fn as_poly_in_x(&self) -> Vec<Poly1> {
        self.swap().as_poly_in_y()
    }

    /// Inverse of [`Poly2::as_poly_in_y`].
    pub fn from_poly_in_y(vars: (Var, Var), field: &Field, cols: &[Poly1]) -> Poly2 {
        let mut p = Poly2::zero(vars, field);
        for (k, c) in cols.iter().enumerate() {
            for (j, x) in c.coeffs().iter().enumerate() {
                p.add_term((j as u32, k as u32), x.clone());
            }
        }
        p
    }

    /// Leading exponent in lexicographic order (first variable major).
    fn lead(&self) -> Option<(Exp, &FieldElem)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact quotient by multivariate division, if `d` divides `self`.
    pub fn exact_div(&self, d: &Poly2) -> Option<Poly2> {
        let (de, dc) = d.lead()?;
        let dinv = dc.inv()?;
        let field = self.joined(d);
        let vars = self.vars_with(d);
        let mut rem = self.clone();
        let mut quot = Poly2::zero(vars, &field);
        while let Some(((j, k), c)) = rem.lead() {
            if j < de.0 || k < de.1 {
                return None;
            }
            let e = (j - de.0, k - de.1);
            let c = c * &dinv;
            for (&(dj, dk), x) in &d.terms {
                rem.add_term((dj + e.0, dk + e.1), -(&c * x));
            }
            quot.add_term(e, c);
        }
        Some(quot)
    }

    /// Coefficient of the leading term in display order (total degree, then
    /// first-variable exponent).
    pub fn display_lc(&self) -> FieldElem {
        self.terms
            .iter()
            .max_by_key(|(&(j, k), _)| (j + k, j))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Normalizes to integer coefficients with unit content and positive
    /// leading coefficient. Returns `(content, primitive)` with
    /// `self = content · primitive`.
    pub fn primitive(&self) -> (FieldElem, Poly2) {
        if self.is_zero() {
            return (self.field.one(), self.clone());
        }
        let mut scale = self.field.one();
        let lc = self.display_lc();
        if !lc.is_rational() {
            scale = lc.inv().expect("nonzero");
        }
        let p = self.scale(&scale);
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in p.terms.values() {
            for r in [c.rational_part(), c.generator_part()] {
                if r.is_zero() {
                    continue;
                }
                den = den.lcm(r.denom());
                num = num.gcd(r.numer());
            }
        }
        let mut factor = Rat::new(den, num);
        if p.display_lc().rational_part().is_negative() {
            factor = -factor;
        }
        let factor = FieldElem::from_rat(factor, &self.field);
        let prim = p.scale(&factor);
        let content = (&scale * &factor).inv().expect("nonzero");
        (content, prim)
    }

    /// Content with respect to the second variable, as a monic polynomial in
    /// the first.
    pub fn content_in_x(&self) -> Poly1 {
        self.as_poly_in_y()
            .iter()
            .fold(Poly1::zero(self.vars.0, &self.field), |g, c| g.gcd(c))
    }

    /// Divides by a polynomial in the first variable (exactly).
    pub fn div_poly1_x(&self, c: &Poly1) -> Option<Poly2> {
        let cols = self
            .as_poly_in_y()
            .iter()
            .map(|p| p.exact_div(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly2::from_poly_in_y(self.vars, &self.field, &cols))
    }

    /// Gcd normalized by [`Poly2::primitive`]; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let field = self.joined(other);
        let vars = self.vars_with(other);
        if self.is_zero() {
            return other.primitive().1;
        }
        if other.is_zero() {
            return self.primitive().1;
        }
        let ca = self.content_in_x();
        let cb = other.content_in_x();
        let c = ca.gcd(&cb);
        let mut a = self.div_poly1_x(&ca).expect("content divides").as_poly_in_y();
        let mut b = other.div_poly1_x(&cb).expect("content divides").as_poly_in_y();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.len() > 1 && coprime_at_some_point(&a, &b, &field) {
            b = vec![Poly1::one(vars.0, &field)];
        }
        if b.len() > 1 {
            if let Some(g) = gcd_by_interpolation(&a, &b, &field) {
                a = g;
                b = Vec::new();
            }
        }
        // Subresultant PRS: exact divisions keep coefficient growth in check.
        let mut g = Poly1::one(vars.0, &field);
        let mut h = Poly1::one(vars.0, &field);
        while b.len() > 1 {
            let d = (a.len() - b.len()) as u32;
            let r = pseudo_rem(&a, &b);
            a = b;
            if r.is_empty() {
                b = Vec::new();
                break;
            }
            let div = &g * &h.pow(d);
            b = r.iter().map(|c| c.exact_div(&div).expect("subresultant division")).collect();
            g = a.last().unwrap().clone();
            if d > 0 {
                h = g.pow(d).exact_div(&h.pow(d - 1)).expect("subresultant division");
            }
        }
        let a = primitive_part_y(a);
        let g = if b.is_empty() {
            a
        } else {
            vec![Poly1::one(vars.0, &field)]
        };
        let g = Poly2::from_poly_in_y(vars, &field, &g);
        let g = &g * &Poly2::from_poly1(&c, vars, false);
        g.primitive().1
    }

    /// `P / gcd(P, P_x, P_y)`, normalized.
    pub fn squarefree_part(&self) -> Poly2 {
        if self.is_constant() {
            return self.primitive().1;
        }
        let g = self.gcd(&self.diff_x()).gcd(&self.diff_y());
        self.exact_div(&g).expect("gcd divides").primitive().1
    }

    /// Replaces `(x, y)` by `(N1/D1, N2/D2)` and clears denominators:
    /// `Σ c_jk N1^j D1^(n-j) N2^k D2^(m-k)` with `n = deg_x`, `m = deg_y`.
    pub fn substitute_fractions(&self, n1: &Poly1, d1: &Poly1, n2: &Poly1, d2: &Poly1) -> Poly1 {
        let n = self.deg_x() as usize;
        let m = self.deg_y() as usize;
        let powers = |p: &Poly1, e: usize| -> Vec<Poly1> {
            let mut v = vec![Poly1::one(p.var(), p.field())];
            for _ in 0..e {
                let next = v.last().unwrap() * p;
                v.push(next);
            }
            v
        };
        let (pn1, pd1, pn2, pd2) = (powers(n1, n), powers(d1, n), powers(n2, m), powers(d2, m));
        let mut acc = Poly1::zero(n1.var(), n1.field());
        for (&(j, k), c) in &self.terms {
            let (j, k) = (j as usize, k as usize);
            let t = &(&pn1[j] * &pd1[n - j]) * &(&pn2[k] * &pd2[m - k]);
            acc = &acc + &t.scale(c);
        }
        acc
    }
}

/// Cheap exact coprimality test for primitive `a`, `b` in y over F[x]: if
/// some specialization `x = x0` keeping both leading coefficients is coprime
/// in y, the gcd has y-degree 0 and thus divides the (trivial) contents.
fn coprime_at_some_point(a: &[Poly1], b: &[Poly1], field: &Field) -> bool {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let mut tried = 0;
    for x0 in (0..40i64).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }) {
        let x0 = field.int(x0);
        if la.eval(&x0).is_zero() || lb.eval(&x0).is_zero() {
            continue;
        }
        let sa = Poly1::new(Var::Y, field, a.iter().map(|c| c.eval(&x0)).collect());
        let sb = Poly1::new(Var::Y, field, b.iter().map(|c| c.eval(&x0)).collect());
        if sa.gcd(&sb).is_constant() {
            return true;
        }
        tried += 1;
        if tried == 3 {
            break;
        }
    }
    false
}

/// Gcd of primitive `a`, `b` (in y over F[x]) by evaluation at `x = x_i`,
/// interpolation in x and exact trial division; `None` if unlucky points
/// or a failed division leave the answer undecided.
fn gcd_by_interpolation(a: &[Poly1], b: &[Poly1], field: &Field) -> Option<Vec<Poly1>> {
    let xv = a.last().unwrap().var();
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let deg_x = |p: &[Poly1]| p.iter().map(Poly1::deg).max().unwrap_or(0);
    let bound = gamma.deg() + deg_x(a).min(deg_x(b));
    let mut pts: Vec<(FieldElem, Vec<FieldElem>)> = Vec::new();
    let mut best = usize::MAX;
    let mut i = 0i64;
    while pts.len() <= bound {
        i += 1;
        if i > 4 * bound as i64 + 64 {
            return None;
        }
        let x0 = field.int(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        if la.eval(&x0).is_zero() || lb.eval(&x0).is_zero() {
            continue;
        }
        let sa = Poly1::new(Var::Y, field, a.iter().map(|c| c.eval(&x0)).collect());
        let sb = Poly1::new(Var::Y, field, b.iter().map(|c| c.eval(&x0)).collect());
        let g = sa.gcd(&sb);
        let d = g.deg();
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            pts.clear();
        }
        let scale = gamma.eval(&x0);
        pts.push((x0, g.coeffs().iter().map(|c| c * &scale).collect()));
    }
    let xs: Vec<FieldElem> = pts.iter().map(|p| p.0.clone()).collect();
    let cols: Vec<Poly1> = (0..=best)
        .map(|k| {
            let ys: Vec<FieldElem> = pts.iter().map(|p| p.1[k].clone()).collect();
            interpolate(&xs, &ys, xv, field)
        })
        .collect();
    let g = primitive_part_y(cols);
    let vars = (xv, Var::Y);
    let gp = Poly2::from_poly_in_y(vars, field, &g);
    let ap = Poly2::from_poly_in_y(vars, field, a);
    let bp = Poly2::from_poly_in_y(vars, field, b);
    (ap.exact_div(&gp).is_some() && bp.exact_div(&gp).is_some()).then_some(g)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[FieldElem], ys: &[FieldElem], var: Var, field: &Field) -> Poly1 {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num.checked_div(&den).expect("distinct nodes");
        }
    }
    let mut p = Poly1::constant(dd[n - 1].clone(), var, field);
    for i in (0..n - 1).rev() {
        let lin = Poly1::linear_root(&xs[i], var, field);
        p = &(&p * &lin) + &Poly1::constant(dd[i].clone(), var, field);
    }
    p
}

/// Pseudo-remainder of `a` by `b` as polynomials in y over F[x].
fn pseudo_rem(a: &[Poly1], b: &[Poly1]) -> Vec<Poly1> {
    let mut r: Vec<Poly1> = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive_part_y(r: Vec<Poly1>) -> Vec<Poly1> {
    if r.is_empty() {
        return r;
    }
    let c = r
        .iter()
        .fold(Poly1::zero(r[0].var(), r[0].field()), |g, x| g.gcd(x));
    r.iter()
        .map(|x| x.exact_div(&c).expect("content divides"))
        .collect()
}

impl PartialEq for Poly2 {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.vars == other.vars || self.is_constant())
    }
}

impl Eq for Poly2 {}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, o: &Poly2) -> Poly2 {
        let field = self.joined(o);
        let mut p = Poly2 {
            vars: self.vars_with(o),
            field,
            terms: self.terms.clone(),
        };
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, o: &Poly2) -> Poly2 {
        let field = self.joined(o);
        let mut p = Poly2 {
            vars: self.vars_with(o),
            field,
            terms: self.terms.clone(),
        };
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, o: &Poly2) -> Poly2 {
        let field = self.joined(o);
        let mut p = Poly2::zero(self.vars_with(o), &field);
        for (&(j1, k1), a) in &self.terms {
            for (&(j2, k2), b) in &o.terms {
                p.add_term((j1 + j2, k1 + k2), a * b);
            }
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            vars: self.vars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly2> for Poly2 {
            type Output = Poly2;
            fn $m(self, o: Poly2) -> Poly2 { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Poly2> for Poly2 {
            type Output = Poly2;
            fn $m(self, o: &Poly2) -> Poly2 { (&self).$m(o) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by_key(|(&(j, k), _)| std::cmp::Reverse((j + k, j)));
        let (vx, vy) = self.vars;
        let terms = entries.into_iter().map(|(&(j, k), c)| {
            let mx = mono_text(vx, j as usize);
            let my = mono_text(vy, k as usize);
            let mono = match (mx.is_empty(), my.is_empty()) {
                (true, _) => my,
                (_, true) => mx,
                _ => format!("{mx}*{my}"),
            };
            (c, mono)
        });
        write_terms(f, terms)
    }
}

/// Checks that `p` uses exactly the variables `vars` (or is constant).
pub fn expect_vars(p: &Poly2, vars: (Var, Var)) -> Result<()> {
    if p.vars() == vars || p.is_constant() {
        Ok(())
    } else {
        Err(Error::VarMismatch {
            expected: format!("({},{})", vars.0, vars.1),
            found: format!("({},{})", p.vars().0, p.vars().1),
        })
    }
}
