//! Resultants by the subresultant polynomial remainder sequence.
//!
//! The sequence is generic over any integral domain with exact division, so
//! the same code eliminates over F, F[x] and F[x, y].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly1::Poly1;
use crate::poly2::Poly2;
use crate::var::Var;

/// Integral domain with exact division.
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_(&self, o: &Self) -> Self;
    fn sub_(&self, o: &Self) -> Self;
    fn mul_(&self, o: &Self) -> Self;
    fn neg_(&self) -> Self;
    fn exact_div_(&self, o: &Self) -> Option<Self>;

    fn pow_(&self, e: usize) -> Self {
        let mut r = self.one_like();
        for _ in 0..e {
            r = r.mul_(self);
        }
        r
    }
}

impl Domain for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        FieldElem::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_(&self) -> Self {
        -self
    }
    fn exact_div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Domain for Poly1 {
    fn zero_like(&self) -> Self {
        Poly1::zero(self.var(), self.field())
    }
    fn one_like(&self) -> Self {
        Poly1::one(self.var(), self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_(&self) -> Self {
        -self
    }
    fn exact_div_(&self, o: &Self) -> Option<Self> {
        self.exact_div(o)
    }
}

impl Domain for Poly2 {
    fn zero_like(&self) -> Self {
        Poly2::zero(self.vars(), self.field())
    }
    fn one_like(&self) -> Self {
        Poly2::constant(self.field().one(), self.vars(), self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_(&self) -> Self {
        -self
    }
    fn exact_div_(&self, o: &Self) -> Option<Self> {
        self.exact_div(o)
    }
}

fn trim<R: Domain>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero_elem()) {
        v.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) · a mod b`.
pub fn pseudo_remainder<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return r;
    }
    let e = r.len() - 1 - db + 1;
    let mut steps = 0;
    while !r.is_empty() && r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.mul_(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub_(&lr.mul_(bc));
        }
        trim(&mut r);
        steps += 1;
    }
    if steps < e {
        let f = lb.pow_(e - steps);
        for c in r.iter_mut() {
            *c = c.mul_(&f);
        }
    }
    r
}

/// Resultant of two coefficient vectors (low to high, nonzero leading
/// coefficients), equal to the Sylvester determinant with `a` first.
pub fn subresultant<R: Domain>(a: &[R], b: &[R]) -> R {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    assert!(!a.is_empty() && !b.is_empty(), "resultant of a zero polynomial");
    let one = a[0].one_like();
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return b[0].pow_(da);
    }
    if da == 0 {
        return a[0].pow_(db);
    }
    let mut s = one.clone();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg_();
        }
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg_();
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return one.zero_like();
        }
        let div = g.mul_(&h.pow_(delta));
        a = b;
        b = r
            .iter()
            .map(|c| c.exact_div_(&div).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = g
                .pow_(delta)
                .exact_div_(&h.pow_(delta - 1))
                .expect("subresultant division is exact");
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let lb = &b[0];
            let res = lb
                .pow_(da)
                .exact_div_(&h.pow_(da - 1))
                .expect("subresultant division is exact");
            return s.mul_(&res);
        }
    }
}

/// Resultant of univariate polynomials.
pub fn resultant_poly1(p: &Poly1, q: &Poly1) -> Result<FieldElem> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field().join(q.field())?;
    let a: Vec<FieldElem> = p.in_field(&field)?.coeffs().to_vec();
    let b: Vec<FieldElem> = q.in_field(&field)?.coeffs().to_vec();
    Ok(subresultant(&a, &b))
}

/// `(-1)^(n(n-1)/2) · Res(p, p') / lc(p)`; equals 1 for linear `p`.
pub fn discriminant(p: &Poly1) -> Result<FieldElem> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Invalid("discriminant of a constant".into()));
    }
    let r = resultant_poly1(p, &p.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
    Ok(&(&r * &p.field().int(sign)) / &p.lc())
}

/// Result of a bivariate elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct Eliminant {
    pub poly: Poly2,
    /// One input had degree 0 in the eliminated variable; `poly` is then the
    /// appropriate power of that input.
    pub degenerate: bool,
}

/// Splits `p` into coefficients of powers of `v`, each a polynomial in the
/// remaining variable embedded in `out`.
fn coeffs_in(p: &Poly2, v: Var, out: (Var, Var)) -> Result<Vec<Poly2>> {
    let (p0, p1) = p.vars();
    let (elim_first, other) = if p0 == v {
        (true, p1)
    } else if p1 == v {
        (false, p0)
    } else {
        return Err(Error::VarMismatch {
            expected: v.to_string(),
            found: format!("({p0},{p1})"),
        });
    };
    let second = if other == out.0 {
        false
    } else if other == out.1 {
        true
    } else {
        return Err(Error::VarMismatch {
            expected: format!("({},{})", out.0, out.1),
            found: other.to_string(),
        });
    };
    let deg = if elim_first { p.deg_x() } else { p.deg_y() } as usize;
    let mut cols = vec![Poly2::zero(out, p.field()); deg + 1];
    for (&(j, k), c) in p.terms() {
        let (i, l) = if elim_first { (j, k) } else { (k, j) };
        let e = if second { (0, l) } else { (l, 0) };
        cols[i as usize].add_term(e, c.clone());
    }
    Ok(cols)
}

fn other_var(p: &Poly2, v: Var) -> Var {
    if p.vars().0 == v {
        p.vars().1
    } else {
        p.vars().0
    }
}

/// `Res_v(p, q)` for `p` in `(v, x)` and `q` in `(v, y)` (either order),
/// returned as a polynomial in `(x, y)`; `x == y` is allowed and yields a
/// polynomial whose second variable is unused.
pub fn resultant(p: &Poly2, q: &Poly2, eliminate: Var) -> Result<Eliminant> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let x = other_var(p, eliminate);
    let y = other_var(q, eliminate);
    let out = if x == y {
        (x, if x == Var::S { Var::T } else { Var::S })
    } else {
        (x, y)
    };
    let a = coeffs_in(p, eliminate, out)?;
    let b = coeffs_in(q, eliminate, out)?;
    let mut a = a;
    let mut b = b;
    trim(&mut a);
    trim(&mut b);
    let degenerate = a.len() == 1 || b.len() == 1;
    let field = p.field().join(q.field())?;
    let one = Poly2::constant(field.one(), out, &field);
    let a: Vec<Poly2> = a.into_iter().map(|c| &c * &one).collect();
    let b: Vec<Poly2> = b.into_iter().map(|c| &c * &one).collect();
    let poly = subresultant(&a, &b);
    Ok(Eliminant { poly, degenerate })
}

/// `Res_v(p, q)` where both are polynomials in `(v, x)`; the result is a
/// polynomial in `x`.
pub fn resultant_same(p: &Poly2, q: &Poly2, eliminate: Var) -> Result<Poly1> {
    let x = other_var(p, eliminate);
    if other_var(q, eliminate) != x {
        return Err(Error::VarMismatch {
            expected: x.to_string(),
            found: other_var(q, eliminate).to_string(),
        });
    }
    let field = p.field().join(q.field())?;
    let split = |p: &Poly2| -> Vec<Poly1> {
        let p = if p.vars().0 == eliminate { p.swap() } else { p.clone() };
        p.as_poly_in_y()
            .into_iter()
            .map(|c| c.in_field(&field).expect("field").with_var(x))
            .collect()
    };
    let mut a = split(p);
    let mut b = split(q);
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(subresultant(&a, &b))
}

/// Sylvester matrix determinant over a field, by Gaussian elimination.
/// Exposed as an independent oracle.
pub fn sylvester_determinant(p: &Poly1, q: &Poly1) -> FieldElem {
    let field: Field = p.field().join(q.field()).expect("field");
    let (m, n) = (p.deg(), q.deg());
    let size = m + n;
    if size == 0 {
        return field.one();
    }
    let mut mat = vec![vec![field.zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    crate::linalg::determinant(mat)
}
