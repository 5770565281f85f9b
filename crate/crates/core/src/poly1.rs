//! Dense univariate polynomials over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::var::Var;
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct Poly1 {
    var: Var,
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly1 {
    /// Coefficients indexed by exponent; trailing zeros are trimmed.
    pub fn new(var: Var, field: &Field, coeffs: Vec<FieldElem>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.in_field(field).expect("coefficient outside field"))
            .collect();
        let mut p = Poly1 {
            var,
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_i64(var: Var, field: &Field, coeffs: &[i64]) -> Self {
        Poly1::new(var, field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn zero(var: Var, field: &Field) -> Self {
        Poly1 {
            var,
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(var: Var, field: &Field) -> Self {
        Poly1::constant(field.one(), var, field)
    }

    pub fn constant(c: FieldElem, var: Var, field: &Field) -> Self {
        Poly1::new(var, field, vec![c])
    }

    pub fn monomial(c: FieldElem, k: usize, var: Var, field: &Field) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly1::new(var, field, coeffs)
    }

    /// The polynomial `var`.
    pub fn identity(var: Var, field: &Field) -> Self {
        Poly1::monomial(field.one(), 1, var, field)
    }

    /// `var - c`.
    pub fn linear_root(c: &FieldElem, var: Var, field: &Field) -> Self {
        Poly1::new(var, field, vec![-c.clone(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> FieldElem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn with_var(&self, var: Var) -> Poly1 {
        Poly1 {
            var,
            ..self.clone()
        }
    }

    pub fn in_field(&self, field: &Field) -> Result<Poly1> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.in_field(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly1 {
            var: self.var,
            field: field.clone(),
            coeffs,
        })
    }

    fn joined(&self, other: &Poly1) -> (Var, Field) {
        let var = if self.is_constant() {
            other.var
        } else if other.is_constant() || self.var == other.var {
            self.var
        } else {
            panic!("variable mismatch: {} vs {}", self.var, other.var)
        };
        let field = self.field.join(&other.field).expect("field mismatch");
        (var, field)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }

    pub fn to_c64_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(FieldElem::to_c64).collect()
    }

    pub fn derivative(&self) -> Poly1 {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        Poly1::new(self.var, &self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly1 {
        let field = self.field.join(c.field()).expect("field mismatch");
        Poly1::new(self.var, &field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly1 {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> Poly1 {
        let mut result = Poly1::one(self.var, &self.field);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> Poly1 {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly1::new(self.var, &self.field, coeffs)
    }

    /// `var^n · p(1/var)` for `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Poly1 {
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Poly1::new(self.var, &self.field, coeffs)
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &Poly1) -> Result<(Poly1, Poly1)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (var, field) = self.joined(d);
        let dd = d.deg();
        let inv = d.lc().inv().expect("nonzero");
        let mut rem: Vec<FieldElem> = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Poly1::zero(var, &field), Poly1::new(var, &field, rem)));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly1::new(var, &field, quot), Poly1::new(var, &field, rem)))
    }

    pub fn rem(&self, d: &Poly1) -> Result<Poly1> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Poly1) -> Option<Poly1> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly1) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd; `gcd(p, 0) = monic(p)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() && b.is_zero() {
            let (var, field) = self.joined(other);
            return Poly1::zero(var, &field);
        }
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &Poly1) -> Poly1 {
        let field = self.field.join(inner.field()).expect("field mismatch");
        let mut acc = Poly1::zero(inner.var, &field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly1::constant(c.clone(), inner.var, &field);
        }
        acc
    }

    /// Yun's squarefree decomposition: `p = lc · Π f_i^{m_i}` with monic,
    /// squarefree, pairwise coprime `f_i`, sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, Poly1)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let mut b = p.exact_div(&g).expect("gcd divides");
        let c = dp.exact_div(&g).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.exact_div(&a).expect("gcd divides");
            let c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((i, a));
            }
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Poly1 {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// `p(var + c)`.
    pub fn translate(&self, c: &FieldElem) -> Poly1 {
        let field = self.field.join(c.field()).expect("field mismatch");
        let inner = Poly1::new(self.var, &field, vec![c.clone(), field.one()]);
        self.compose(&inner)
    }
}

impl PartialEq for Poly1 {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.is_constant())
    }
}

impl Eq for Poly1 {}

impl<'a> Add<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn add(self, o: &Poly1) -> Poly1 {
        let (var, field) = self.joined(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        Poly1::new(var, &field, coeffs)
    }
}

impl<'a> Sub<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn sub(self, o: &Poly1) -> Poly1 {
        let (var, field) = self.joined(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        Poly1::new(var, &field, coeffs)
    }
}

impl<'a> Mul<&'a Poly1> for &'a Poly1 {
    type Output = Poly1;
    fn mul(self, o: &Poly1) -> Poly1 {
        let (var, field) = self.joined(o);
        if self.is_zero() || o.is_zero() {
            return Poly1::zero(var, &field);
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly1::new(var, &field, coeffs)
    }
}

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(
            self.var,
            &self.field,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly1> for Poly1 {
            type Output = Poly1;
            fn $m(self, o: Poly1) -> Poly1 { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Poly1> for Poly1 {
            type Output = Poly1;
            fn $m(self, o: &Poly1) -> Poly1 { (&self).$m(o) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul);

/// Writes `coef·mono` in canonical form. Returns `(negative, body)`.
pub(crate) fn format_term(c: &FieldElem, mono: &str) -> (bool, String) {
    use num_traits::{One, Signed, Zero};
    let join = |coef: String| -> String {
        if mono.is_empty() {
            coef
        } else if coef.is_empty() {
            mono.to_string()
        } else {
            format!("{coef}*{mono}")
        }
    };
    if let Some(r) = c.as_rational() {
        let mag = r.abs();
        let coef = if mag.is_one() && !mono.is_empty() {
            String::new()
        } else {
            mag.to_string()
        };
        return (r.is_negative(), join(coef));
    }
    if c.rational_part().is_zero() {
        let b = c.generator_part();
        let mag = b.abs();
        let coef = if mag.is_one() {
            "a".to_string()
        } else {
            format!("{mag}*a")
        };
        return (b.is_negative(), join(coef));
    }
    (false, join(format!("({c})")))
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a FieldElem, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let (neg, body) = format_term(c, &mono);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        write!(f, "{body}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn mono_text(v: Var, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, mono_text(self.var, i)));
        write_terms(f, terms)
    }
}
