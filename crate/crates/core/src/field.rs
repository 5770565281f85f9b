//! Exact arithmetic in Q and in quadratic extensions Q(α).
//!
//! An element is stored as `a + b·α` where α is a root of the monic
//! quadratic `t^2 + c1·t + c0`. Complex embeddings use the principal root
//! `α = (-c1 + sqrt(c1^2 - 4·c0)) / 2`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

pub type Rat = BigRational;

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact square root of a rational, if it is a rational square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rat::new(rn, rd))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Minpoly {
    c0: Rat,
    c1: Rat,
}

/// Coefficient field: Q, or Q(α) with α^2 + c1·α + c0 = 0 irreducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Field {
    quad: Option<Arc<Minpoly>>,
}

impl Field {
    pub fn rationals() -> Self {
        Field { quad: None }
    }

    /// Q(α) for α^2 + c1·α + c0 = 0. Reducible minimal polynomials are rejected.
    pub fn quadratic(c0: Rat, c1: Rat) -> Result<Self> {
        let disc = &c1 * &c1 - Rat::from_integer(BigInt::from(4)) * &c0;
        if rat_sqrt(&disc).is_some() {
            return Err(Error::ReducibleMinpoly(minpoly_text(&c0, &c1)));
        }
        Ok(Field {
            quad: Some(Arc::new(Minpoly { c0, c1 })),
        })
    }

    /// Q(i), α^2 + 1 = 0.
    pub fn gaussian() -> Self {
        Field::quadratic(rat_int(1), rat_int(0)).expect("irreducible")
    }

    /// Q(ω), α^2 + α + 1 = 0, so that i·sqrt(3) = 2α + 1.
    pub fn eisenstein() -> Self {
        Field::quadratic(rat_int(1), rat_int(1)).expect("irreducible")
    }

    pub fn is_rationals(&self) -> bool {
        self.quad.is_none()
    }

    /// `(c0, c1)` of the defining polynomial.
    pub fn minpoly(&self) -> Option<(Rat, Rat)> {
        self.quad.as_ref().map(|m| (m.c0.clone(), m.c1.clone()))
    }

    pub fn minpoly_string(&self) -> String {
        match &self.quad {
            None => "t".to_string(),
            Some(m) => minpoly_text(&m.c0, &m.c1),
        }
    }

    /// Discriminant `c1^2 - 4·c0` of the defining polynomial (1 for Q).
    pub fn discriminant(&self) -> Rat {
        match &self.quad {
            None => Rat::one(),
            Some(m) => &m.c1 * &m.c1 - rat_int(4) * &m.c0,
        }
    }

    /// The generator α, or an error over Q.
    pub fn generator(&self) -> Result<FieldElem> {
        if self.is_rationals() {
            return Err(Error::OutsideField("a".into()));
        }
        Ok(FieldElem {
            a: Rat::zero(),
            b: Rat::one(),
            field: self.clone(),
        })
    }

    /// Complex value of α under the principal embedding.
    pub fn generator_c64(&self) -> Complex64 {
        match &self.quad {
            None => Complex64::new(0.0, 0.0),
            Some(m) => {
                let disc = self.discriminant().to_f64().unwrap_or(f64::NAN);
                let c1 = m.c1.to_f64().unwrap_or(f64::NAN);
                if disc < 0.0 {
                    Complex64::new(-c1 / 2.0, (-disc).sqrt() / 2.0)
                } else {
                    Complex64::new((-c1 + disc.sqrt()) / 2.0, 0.0)
                }
            }
        }
    }

    /// The smallest field containing both, if one of them is Q or they agree.
    pub fn join(&self, other: &Field) -> Result<Field> {
        match (&self.quad, &other.quad) {
            (None, _) => Ok(other.clone()),
            (_, None) => Ok(self.clone()),
            (Some(p), Some(q)) if p == q => Ok(self.clone()),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::zero(self)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::one(self)
    }

    pub fn int(&self, n: i64) -> FieldElem {
        FieldElem::from_rat(rat_int(n), self)
    }

    pub fn frac(&self, n: i64, d: i64) -> FieldElem {
        FieldElem::from_rat(rat(n, d), self)
    }
}

fn minpoly_text(c0: &Rat, c1: &Rat) -> String {
    let mut s = "t^2".to_string();
    for (c, m) in [(c1, "*t"), (c0, "")] {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        s.push(if c.is_negative() { '-' } else { '+' });
        if m.is_empty() || !mag.is_one() {
            s.push_str(&mag.to_string());
            s.push_str(m);
        } else {
            s.push('t');
        }
    }
    s
}

/// Element `a + b·α` of a [`Field`].
#[derive(Clone, Debug)]
pub struct FieldElem {
    a: Rat,
    b: Rat,
    field: Field,
}

impl FieldElem {
    pub fn zero(field: &Field) -> Self {
        FieldElem {
            a: Rat::zero(),
            b: Rat::zero(),
            field: field.clone(),
        }
    }

    pub fn one(field: &Field) -> Self {
        FieldElem::from_rat(Rat::one(), field)
    }

    pub fn from_rat(a: Rat, field: &Field) -> Self {
        FieldElem {
            a,
            b: Rat::zero(),
            field: field.clone(),
        }
    }

    pub fn from_i64(n: i64, field: &Field) -> Self {
        FieldElem::from_rat(rat_int(n), field)
    }

    /// `a + b·α`; `b` must vanish over Q.
    pub fn new(a: Rat, b: Rat, field: &Field) -> Result<Self> {
        if field.is_rationals() && !b.is_zero() {
            return Err(Error::OutsideField(format!("{a}+{b}*a")));
        }
        Ok(FieldElem {
            a,
            b,
            field: field.clone(),
        })
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn generator_part(&self) -> &Rat {
        &self.b
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Same value viewed in `field` (which must contain it).
    pub fn in_field(&self, field: &Field) -> Result<FieldElem> {
        if self.b.is_zero() || &self.field == field {
            Ok(FieldElem {
                a: self.a.clone(),
                b: self.b.clone(),
                field: field.clone(),
            })
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn minpoly(&self) -> Option<&Minpoly> {
        self.field.quad.as_deref()
    }

    fn joined(&self, other: &FieldElem) -> Field {
        if self.b.is_zero() && other.field.quad.is_some() {
            return other.field.clone();
        }
        if other.b.is_zero() {
            return if self.field.quad.is_some() {
                self.field.clone()
            } else {
                other.field.clone()
            };
        }
        self.field
            .join(&other.field)
            .expect("arithmetic between elements of different quadratic fields")
    }

    /// Galois conjugate `a + b·ᾱ` with `ᾱ = -c1 - α`.
    pub fn conj(&self) -> FieldElem {
        match self.minpoly() {
            None => self.clone(),
            Some(m) => FieldElem {
                a: &self.a - &self.b * &m.c1,
                b: -&self.b,
                field: self.field.clone(),
            },
        }
    }

    /// Field norm `x·conj(x)`, a rational.
    pub fn norm(&self) -> Rat {
        match self.minpoly() {
            None => self.a.clone(),
            Some(m) => &self.a * &self.a - &m.c1 * &self.a * &self.b + &m.c0 * &self.b * &self.b,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(FieldElem {
                a: self.a.recip(),
                b: Rat::zero(),
                field: self.field.clone(),
            });
        }
        let n = self.norm();
        let c = self.conj();
        Some(FieldElem {
            a: &c.a / &n,
            b: &c.b / &n,
            field: self.field.clone(),
        })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Option<FieldElem> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> FieldElem {
        let mut result = FieldElem::one(&self.field);
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

    /// Exact square root inside the element's field, if one exists.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = &self.field;
        let Some(m) = self.minpoly() else {
            return rat_sqrt(&self.a).map(|r| FieldElem::from_rat(r, f));
        };
        // Work in the basis {1, sqrt(D)} with α = (-c1 + sqrt(D))/2.
        let d = f.discriminant();
        let two = rat_int(2);
        let p = &self.a - &self.b * &m.c1 / &two;
        let q = &self.b / &two;
        let from_pq = |u: Rat, v: Rat| -> FieldElem {
            // u + v·sqrt(D) = u + v·(2α + c1)
            FieldElem {
                a: &u + &v * &m.c1,
                b: &v * &two,
                field: f.clone(),
            }
        };
        if q.is_zero() {
            if let Some(u) = rat_sqrt(&p) {
                return Some(from_pq(u, Rat::zero()));
            }
            return rat_sqrt(&(&p / &d)).map(|v| from_pq(Rat::zero(), v));
        }
        let n = rat_sqrt(&(&p * &p - &d * &q * &q))?;
        for cand in [(&p + &n) / &two, (&p - &n) / &two] {
            if let Some(u) = rat_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &q / (&two * &u);
                return Some(from_pq(u, v));
            }
        }
        None
    }

    pub fn to_c64(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return Complex64::new(a, 0.0);
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a, 0.0) + self.field.generator_c64() * b
    }

    /// Parses the canonical element syntax (`3/4`, `-a`, `1/2+5/3*a`, ...).
    pub fn parse(text: &str, field: &Field) -> Result<FieldElem> {
        crate::parse::parse_field_elem(text, field)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let gen = |b: &Rat| -> String {
            if b.is_one() {
                "a".to_string()
            } else if (-b).is_one() {
                "-a".to_string()
            } else {
                format!("{b}*a")
            }
        };
        if self.a.is_zero() {
            return write!(f, "{}", gen(&self.b));
        }
        let g = gen(&self.b);
        if g.starts_with('-') {
            write!(f, "{}{}", self.a, g)
        } else {
            write!(f, "{}+{}", self.a, g)
        }
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            field: self.joined(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem {
            field: self.joined(o),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        let field = self.joined(o);
        if self.b.is_zero() || o.b.is_zero() {
            return FieldElem {
                a: &self.a * &o.a,
                b: &self.a * &o.b + &self.b * &o.a,
                field,
            };
        }
        let m = field.quad.as_deref().expect("quadratic field");
        let bd = &self.b * &o.b;
        FieldElem {
            a: &self.a * &o.a - &bd * &m.c0,
            b: &self.a * &o.b + &self.b * &o.a - &bd * &m.c1,
            field,
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, o: &FieldElem) -> FieldElem {
        self.checked_div(o).expect("division by zero field element")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            a: -&self.a,
            b: -&self.b,
            field: self.field.clone(),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem { (&self).$m(o) }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem { self.$m(&o) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        *self = &*self - o;
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = &*self * o;
    }
}

/// A point of the Riemann sphere with exact finite coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpherePoint {
    Finite(FieldElem),
    Infinity,
}

impl SpherePoint {
    pub fn finite(&self) -> Option<&FieldElem> {
        match self {
            SpherePoint::Finite(v) => Some(v),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// Parses `inf`/`∞` or an element.
    pub fn parse(text: &str, field: &Field) -> Result<SpherePoint> {
        let t = text.trim();
        if t == "inf" || t == "∞" || t == "infinity" {
            Ok(SpherePoint::Infinity)
        } else {
            FieldElem::parse(t, field).map(SpherePoint::Finite)
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(v) => write!(f, "{v}"),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl From<FieldElem> for SpherePoint {
    fn from(v: FieldElem) -> Self {
        SpherePoint::Finite(v)
    }
}
