//! Rational functions on the Riemann sphere, their value divisors, critical
//! values and Möbius compositions.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, SpherePoint};
use crate::poly1::Poly1;
use crate::poly2::Poly2;
use crate::resultant::resultant_same;
use crate::var::Var;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::fmt;

/// Coprime `num/den` with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly1,
    den: Poly1,
}

impl RatFunc {
    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let var = if num.is_constant() { den.var() } else { num.var() };
        if !num.is_constant() && !den.is_constant() && num.var() != den.var() {
            return Err(Error::VarMismatch {
                expected: num.var().to_string(),
                found: den.var().to_string(),
            });
        }
        let field = num.field().join(den.field())?;
        let num = num.in_field(&field)?.with_var(var);
        let den = den.in_field(&field)?.with_var(var);
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly1::one(var, &field),
            });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.lc().inv().expect("nonzero");
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Poly1) -> Self {
        let den = Poly1::one(p.var(), p.field());
        RatFunc { num: p, den }
    }

    pub fn constant(c: FieldElem, var: Var, field: &Field) -> Self {
        RatFunc::from_poly(Poly1::constant(c, var, field))
    }

    pub fn identity(var: Var, field: &Field) -> Self {
        RatFunc::from_poly(Poly1::identity(var, field))
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn with_var(&self, var: Var) -> RatFunc {
        RatFunc {
            num: self.num.with_var(var),
            den: self.den.with_var(var),
        }
    }

    pub fn in_field(&self, field: &Field) -> Result<RatFunc> {
        Ok(RatFunc {
            num: self.num.in_field(field)?,
            den: self.den.in_field(field)?,
        })
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at a finite point (∞ at poles).
    pub fn eval(&self, t: &FieldElem) -> SpherePoint {
        let d = self.den.eval(t);
        if d.is_zero() {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(&self.num.eval(t) / &d)
        }
    }

    /// Value at ∞: the leading-coefficient ratio, 0, or ∞.
    pub fn at_infinity(&self) -> SpherePoint {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.num.is_zero() || dn < dd {
            SpherePoint::Finite(self.field().zero())
        } else if dn > dd {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(&self.num.lc() / &self.den.lc())
        }
    }

    pub fn eval_point(&self, t: &SpherePoint) -> SpherePoint {
        match t {
            SpherePoint::Finite(v) => self.eval(v),
            SpherePoint::Infinity => self.at_infinity(),
        }
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.num.eval_c64(z) / self.den.eval_c64(z)
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RatFunc::new(n, d).expect("nonzero denominator")
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        let n = &(&self.num * &o.den) - &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let k = self.degree();
        let (n, d) = (&inner.num, &inner.den);
        let homog = |p: &Poly1| -> Poly1 {
            let mut acc = Poly1::zero(n.var(), n.field());
            for (i, c) in p.coeffs().iter().enumerate() {
                let t = &n.pow(i as u32) * &d.pow((k - i) as u32);
                acc = &acc + &t.scale(c);
            }
            acc
        };
        RatFunc::new(homog(&self.num), homog(&self.den)).expect("nonzero denominator")
    }

    /// Numerator of `self - a` (before cancellation, `num - a·den`).
    pub fn shifted_numerator(&self, a: &FieldElem) -> Poly1 {
        &self.num - &self.den.scale(a)
    }

    /// Divisor of `self - a` (of poles when `a = ∞`), ∞ included.
    pub fn value_divisor(&self, a: &SpherePoint) -> Result<Divisor> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let (finite_src, infinity) = match a {
            SpherePoint::Infinity => {
                let gap = self.num.deg() as i64 - self.den.deg() as i64;
                (self.den.clone(), gap.max(0) as u32)
            }
            SpherePoint::Finite(v) => {
                let f = self.shifted_numerator(v);
                let gap = self.den.deg() as i64 - f.deg() as i64;
                let inf = if f.is_zero() { 0 } else { gap.max(0) as u32 };
                (f, inf)
            }
        };
        Ok(Divisor {
            finite: finite_src.squarefree_decomposition(),
            infinity,
            var: self.var(),
            field: self.field().clone(),
        })
    }

    /// Finite critical values as the roots of a monic polynomial in `x`, plus
    /// whether ∞ is a critical value.
    pub fn critical_values(&self) -> CriticalValues {
        let var = self.var();
        let field = self.field().clone();
        let infinity_critical = self.den.squarefree_decomposition().iter().any(|(m, _)| *m >= 2)
            || self.num.deg() >= self.den.deg() + 2;
        let cvar = if var == Var::X { Var::Y } else { Var::X };
        if self.is_constant() {
            return CriticalValues {
                poly: Poly1::one(cvar, &field),
                infinity_critical: false,
            };
        }
        let vars = (var, cvar);
        let n = &Poly2::from_poly1(&self.num, vars, false)
            - &(&Poly2::from_poly1(&self.den, vars, false) * &Poly2::y(vars, &field));
        let nt = n.diff_x();
        let poly = if n.deg_x() <= 1 {
            Poly1::one(cvar, &field)
        } else {
            let r = resultant_same(&n, &nt, var).expect("nonzero");
            let lc = n.as_poly_in_x().last().cloned().expect("nonzero").with_var(cvar);
            r.exact_div(&lc).expect("leading coefficient divides").monic()
        };
        CriticalValues {
            poly,
            infinity_critical,
        }
    }

    /// `Σ (e_p - 1)` over all points of the sphere.
    pub fn ramification_total(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let w = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let (dn, dd) = (self.num.deg(), self.den.deg());
        let e_inf = if dn != dd {
            dn.abs_diff(dd)
        } else {
            let c = &self.num.lc() / &self.den.lc();
            dd - self.shifted_numerator(&c).deg()
        };
        w.deg() + e_inf - 1
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `((Q(∞), Q̃(∞)), (Q(0), Q̃(0)))`: the pairs approached by `(Q, Q̃)∘exp`
/// along its asymptotic paths.
pub fn asymptotic_values(
    q: &RatFunc,
    qt: &RatFunc,
) -> ((SpherePoint, SpherePoint), (SpherePoint, SpherePoint)) {
    let zero = SpherePoint::Finite(q.field().zero());
    (
        (q.at_infinity(), qt.at_infinity()),
        (q.eval_point(&zero), qt.eval_point(&zero)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValues {
    /// Monic polynomial in `x` (in `y` when the function itself is in `x`)
    /// whose roots are the finite critical values.
    pub poly: Poly1,
    pub infinity_critical: bool,
}

impl CriticalValues {
    pub fn contains(&self, v: &SpherePoint) -> bool {
        match v {
            SpherePoint::Infinity => self.infinity_critical,
            SpherePoint::Finite(x) => self.poly.eval(x).is_zero(),
        }
    }
}

/// A finite set of sphere points: roots of a squarefree monic polynomial,
/// possibly together with ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub finite: Poly1,
    pub infinity: bool,
}

impl PointSet {
    pub fn empty(var: Var, field: &Field) -> Self {
        PointSet {
            finite: Poly1::one(var, field),
            infinity: false,
        }
    }

    pub fn from_points(points: &[SpherePoint], var: Var, field: &Field) -> Self {
        let mut s = PointSet::empty(var, field);
        for p in points {
            match p {
                SpherePoint::Infinity => s.infinity = true,
                SpherePoint::Finite(v) => {
                    s.finite = lcm(&s.finite, &Poly1::linear_root(v, var, field));
                }
            }
        }
        s
    }

    pub fn union(&self, o: &PointSet) -> PointSet {
        PointSet {
            finite: lcm(&self.finite, &o.finite),
            infinity: self.infinity || o.infinity,
        }
    }

    /// Number of sphere points.
    pub fn count(&self) -> usize {
        self.finite.deg() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        match p {
            SpherePoint::Infinity => self.infinity,
            SpherePoint::Finite(v) => self.finite.eval(v).is_zero(),
        }
    }

    /// Point classes: squarefree factors and `inf`.
    pub fn to_json(&self) -> Value {
        let mut v = Vec::new();
        if !self.finite.is_constant() {
            v.push(json!(self.finite.to_string()));
        }
        if self.infinity {
            v.push(json!("inf"));
        }
        Value::Array(v)
    }

    /// Points, when every finite one is a field element.
    pub fn rational_points(&self) -> Option<Vec<SpherePoint>> {
        let mut pts = Vec::new();
        let mut rest = self.finite.clone();
        for c in crate::numeric::field_roots(&self.finite) {
            rest = rest.exact_div(&Poly1::linear_root(&c, rest.var(), rest.field()))?;
            pts.push(SpherePoint::Finite(c));
        }
        if !rest.is_constant() {
            return None;
        }
        if self.infinity {
            pts.push(SpherePoint::Infinity);
        }
        Some(pts)
    }
}

pub(crate) fn lcm(a: &Poly1, b: &Poly1) -> Poly1 {
    let g = a.gcd(b);
    (a * &b.exact_div(&g).expect("gcd divides")).monic()
}

/// Canonical divisor: one squarefree monic factor per multiplicity, plus the
/// multiplicity of ∞ (0 if absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    finite: Vec<(u32, Poly1)>,
    infinity: u32,
    var: Var,
    field: Field,
}

impl Divisor {
    pub fn finite(&self) -> &[(u32, Poly1)] {
        &self.finite
    }

    pub fn infinity(&self) -> u32 {
        self.infinity
    }

    pub fn total_degree(&self) -> usize {
        self.finite
            .iter()
            .map(|(m, f)| *m as usize * f.deg())
            .sum::<usize>()
            + self.infinity as usize
    }

    /// Product of the finite point classes.
    pub fn support(&self) -> PointSet {
        let finite = self
            .finite
            .iter()
            .fold(Poly1::one(self.var, &self.field), |acc, (_, f)| &acc * f)
            .monic();
        PointSet {
            finite,
            infinity: self.infinity > 0,
        }
    }

    /// Removes the points of `punct`.
    pub fn restrict(&self, punct: &PointSet) -> Divisor {
        let finite = self
            .finite
            .iter()
            .filter_map(|(m, f)| {
                let g = f.gcd(&punct.finite);
                let r = f.exact_div(&g).expect("gcd divides").monic();
                (!r.is_constant()).then_some((*m, r))
            })
            .collect();
        Divisor {
            finite,
            infinity: if punct.infinity { 0 } else { self.infinity },
            var: self.var,
            field: self.field.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.infinity == 0
    }

    /// Multiplicity at a point.
    pub fn multiplicity_at(&self, p: &SpherePoint) -> u32 {
        match p {
            SpherePoint::Infinity => self.infinity,
            SpherePoint::Finite(v) => self
                .finite
                .iter()
                .find(|(_, f)| f.eval(v).is_zero())
                .map_or(0, |(m, _)| *m),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v: Vec<Value> = self
            .finite
            .iter()
            .map(|(m, f)| json!({"factor": f.to_string(), "mult": m}))
            .collect();
        if self.infinity > 0 {
            v.push(json!({"inf": self.infinity}));
        }
        Value::Array(v)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .finite
            .iter()
            .map(|(m, p)| format!("({p}, {m})"))
            .collect();
        if self.infinity > 0 {
            parts.push(format!("(inf, {})", self.infinity));
        }
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `z ↦ (a z + b)/(c z + d)` with `ad - bc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl MobiusMap {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::Degenerate("Möbius determinant vanishes".into()));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity(field: &Field) -> Self {
        MobiusMap {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn field(&self) -> Field {
        [&self.b, &self.c, &self.d]
            .iter()
            .fold(self.a.field().clone(), |f, x| f.join(x.field()).expect("field"))
    }

    pub fn apply_point(&self, z: &SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.is_zero() {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(&self.a / &self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = &(&self.c * z) + &self.d;
                if den.is_zero() {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(&(&(&self.a * z) + &self.b) / &den)
                }
            }
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: &(&self.a * &inner.a) + &(&self.b * &inner.c),
            b: &(&self.a * &inner.b) + &(&self.b * &inner.d),
            c: &(&self.c * &inner.a) + &(&self.d * &inner.c),
            d: &(&self.c * &inner.b) + &(&self.d * &inner.d),
        }
    }

    /// The map sending `z1, z2, z3` to `0, ∞, 1`. Points must be distinct.
    pub fn to_standard(z: [&SpherePoint; 3], field: &Field) -> Result<MobiusMap> {
        use SpherePoint::*;
        let (one, zero) = (field.one(), field.zero());
        let m = match (z[0], z[1], z[2]) {
            (Infinity, Finite(z2), Finite(z3)) => (zero, z3 - z2, one, -z2),
            (Finite(z1), Infinity, Finite(z3)) => (one, -z1, zero, z3 - z1),
            (Finite(z1), Finite(z2), Infinity) => (one.clone(), -z1, one, -z2),
            (Finite(z1), Finite(z2), Finite(z3)) => {
                let (p, q) = (z3 - z2, z3 - z1);
                (p.clone(), -(z1 * &p), q.clone(), -(z2 * &q))
            }
            _ => return Err(Error::Degenerate("repeated point".into())),
        };
        MobiusMap::new(m.0, m.1, m.2, m.3)
    }

    /// The unique map with `M(z_i) = w_i`.
    pub fn through(z: [&SpherePoint; 3], w: [&SpherePoint; 3], field: &Field) -> Result<MobiusMap> {
        let a = MobiusMap::to_standard(z, field)?;
        let b = MobiusMap::to_standard(w, field)?;
        Ok(b.inverse().compose(&a))
    }

    /// `M ∘ Q`.
    pub fn apply(&self, q: &RatFunc) -> RatFunc {
        let n = &q.num.scale(&self.a) + &q.den.scale(&self.b);
        let d = &q.num.scale(&self.c) + &q.den.scale(&self.d);
        RatFunc::new(n, d).expect("determinant is nonzero")
    }

    /// `Q ∘ M`.
    pub fn precompose(&self, q: &RatFunc) -> RatFunc {
        let var = q.var();
        let field = q.field().join(&self.field()).expect("field");
        let inner = RatFunc::new(
            Poly1::new(var, &field, vec![self.b.clone(), self.a.clone()]),
            Poly1::new(var, &field, vec![self.d.clone(), self.c.clone()]),
        )
        .expect("determinant is nonzero");
        q.compose(&inner)
    }

    pub fn as_ratfunc(&self, var: Var) -> RatFunc {
        let field = self.field();
        RatFunc::new(
            Poly1::new(var, &field, vec![self.b.clone(), self.a.clone()]),
            Poly1::new(var, &field, vec![self.d.clone(), self.c.clone()]),
        )
        .expect("determinant is nonzero")
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_ratfunc(Var::X))
    }
}

/// `Some(M)` when `qt = M ∘ q` for a Möbius map `M`.
pub fn mobius_relation(q: &RatFunc, qt: &RatFunc) -> Option<MobiusMap> {
    if q.is_constant() || qt.is_constant() || q.degree() != qt.degree() {
        return None;
    }
    let field = q.field().join(qt.field()).ok()?;
    let mut zs: Vec<SpherePoint> = Vec::new();
    let mut ws: Vec<SpherePoint> = Vec::new();
    let candidates = std::iter::once(SpherePoint::Infinity)
        .chain((0..64).map(|i| SpherePoint::Finite(field.int(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }))));
    for t in candidates {
        let z = q.eval_point(&t);
        if zs.contains(&z) {
            continue;
        }
        ws.push(qt.eval_point(&t));
        zs.push(z);
        if zs.len() == 3 {
            break;
        }
    }
    if zs.len() < 3 {
        return None;
    }
    let m = MobiusMap::through([&zs[0], &zs[1], &zs[2]], [&ws[0], &ws[1], &ws[2]], &field).ok()?;
    (m.apply(q) == *qt).then_some(m)
}
