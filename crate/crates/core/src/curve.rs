//! Plane curves attached to rational pairs: implicitization, fiber and
//! shape checks, local branches, and the eliminant `H0`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, Rat, SpherePoint};
use crate::linalg::{kernel, solve};
use crate::newton::{newton_polygon_origin, Segment};
use crate::numeric::field_roots;
use crate::poly1::Poly1;
use crate::poly2::Poly2;
use crate::ratfunc::{MobiusMap, RatFunc};
use crate::resultant::resultant;
use crate::sharing::SharedPairSpec;
use crate::var::Var;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

const XY: (Var, Var) = (Var::X, Var::Y);

/// Implicit equation of the image of a parameterization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    /// Primitive squarefree curve polynomial.
    pub k: Poly2,
    /// `d` in `Res = content · K^d`; `1` means a proper parameterization.
    pub map_degree: u32,
    pub deg_x: u32,
    pub deg_y: u32,
    pub content_removed: FieldElem,
}

impl CurveModel {
    fn from_power(r: &Poly2) -> Result<CurveModel> {
        if r.is_zero() {
            return Err(Error::Degenerate("identically zero eliminant".into()));
        }
        let k = r.squarefree_part();
        if k.is_constant() {
            return Err(Error::Degenerate("constant eliminant".into()));
        }
        let d = r.total_degree() / k.total_degree();
        let c = r
            .exact_div(&k.pow(d))
            .filter(Poly2::is_constant)
            .ok_or_else(|| Error::Degenerate("eliminant is not a power of one curve".into()))?;
        Ok(CurveModel {
            deg_x: k.deg_x(),
            deg_y: k.deg_y(),
            map_degree: d,
            content_removed: c.coeff(0, 0),
            k,
        })
    }

    pub fn is_proper(&self) -> bool {
        self.map_degree == 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.k.to_string(),
            "deg_x": self.deg_x,
            "deg_y": self.deg_y,
            "map_degree": self.map_degree,
            "content_removed": self.content_removed.to_string(),
        })
    }
}

fn param_var(q: &RatFunc) -> Var {
    match q.var() {
        Var::X | Var::Y => Var::T,
        v => v,
    }
}

/// `coord·den - num` as a polynomial in `(t, coord)`.
fn graph_poly(q: &RatFunc, t: Var, coord: Var, field: &Field) -> Poly2 {
    let vars = (t, coord);
    let num = Poly2::from_poly1(&q.num().with_var(t), vars, false);
    let den = Poly2::from_poly1(&q.den().with_var(t), vars, false);
    let c = Poly2::monomial(field.one(), 0, 1, vars, field);
    &(&c * &den) - &num
}

/// Curve `K(x, y) = 0` through `t ↦ (Q(t), Q̃(t))`, verified exactly.
pub fn implicitize(q: &RatFunc, qt: &RatFunc) -> Result<CurveModel> {
    if q.is_constant() && qt.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if q.var() != qt.var() {
        return Err(Error::VarMismatch {
            expected: q.var().to_string(),
            found: qt.var().to_string(),
        });
    }
    let field = q.field().join(qt.field())?;
    let t = param_var(q);
    let a = graph_poly(q, t, Var::X, &field);
    let b = graph_poly(qt, t, Var::Y, &field);
    let r = resultant(&a, &b, t)?.poly;
    let model = CurveModel::from_power(&r)?;
    if !on_curve(&model.k, q, qt)? {
        return Err(Error::Degenerate("implicit equation failed verification".into()));
    }
    Ok(model)
}

/// Exact test `K(Q(t), Q̃(t)) ≡ 0`.
pub fn on_curve(k: &Poly2, q: &RatFunc, qt: &RatFunc) -> Result<bool> {
    if q.var() != qt.var() {
        return Err(Error::VarMismatch {
            expected: q.var().to_string(),
            found: qt.var().to_string(),
        });
    }
    Ok(k
        .substitute_fractions(q.num(), q.den(), qt.num(), qt.den())
        .is_zero())
}

/// Restriction of `K` to one fiber line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    /// `K(a, y)` (or `K(x, b)`); the leading coefficient line for `a = ∞`.
    pub poly: Poly1,
    /// `k` with `poly = c·(y - b)^k`, if it has that form.
    pub exponent: Option<u32>,
}

impl Fiber {
    pub fn is_monomial(&self) -> bool {
        self.exponent.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberResult {
    pub a: SpherePoint,
    pub b: SpherePoint,
    /// Fiber over `x = a`, tested against `b`.
    pub over_a: Fiber,
    /// Fiber over `y = b`, tested against `a`.
    pub over_b: Fiber,
}

impl FiberResult {
    pub fn ok(&self) -> bool {
        self.over_a.is_monomial() && self.over_b.is_monomial()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "fiber_x": self.over_a.poly.to_string(),
            "exponent_x": self.over_a.exponent,
            "fiber_y": self.over_b.poly.to_string(),
            "exponent_y": self.over_b.exponent,
            "ok": self.ok(),
        })
    }
}

/// Exponent `k` if `f = c·(v - b)^k` (`b = ∞`: `f` constant, `k` = deficit
/// from the full degree `full`).
fn monomial_exponent(f: &Poly1, b: &SpherePoint, full: u32) -> Option<u32> {
    match b {
        SpherePoint::Infinity => f.is_constant().then_some(full),
        SpherePoint::Finite(b) => {
            let g = f.translate(b);
            let nz: Vec<usize> = (0..=g.deg()).filter(|&i| !g.coeff(i).is_zero()).collect();
            match nz.as_slice() {
                [k] if *k > 0 => Some(*k as u32),
                _ => None,
            }
        }
    }
}

/// `K(a, ·)` as a polynomial in `y`; the `x`-leading coefficient for `a = ∞`.
fn fiber_poly(k: &Poly2, a: &SpherePoint) -> Poly1 {
    match a {
        SpherePoint::Finite(a) => k.subs_x(a),
        SpherePoint::Infinity => k.as_poly_in_x().pop().expect("nonzero"),
    }
}

fn fiber(k: &Poly2, a: &SpherePoint, b: &SpherePoint) -> Result<Fiber> {
    let poly = fiber_poly(k, a);
    if poly.is_zero() {
        return Err(Error::Degenerate(format!("curve contains the line x = {a}")));
    }
    let exponent = monomial_exponent(&poly, b, k.deg_y());
    Ok(Fiber { poly, exponent })
}

/// Whether each shared pair's fibers are concentrated at the pair,
/// i.e. `K(a, y) = c·(y - b)^k` and `K(x, b) = c'·(x - a)^l`.
pub fn fiber_check(k: &Poly2, pairs: &SharedPairSpec) -> Result<Vec<FiberResult>> {
    if k.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ks = k.swap();
    pairs
        .pairs()
        .iter()
        .map(|p| {
            Ok(FiberResult {
                a: p.a.clone(),
                b: p.b.clone(),
                over_a: fiber(k, &p.a, &p.b)?,
                over_b: fiber(&ks, &p.b, &p.a)?,
            })
        })
        .collect()
}

/// Indices `j` with nonzero Taylor coefficient of `f` at `b`.
fn nonzero_taylor(f: &Poly1, b: &FieldElem) -> Vec<u32> {
    let g = f.translate(b);
    if g.is_zero() {
        return Vec::new();
    }
    (0..=g.deg())
        .filter(|&i| !g.coeff(i).is_zero())
        .map(|i| i as u32)
        .collect()
}

/// Derivative conditions at one finite pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairConditions {
    pub a: FieldElem,
    pub b: FieldElem,
    /// `j` with `∂^j K/∂y^j (a, b) ≠ 0`.
    pub nonzero_y: Vec<u32>,
    /// `l` with `∂^l K/∂x^l (a, b) ≠ 0`.
    pub nonzero_x: Vec<u32>,
}

impl PairConditions {
    /// All but one derivative vanish in each direction, the value included.
    pub fn ok(&self) -> bool {
        self.nonzero_y.len() == 1
            && self.nonzero_x.len() == 1
            && self.nonzero_y[0] > 0
            && self.nonzero_x[0] > 0
    }
}

/// `K = (x - a_λ)^s y^m + A (y - b_κ)^t x^n + Σ_{j<n, k<m} c_jk x^j y^k`,
/// after scaling `K` by `1/scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeKstA {
    pub s: u32,
    pub t: u32,
    pub lambda: usize,
    pub kappa: usize,
    pub a_coeff: FieldElem,
    pub scale: FieldElem,
    pub tail: Poly2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub m: u32,
    pub n: u32,
    pub total: u32,
    pub degree_bounds: bool,
    pub conditions: Vec<PairConditions>,
    pub shape: Option<ShapeKstA>,
    pub mismatches: Vec<String>,
}

impl ShapeReport {
    pub fn conditions_ok(&self) -> bool {
        self.conditions.iter().all(PairConditions::ok)
    }

    pub fn st_in_range(&self) -> bool {
        self.shape
            .as_ref()
            .is_some_and(|s| (1..=4).contains(&s.s) && (1..=4).contains(&s.t))
    }

    /// Degree bounds, derivative conditions and an identified shape with
    /// `1 <= s, t <= 4`.
    pub fn passed(&self) -> bool {
        self.degree_bounds && self.conditions_ok() && self.st_in_range()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "total_degree": self.total,
            "degree_bounds": self.degree_bounds,
            "conditions": self.conditions.iter().map(|c| json!({
                "a": c.a.to_string(),
                "b": c.b.to_string(),
                "nonzero_y_derivatives": c.nonzero_y,
                "nonzero_x_derivatives": c.nonzero_x,
                "ok": c.ok(),
            })).collect::<Vec<_>>(),
            "shape": self.shape.as_ref().map(|s| json!({
                "s": s.s, "t": s.t, "lambda": s.lambda + 1, "kappa": s.kappa + 1,
                "A": s.a_coeff.to_string(), "scale": s.scale.to_string(),
                "tail": s.tail.to_string(),
            })),
            "mismatches": self.mismatches,
            "passed": self.passed(),
        })
    }
}

fn linear_pow(c: &FieldElem, e: u32, var: Var, field: &Field) -> Poly1 {
    Poly1::linear_root(c, var, field).pow(e)
}

/// Tries to read off the `(x - a_λ)^s y^m + A (y - b_κ)^t x^n + tail` form.
fn identify_shape(k: &Poly2, pts: &[(FieldElem, FieldElem)]) -> Option<ShapeKstA> {
    let field = k.field().clone();
    let (m, n) = (k.deg_y(), k.deg_x());
    let cy = k.as_poly_in_y().pop()?;
    for (lambda, (a, _)) in pts.iter().enumerate() {
        for s in 1..=n.max(1) {
            let rho = if s < n {
                cy.coeff(s as usize)
            } else if !a.is_zero() {
                let low = (-a).pow(s);
                &cy.coeff(0) / &low
            } else {
                cy.lc()
            };
            if rho.is_zero() {
                continue;
            }
            let kk = k.scale(&rho.inv()?);
            let head = Poly2::from_poly1(&linear_pow(a, s, Var::X, &field), XY, false);
            let ym = Poly2::monomial(field.one(), 0, m, XY, &field);
            let d = &kk - &(&head * &ym);
            let cx = d.as_poly_in_x().get(n as usize).cloned();
            let Some(cx) = cx else { continue };
            if cx.is_zero() {
                continue;
            }
            let t = cx.deg() as u32;
            let a_coeff = cx.lc();
            for (kappa, (_, b)) in pts.iter().enumerate() {
                if cx != linear_pow(b, t, Var::Y, &field).scale(&a_coeff) {
                    continue;
                }
                let xn = Poly2::monomial(field.one(), n, 0, XY, &field);
                let second = &Poly2::from_poly1(&linear_pow(b, t, Var::Y, &field), XY, true) * &xn;
                let tail = &d - &second.scale(&a_coeff);
                if tail.terms().all(|(&(j, kk), _)| j < n && kk < m) {
                    return Some(ShapeKstA {
                        s,
                        t,
                        lambda,
                        kappa,
                        a_coeff,
                        scale: rho,
                        tail,
                    });
                }
            }
        }
    }
    None
}

/// Degree bounds, derivative conditions at each finite pair, and the
/// `(x - a_λ)^s y^m + A (y - b_κ)^t x^n + ...` form. Mismatches are
/// reported, never raised.
pub fn shape_check(k: &Poly2, pairs: &SharedPairSpec) -> ShapeReport {
    let (m, n, total) = (k.deg_y(), k.deg_x(), k.total_degree());
    let mut mismatches = Vec::new();
    let degree_bounds = m <= 9 && n <= 9 && total <= 13;
    if !degree_bounds {
        mismatches.push(format!(
            "degree bounds violated: deg_y = {m}, deg_x = {n}, total = {total}"
        ));
    }
    let pts = pairs.finite_pairs();
    let ks = k.swap();
    let mut conditions = Vec::new();
    for (a, b) in &pts {
        let c = PairConditions {
            a: a.clone(),
            b: b.clone(),
            nonzero_y: nonzero_taylor(&k.subs_x(a), b),
            nonzero_x: nonzero_taylor(&ks.subs_x(b), a),
        };
        if !c.ok() {
            mismatches.push(format!(
                "derivative conditions fail at ({a}, {b}): nonzero y-orders {:?}, x-orders {:?}",
                c.nonzero_y, c.nonzero_x
            ));
        }
        conditions.push(c);
    }
    let shape = identify_shape(k, &pts);
    match &shape {
        None => mismatches.push("no (x-a)^s y^m + A (y-b)^t x^n head matches".into()),
        Some(s) if !(1..=4).contains(&s.s) || !(1..=4).contains(&s.t) => {
            mismatches.push(format!("exponents s = {}, t = {} outside 1..4", s.s, s.t))
        }
        _ => {}
    }
    ShapeReport {
        m,
        n,
        total,
        degree_bounds,
        conditions,
        shape,
        mismatches,
    }
}

/// Which variable parameterizes a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `y - y0 = Σ c_i (x - x0)^{e_i}`.
    YofX,
    /// `x - x0 = Σ c_i (y - y0)^{e_i}`.
    XofY,
}

/// Truncated Puiseux expansion of one branch (one conjugacy cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchExpansion {
    pub orientation: Orientation,
    /// Leading exponent `μ` in the convention `y - y0 ~ C (x - x0)^μ`.
    pub exponent: Rat,
    /// `(exponent, coefficient)` in the parameter variable of `orientation`.
    pub terms: Vec<(Rat, FieldElem)>,
    /// Common denominator of the exponents.
    pub ramification: u32,
    /// Minimal polynomial of the next coefficient when it leaves the field.
    pub extension: Option<Poly1>,
    /// Order in the parameter of `K` along the truncated series; `None` when
    /// the truncated series is an exact branch.
    pub residual_order: Option<Rat>,
}

impl BranchExpansion {
    pub fn leading(&self) -> Option<&FieldElem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn needs_extension(&self) -> bool {
        self.extension.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orientation": match self.orientation {
                Orientation::YofX => "y(x)",
                Orientation::XofY => "x(y)",
            },
            "exponent": self.exponent.to_string(),
            "terms": self.terms.iter().map(|(e, c)| json!({
                "exponent": e.to_string(),
                "coefficient": c.to_string(),
            })).collect::<Vec<_>>(),
            "ramification": self.ramification,
            "extension_needed": self.extension.as_ref().map(|p| p.to_string()),
            "residual_order": self.residual_order.as_ref().map(|r| r.to_string()),
        })
    }
}

struct PuiseuxCtx {
    k0: Poly2,
    orientation: Orientation,
    exponent: Rat,
    terms: usize,
}

/// Roots of a segment's edge equation, as `(c, next polynomial, p, q)` or an
/// extension report.
enum EdgeRoot {
    Root(FieldElem),
    Extension(Poly1),
}

fn edge_roots(g: &Poly2, seg: &Segment) -> (u32, u32, Vec<EdgeRoot>) {
    let mu = &seg.exponent;
    let p = mu.numer().to_u32().expect("small exponent");
    let q = mu.denom().to_u32().expect("small exponent");
    let field = g.field().clone();
    let kend = seg.end().1;
    // ψ(C) with φ(c) = c^kend ψ(c^q).
    let mut coeffs = vec![field.zero(); (seg.height() / q) as usize + 1];
    for &(j, k) in &seg.support {
        coeffs[((k - kend) / q) as usize] = g.coeff(j, k);
    }
    let psi = Poly1::new(Var::T, &field, coeffs);
    let mut out = Vec::new();
    let mut rest = psi.clone();
    for cc in field_roots(&psi) {
        let lin = Poly1::linear_root(&cc, Var::T, &field);
        while let Some(r) = rest.exact_div(&lin) {
            rest = r;
        }
        if q == 1 {
            out.push(EdgeRoot::Root(cc));
            continue;
        }
        let cyc = &Poly1::monomial(field.one(), q as usize, Var::T, &field)
            - &Poly1::constant(cc.clone(), Var::T, &field);
        match field_roots(&cyc).into_iter().next() {
            Some(c) => out.push(EdgeRoot::Root(c)),
            None => out.push(EdgeRoot::Extension(cyc)),
        }
    }
    if !rest.is_constant() {
        out.push(EdgeRoot::Extension(rest.squarefree_part().monic()));
    }
    (p, q, out)
}

/// `g(s^q, s^p (c + z)) / s^N`.
fn substitute_branch(g: &Poly2, p: u32, q: u32, c: &FieldElem) -> Poly2 {
    let field = g.field().join(c.field()).expect("field");
    let vars = g.vars();
    let xs = Poly2::monomial(field.one(), q, 0, vars, &field);
    let ys = &Poly2::monomial(c.clone(), p, 0, vars, &field)
        + &Poly2::monomial(field.one(), p, 1, vars, &field);
    let h = g.compose(&xs, &ys);
    let nmin = h.terms().map(|(e, _)| e.0).min().unwrap_or(0);
    Poly2::from_terms(vars, &field, h.terms().map(|(&(j, k), v)| ((j - nmin, k), v.clone())))
}

fn residual(ctx: &PuiseuxCtx, terms: &[(Rat, FieldElem)], ram: u32) -> Option<Rat> {
    let field = terms
        .iter()
        .fold(ctx.k0.field().clone(), |f, (_, c)| f.join(c.field()).expect("field"));
    let qr = Rat::from_integer(ram.into());
    let mut ys = Poly1::zero(Var::S, &field);
    for (e, c) in terms {
        let d = (e * &qr).to_integer().to_usize().expect("integral exponent");
        ys = &ys + &Poly1::monomial(c.clone(), d, Var::S, &field);
    }
    let xs = Poly1::monomial(field.one(), ram as usize, Var::S, &field);
    let one = Poly1::one(Var::S, &field);
    let r = ctx.k0.substitute_fractions(&xs, &one, &ys, &one);
    if r.is_zero() {
        return None;
    }
    let ord = (0..).find(|&i| !r.coeff(i).is_zero()).unwrap();
    Some(Rat::new((ord as i64).into(), ram.into()))
}

fn emit(
    ctx: &PuiseuxCtx,
    terms: Vec<(Rat, FieldElem)>,
    ram: u32,
    extension: Option<Poly1>,
    out: &mut Vec<BranchExpansion>,
) {
    let residual_order = residual(ctx, &terms, ram);
    out.push(BranchExpansion {
        orientation: ctx.orientation,
        exponent: ctx.exponent.clone(),
        terms,
        ramification: ram,
        extension,
        residual_order,
    });
}

/// Follows one segment of `g` (current remainder polynomial), where the
/// original parameter is `s^ram` and the unknown enters as `x^f · z`.
fn follow(
    ctx: &PuiseuxCtx,
    g: &Poly2,
    seg: &Segment,
    ram: u32,
    f: &Rat,
    terms: &[(Rat, FieldElem)],
    out: &mut Vec<BranchExpansion>,
) {
    let (p, q, roots) = edge_roots(g, seg);
    let e = f + Rat::new(p.into(), (q * ram).into());
    for r in roots {
        match r {
            EdgeRoot::Extension(mp) => emit(ctx, terms.to_vec(), ram, Some(mp), out),
            EdgeRoot::Root(c) => {
                let mut t = terms.to_vec();
                t.push((e.clone(), c.clone()));
                let g2 = substitute_branch(g, p, q, &c);
                extend(ctx, &g2, ram * q, &e, t, out);
            }
        }
    }
}

fn extend(
    ctx: &PuiseuxCtx,
    g: &Poly2,
    ram: u32,
    f: &Rat,
    terms: Vec<(Rat, FieldElem)>,
    out: &mut Vec<BranchExpansion>,
) {
    let kmin = g.terms().map(|(e, _)| e.1).min().unwrap_or(0);
    let segs = newton_polygon_origin(g);
    if terms.len() >= ctx.terms || (segs.is_empty() && kmin > 0) || g.is_zero() {
        emit(ctx, terms, ram, None, out);
        return;
    }
    if kmin > 0 {
        // The remainder vanishes on z = 0: the truncated series is exact.
        emit(ctx, terms.clone(), ram, None, out);
    }
    if segs.is_empty() {
        emit(ctx, terms, ram, None, out);
        return;
    }
    for seg in &segs {
        follow(ctx, g, seg, ram, f, &terms, out);
    }
}

/// Puiseux branches of `K = 0` at `at`, with up to `terms` coefficients each.
/// Edges of exponent below one are expanded as `x(y)`.
pub fn puiseux_branches(
    k: &Poly2,
    at: (&FieldElem, &FieldElem),
    terms: usize,
) -> Result<Vec<BranchExpansion>> {
    if !k.eval(at.0, at.1).is_zero() {
        return Err(Error::NotVanishing);
    }
    if terms == 0 {
        return Err(Error::Invalid("at least one term is required".into()));
    }
    let k0 = k.translate(at.0, at.1).with_vars(XY);
    let ks = k0.swap().with_vars(XY);
    let mut out = Vec::new();
    for seg in newton_polygon_origin(&k0) {
        let (g, s, orientation) = if seg.exponent >= Rat::one() {
            (k0.clone(), seg.clone(), Orientation::YofX)
        } else {
            let inv = seg.exponent.recip();
            let s = newton_polygon_origin(&ks)
                .into_iter()
                .find(|t| t.exponent == inv)
                .expect("mirrored edge");
            (ks.clone(), s, Orientation::XofY)
        };
        let ctx = PuiseuxCtx {
            k0: g.clone(),
            orientation,
            exponent: seg.exponent.clone(),
            terms,
        };
        follow(&ctx, &g, &s, 1, &Rat::zero(), &[], &mut out);
    }
    Ok(out)
}

/// One candidate component of an eliminant, with its fiber over `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCandidate {
    pub poly: Poly2,
    pub multiplicity: u32,
    /// Vanishes on the diagonal `x = y`.
    pub diagonal: bool,
    /// `K(0, y)`.
    pub fiber_x0: Poly1,
    /// `K(0, y) = c·y^k` with `k >= 1`.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultantPair {
    /// Primitive form of the full eliminant.
    pub full: Poly2,
    /// Power of `x - y` removed (0 when removal was off).
    pub diagonal_power: u32,
    pub candidates: Vec<FactorCandidate>,
}

impl ResultantPair {
    /// First flagged non-diagonal candidate as a curve model.
    pub fn selected(&self) -> Option<CurveModel> {
        let c = self.candidates.iter().find(|c| c.flagged && !c.diagonal)?;
        Some(CurveModel {
            k: c.poly.clone(),
            map_degree: c.multiplicity,
            deg_x: c.poly.deg_x(),
            deg_y: c.poly.deg_y(),
            content_removed: self.full.field().one(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "eliminant_deg_x": self.full.deg_x(),
            "eliminant_deg_y": self.full.deg_y(),
            "diagonal_power": self.diagonal_power,
            "candidates": self.candidates.iter().map(|c| json!({
                "curve": c.poly.to_string(),
                "multiplicity": c.multiplicity,
                "diagonal": c.diagonal,
                "fiber_x0": c.fiber_x0.to_string(),
                "flagged": c.flagged,
            })).collect::<Vec<_>>(),
            "selected": self.selected().map(|m| m.to_json()),
        })
    }
}

/// Splits `p` into squarefree parts of equal multiplicity.
fn squarefree_split(p: &Poly2) -> Vec<(u32, Poly2)> {
    let mut levels = Vec::new();
    let mut rest = p.clone();
    while !rest.is_constant() {
        let s = rest.squarefree_part();
        rest = rest.exact_div(&s).expect("squarefree part divides");
        levels.push(s);
    }
    let mut out = Vec::new();
    for i in 0..levels.len() {
        let f = match levels.get(i + 1) {
            Some(next) => levels[i].exact_div(next).expect("nested parts"),
            None => levels[i].clone(),
        };
        if !f.is_constant() {
            out.push((i as u32 + 1, f.primitive().1));
        }
    }
    out
}

/// `Res_u(H(u, y), H(u, x))` with the diagonal factor optionally removed,
/// and the remaining components surfaced as candidates.
pub fn resultant_pair(h: &Poly2, eliminate: Var, remove_diagonal: bool) -> Result<ResultantPair> {
    let (v0, v1) = h.vars();
    let other = if v0 == eliminate {
        v1
    } else if v1 == eliminate {
        v0
    } else {
        return Err(Error::VarMismatch {
            expected: eliminate.to_string(),
            found: format!("({v0},{v1})"),
        });
    };
    let elim = if eliminate == Var::X || eliminate == Var::Y { Var::U } else { eliminate };
    let rename = |to: Var| {
        if v0 == eliminate {
            h.with_vars((elim, to))
        } else {
            h.with_vars((to, elim))
        }
    };
    let _ = other;
    let hy = rename(Var::Y);
    let hx = rename(Var::X);
    let r = resultant(&hx, &hy, elim)?.poly;
    if r.is_zero() {
        return Err(Error::Degenerate("eliminant vanishes identically".into()));
    }
    let full = r.primitive().1;
    let field = full.field().clone();
    let diag = &Poly2::x(XY, &field) - &Poly2::y(XY, &field);
    let mut rest = full.clone();
    let mut diagonal_power = 0;
    if remove_diagonal {
        while let Some(q) = rest.exact_div(&diag) {
            rest = q;
            diagonal_power += 1;
        }
    }
    let zero = field.zero();
    let candidates: Vec<FactorCandidate> = squarefree_split(&rest)
        .into_iter()
        .map(|(mult, poly)| {
            let fiber_x0 = poly.subs_x(&zero);
            let flagged = monomial_exponent(&fiber_x0, &SpherePoint::Finite(zero.clone()), 0)
                .is_some();
            FactorCandidate {
                diagonal: poly.exact_div(&diag).is_some(),
                multiplicity: mult,
                poly,
                fiber_x0,
                flagged,
            }
        })
        .collect();
    if candidates.iter().all(|c| c.diagonal) {
        return Err(Error::Degenerate("no factor besides the diagonal".into()));
    }
    Ok(ResultantPair {
        full,
        diagonal_power,
        candidates,
    })
}

/// `P = x² + c2 xy + c3 x + c4 y + c5` and `P̃ = y² + c̃2 xy + c̃3 x + c̃4 y + c̃5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxQuadratics {
    pub p: Poly2,
    pub pt: Poly2,
}

impl AuxQuadratics {
    /// `(c2, c3, c4, c5)` of `P`.
    pub fn c(&self) -> [FieldElem; 4] {
        [self.p.coeff(1, 1), self.p.coeff(1, 0), self.p.coeff(0, 1), self.p.coeff(0, 0)]
    }

    /// `(c̃2, c̃3, c̃4, c̃5)` of `P̃`.
    pub fn ct(&self) -> [FieldElem; 4] {
        [self.pt.coeff(1, 1), self.pt.coeff(1, 0), self.pt.coeff(0, 1), self.pt.coeff(0, 0)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuxOutcome {
    Basis(AuxQuadratics),
    /// A bilinear `P0` vanishes on the pairs, so `b = M(a)` for a Möbius `M`.
    Degenerate {
        p0: Poly2,
        pt0: Poly2,
        mobius: Option<MobiusMap>,
    },
}

impl AuxOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            AuxOutcome::Basis(q) => json!({
                "degenerate": false, "P": q.p.to_string(), "P_tilde": q.pt.to_string(),
            }),
            AuxOutcome::Degenerate { p0, pt0, mobius } => json!({
                "degenerate": true, "P0": p0.to_string(), "P0_tilde": pt0.to_string(),
                "mobius": mobius.as_ref().map(|m| m.to_string()),
            }),
        }
    }
}

fn four_pairs(pairs: &SharedPairSpec) -> Result<Vec<(FieldElem, FieldElem)>> {
    let pts = pairs.finite_pairs();
    if pts.len() != 4 {
        return Err(Error::Invalid(format!(
            "four finite pairs are required, got {}",
            pts.len()
        )));
    }
    Ok(pts)
}

fn spec_field(pts: &[(FieldElem, FieldElem)]) -> Result<Field> {
    pts.iter().try_fold(Field::rationals(), |f, (a, b)| {
        f.join(a.field())?.join(b.field())
    })
}

fn quad_from(coeffs: &[(u32, u32, FieldElem)], field: &Field) -> Poly2 {
    Poly2::from_terms(XY, field, coeffs.iter().map(|(j, k, c)| ((*j, *k), c.clone())))
}

/// Auxiliary quadratics through four finite pairs, or the Möbius-degenerate
/// configuration.
pub fn aux_quadratics(pairs: &SharedPairSpec) -> Result<AuxOutcome> {
    let pts = four_pairs(pairs)?;
    let field = spec_field(&pts)?;
    let rows: Vec<Vec<FieldElem>> = pts
        .iter()
        .map(|(a, b)| vec![a * b, a.clone(), b.clone(), field.one()])
        .collect();
    let rhs_p: Vec<FieldElem> = pts.iter().map(|(a, _)| -(a * a)).collect();
    let rhs_pt: Vec<FieldElem> = pts.iter().map(|(_, b)| -(b * b)).collect();
    let ker = kernel(&rows, 4);
    if ker.is_empty() {
        let c = solve(&rows, &rhs_p).ok_or_else(|| Error::Invalid("inconsistent pairs".into()))?;
        let ct = solve(&rows, &rhs_pt).ok_or_else(|| Error::Invalid("inconsistent pairs".into()))?;
        let one = field.one();
        let p = quad_from(
            &[(2, 0, one.clone()), (1, 1, c[0].clone()), (1, 0, c[1].clone()), (0, 1, c[2].clone()), (0, 0, c[3].clone())],
            &field,
        );
        let pt = quad_from(
            &[(0, 2, one), (1, 1, ct[0].clone()), (1, 0, ct[1].clone()), (0, 1, ct[2].clone()), (0, 0, ct[3].clone())],
            &field,
        );
        return Ok(AuxOutcome::Basis(AuxQuadratics { p, pt }));
    }
    let v = &ker[0];
    let p0 = quad_from(
        &[(1, 1, v[0].clone()), (1, 0, v[1].clone()), (0, 1, v[2].clone()), (0, 0, v[3].clone())],
        &field,
    )
    .primitive()
    .1;
    // Full quadric space: x², y², xy, x, y, 1; a kernel vector without xy.
    let rows6: Vec<Vec<FieldElem>> = pts
        .iter()
        .map(|(a, b)| vec![a * a, b * b, a * b, a.clone(), b.clone(), field.one()])
        .collect();
    let mut pt0 = None;
    for w in kernel(&rows6, 6) {
        let w = if w[2].is_zero() {
            w
        } else {
            // Cancel the xy term against P0.
            let f = &w[2] / &v[0];
            vec![
                w[0].clone(),
                w[1].clone(),
                field.zero(),
                &w[3] - &(&f * &v[1]),
                &w[4] - &(&f * &v[2]),
                &w[5] - &(&f * &v[3]),
            ]
        };
        if w[0].is_zero() && w[1].is_zero() {
            continue;
        }
        pt0 = Some(
            quad_from(
                &[(2, 0, w[0].clone()), (0, 2, w[1].clone()), (1, 0, w[3].clone()), (0, 1, w[4].clone()), (0, 0, w[5].clone())],
                &field,
            )
            .primitive()
            .1,
        );
        break;
    }
    let mobius = MobiusMap::new(-&v[1], -&v[3], v[0].clone(), v[2].clone()).ok();
    Ok(AuxOutcome::Degenerate {
        p0,
        pt0: pt0.unwrap_or_else(|| Poly2::zero(XY, &field)),
        mobius,
    })
}

/// `H0` and its degree report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Report {
    pub h0: Poly2,
    pub deg_x: u32,
    pub deg_y: u32,
}

impl H0Report {
    pub fn within_bound(&self) -> bool {
        self.deg_x <= 9 && self.deg_y <= 9
    }

    /// Coefficient of `x^9` as a polynomial in `y`.
    pub fn x9_coefficient(&self) -> Poly1 {
        self.h0
            .as_poly_in_x()
            .get(9)
            .cloned()
            .unwrap_or_else(|| Poly1::zero(Var::Y, self.h0.field()))
    }
}

/// `H0 = P³P̃³ - u (P̃P_x - PP̃_x) P̃³ ∏(x - a_ν) + v (P̃P_y - PP̃_y) P³ ∏(y - b_ν)`.
pub fn build_h0(
    aux: &AuxQuadratics,
    pairs: &SharedPairSpec,
    u: &FieldElem,
    v: &FieldElem,
) -> Result<H0Report> {
    let pts = four_pairs(pairs)?;
    let (p, pt) = (&aux.p, &aux.pt);
    for (a, b) in &pts {
        if !p.eval(a, b).is_zero() || !pt.eval(a, b).is_zero() {
            return Err(Error::Invalid(format!("P or P~ does not vanish at ({a}, {b})")));
        }
    }
    let field = spec_field(&pts)?.join(p.field())?.join(pt.field())?.join(u.field())?.join(v.field())?;
    let one = Poly2::constant(field.one(), XY, &field);
    let mut px = one.clone();
    let mut py = one;
    for (a, b) in &pts {
        px = &px * &(&Poly2::x(XY, &field) - &Poly2::constant(a.clone(), XY, &field));
        py = &py * &(&Poly2::y(XY, &field) - &Poly2::constant(b.clone(), XY, &field));
    }
    let p3 = p.pow(3);
    let pt3 = pt.pow(3);
    let wx = &(pt * &p.diff_x()) - &(p * &pt.diff_x());
    let wy = &(pt * &p.diff_y()) - &(p * &pt.diff_y());
    let h0 = &(&(&p3 * &pt3) - &(&(&wx * &pt3) * &px).scale(u)) + &(&(&wy * &p3) * &py).scale(v);
    Ok(H0Report {
        deg_x: h0.deg_x(),
        deg_y: h0.deg_y(),
        h0,
    })
}

/// Distinct leading exponents, sorted.
pub fn exponent_set(branches: &[BranchExpansion]) -> Vec<Rat> {
    let mut v: Vec<Rat> = branches.iter().map(|b| b.exponent.clone()).collect();
    v.sort();
    v.dedup();
    v
}
