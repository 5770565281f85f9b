//! Constraint systems for a curve `K = (x-a_λ)^s y^m + A(y-b_κ)^t x^n + tail`
//! passing through four pairs with all but one Taylor coefficient vanishing
//! in each direction, a damped Gauss–Newton solver, exact lifting and exact
//! verification.

use crate::curve::{fiber_check, shape_check, FiberResult, ShapeReport};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, SpherePoint};
use crate::linalg::{solve, Matrix};
use crate::numeric::lift_complex;
use crate::poly2::Poly2;
use crate::sharing::{PairSpec, SharedPairSpec};
use crate::var::Var;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

const XY: (Var, Var) = (Var::X, Var::Y);

/// `4(n + m - 1)`: per pair, `m` vanishing y-orders plus `n` x-orders, the
/// value itself counted once.
pub fn count_constraints(m: u32, n: u32) -> u32 {
    assert!(m >= 1 && n >= 1, "degrees must be positive");
    4 * (n + m - 1)
}

/// Sparse polynomial over a field in `nvars` numbered unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Vec<u32>, FieldElem>,
}

impl MPoly {
    pub fn zero(nvars: usize, field: &Field) -> Self {
        MPoly {
            nvars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem, nvars: usize) -> Self {
        let mut p = MPoly::zero(nvars, &c.field().clone());
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize, field: &Field) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars, field);
        p.terms.insert(e, field.one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<u32>, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, &self.field);
        }
        MPoly {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars, &self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = MPoly::constant(self.field.one(), self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn diff(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars, &self.field);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * &self.field.int(e[i] as i64));
            }
        }
        r
    }

    /// Unknowns that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, vals: &[FieldElem]) -> FieldElem {
        let mut s = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &vals[i].pow(k);
                }
            }
            s += &t;
        }
        s
    }

    /// Substitutes the given values, keeping the others symbolic.
    pub fn partial_eval(&self, vals: &[Option<FieldElem>]) -> MPoly {
        let mut r = MPoly::zero(self.nvars, &self.field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            let mut e2 = e.clone();
            for (i, &k) in e.iter().enumerate() {
                if let (Some(v), true) = (&vals[i], k > 0) {
                    t = &t * &v.pow(k);
                    e2[i] = 0;
                }
            }
            r.add_term(e2, t);
        }
        r
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            let cs = c.to_string();
            if idx > 0 {
                s.push('+');
            }
            if mono.is_empty() {
                s.push_str(&format!("({cs})"));
            } else if c.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                let _ = write!(s, "({cs})*{}", mono.join("*"));
            }
        }
        s
    }
}

/// Compiled form for fast complex evaluation.
#[derive(Clone, Debug)]
struct Compiled {
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
}

impl Compiled {
    fn new(p: &MPoly) -> Self {
        Compiled {
            terms: p
                .terms
                .iter()
                .map(|(e, c)| {
                    let vars = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (i, k))
                        .collect();
                    (c.to_c64(), vars)
                })
                .collect(),
        }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (c, vars)| {
            acc + vars.iter().fold(*c, |t, &(i, k)| t * z[i].powu(k))
        })
    }
}

/// Degrees, exponents and indices of the sought curve.
///
/// `lambda`, `kappa` are 0-based pair indices; `surviving_y[ν]` is the only
/// nonvanishing Taylor order of `K(a_ν, ·)` at `b_ν`, `surviving_x[ν]` that of
/// `K(·, b_ν)` at `a_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub m: u32,
    pub n: u32,
    pub s: u32,
    pub t: u32,
    pub lambda: usize,
    pub kappa: usize,
    pub surviving_y: [u32; 4],
    pub surviving_x: [u32; 4],
}

impl DegreeProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        if !(1..=9).contains(&self.m) || !(1..=9).contains(&self.n) {
            return bad(format!("need 1 <= m, n <= 9, got m = {}, n = {}", self.m, self.n));
        }
        if !(1..=4).contains(&self.s) || !(1..=4).contains(&self.t) {
            return bad(format!("need 1 <= s, t <= 4, got s = {}, t = {}", self.s, self.t));
        }
        if self.s > self.n || self.t > self.m {
            return bad(format!(
                "need s <= n and t <= m, got s = {}, t = {}, m = {}, n = {}",
                self.s, self.t, self.m, self.n
            ));
        }
        if self.s + self.m > 13 || self.t + self.n > 13 {
            return bad("head terms exceed total degree 13".into());
        }
        if self.lambda > 3 || self.kappa > 3 {
            return bad("pair indices must lie in 1..4".into());
        }
        for v in 0..4 {
            let (jy, jx) = (self.surviving_y[v], self.surviving_x[v]);
            if !(1..=self.m).contains(&jy) || !(1..=self.n).contains(&jx) {
                return bad(format!(
                    "inconsistent exemption indices at pair {}: y-order {jy}, x-order {jx}",
                    v + 1
                ));
            }
            // Away from a_λ the y^m coefficient (x - a_λ)^s is nonzero, so
            // the top order must survive there; likewise for x^n.
            if self.t < self.m && v != self.lambda && jy != self.m {
                return bad(format!(
                    "inconsistent exemption indices at pair {}: y-order {} must survive",
                    v + 1,
                    self.m
                ));
            }
            if self.s < self.n && v != self.kappa && jx != self.n {
                return bad(format!(
                    "inconsistent exemption indices at pair {}: x-order {} must survive",
                    v + 1,
                    self.n
                ));
            }
        }
        Ok(())
    }

    /// Reads the profile off a curve and four finite pairs.
    pub fn from_curve(k: &Poly2, pairs: &SharedPairSpec) -> Result<DegreeProfile> {
        if pairs.finite_pairs().len() != 4 {
            return Err(Error::Invalid("four finite pairs are required".into()));
        }
        let report = shape_check(k, pairs);
        let Some(shape) = &report.shape else {
            return Err(Error::Invalid(format!(
                "no (x-a)^s y^m + A (y-b)^t x^n form: {}",
                report.mismatches.join("; ")
            )));
        };
        if !report.conditions_ok() {
            return Err(Error::Invalid(format!(
                "derivative conditions fail: {}",
                report.mismatches.join("; ")
            )));
        }
        let sy: Vec<u32> = report.conditions.iter().map(|c| c.nonzero_y[0]).collect();
        let sx: Vec<u32> = report.conditions.iter().map(|c| c.nonzero_x[0]).collect();
        let p = DegreeProfile {
            m: report.m,
            n: report.n,
            s: shape.s,
            t: shape.t,
            lambda: shape.lambda,
            kappa: shape.kappa,
            surviving_y: [sy[0], sy[1], sy[2], sy[3]],
            surviving_x: [sx[0], sx[1], sx[2], sx[3]],
        };
        p.validate()?;
        Ok(p)
    }

    /// Tail monomials `x^j y^k`, `j < n`, `k < m`, `j + k <= 13`.
    pub fn tail_monomials(&self) -> Vec<(u32, u32)> {
        let mut v = Vec::new();
        for j in 0..self.n {
            for k in 0..self.m {
                if j + k <= 13 {
                    v.push((j, k));
                }
            }
        }
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m, "n": self.n, "s": self.s, "t": self.t,
            "lambda": self.lambda + 1, "kappa": self.kappa + 1,
            "surviving_y": self.surviving_y, "surviving_x": self.surviving_x,
        })
    }
}

pub fn tail_name(j: u32, k: u32) -> String {
    format!("c{j}{k}")
}

const PAIR_NAMES: [&str; 4] = ["a3", "b3", "a4", "b4"];

/// Whether tail coefficients are unknowns or fixed values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    Free,
    Fixed,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub field: Field,
    pub tail: TailMode,
    /// Fixed values by unknown name; in `Fixed` tail mode missing tail
    /// coefficients default to 0.
    pub fixed: BTreeMap<String, FieldElem>,
}

impl BuildOptions {
    pub fn new(field: &Field) -> Self {
        BuildOptions {
            field: field.clone(),
            tail: TailMode::Free,
            fixed: BTreeMap::new(),
        }
    }
}

/// One equation with a human-readable origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    pub poly: MPoly,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub profile: DegreeProfile,
    pub field: Field,
    pub unknowns: Vec<String>,
    pub fixed: BTreeMap<String, FieldElem>,
    pub equations: Vec<Equation>,
    /// `(j, k, coefficient)` of `x^j y^k` in `K`.
    k_terms: Vec<(u32, u32, MPoly)>,
    pairs: [(MPoly, MPoly); 4],
    /// Unknowns entering the equations linearly (`A` and tail coefficients).
    linear: Vec<bool>,
    /// Equations were shifted to vanish at a planted point.
    pub shifted: bool,
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Builds the Taylor-coefficient equations at the pairs `(0,0), (1,1),
/// (a3,b3), (a4,b4)`.
pub fn build_constraints(profile: &DegreeProfile, opts: &BuildOptions) -> Result<ConstraintSystem> {
    profile.validate()?;
    let field = opts.field.clone();
    let tails = profile.tail_monomials();
    let mut all: Vec<String> = PAIR_NAMES.iter().map(|s| s.to_string()).collect();
    all.push("A".into());
    all.extend(tails.iter().map(|&(j, k)| tail_name(j, k)));
    for name in opts.fixed.keys() {
        if !all.contains(name) {
            return Err(Error::Invalid(format!("unknown parameter {name}")));
        }
    }
    let is_fixed = |name: &String| {
        opts.fixed.contains_key(name) || (opts.tail == TailMode::Fixed && name.starts_with('c'))
    };
    let unknowns: Vec<String> = all.iter().filter(|n| !is_fixed(n)).cloned().collect();
    let nv = unknowns.len();
    let mut fixed = BTreeMap::new();
    for name in all.iter().filter(|n| is_fixed(n)) {
        let v = opts.fixed.get(name).cloned().unwrap_or_else(|| field.zero());
        fixed.insert(name.clone(), v.in_field(&field)?);
    }
    let sym = |name: &str| -> MPoly {
        match unknowns.iter().position(|u| u == name) {
            Some(i) => MPoly::var(i, nv, &field),
            None => MPoly::constant(fixed[name].clone(), nv),
        }
    };
    let cst = |c: FieldElem| MPoly::constant(c, nv);
    let pairs = [
        (cst(field.zero()), cst(field.zero())),
        (cst(field.one()), cst(field.one())),
        (sym("a3"), sym("b3")),
        (sym("a4"), sym("b4")),
    ];
    for i in 0..4 {
        for j in i + 1..4 {
            if (pairs[i].0 == pairs[j].0 && pairs[i].0.support().is_empty())
                || (pairs[i].1 == pairs[j].1 && pairs[i].1.support().is_empty())
            {
                return Err(Error::Invalid(format!(
                    "fixed pair values repeat between pairs {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let (m, n, s, t) = (profile.m, profile.n, profile.s, profile.t);
    let mut coeffs: BTreeMap<(u32, u32), MPoly> = BTreeMap::new();
    let mut put = |j: u32, k: u32, c: MPoly| {
        let e = coeffs.entry((j, k)).or_insert_with(|| MPoly::zero(nv, &field));
        *e = e.add(&c);
    };
    let neg_a = pairs[profile.lambda].0.scale(&-field.one());
    for i in 0..=s {
        put(i, m, neg_a.pow(s - i).scale(&field.int(binom(s, i))));
    }
    let a_sym = sym("A");
    let neg_b = pairs[profile.kappa].1.scale(&-field.one());
    for i in 0..=t {
        put(n, i, a_sym.mul(&neg_b.pow(t - i)).scale(&field.int(binom(t, i))));
    }
    for &(j, k) in &tails {
        put(j, k, sym(&tail_name(j, k)));
    }
    let k_terms: Vec<(u32, u32, MPoly)> = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j, k), c)| (j, k, c))
        .collect();
    let mut equations = Vec::new();
    for (nu, (a, b)) in pairs.iter().enumerate() {
        let apow: Vec<MPoly> = (0..=n).map(|e| a.pow(e)).collect();
        let bpow: Vec<MPoly> = (0..=m).map(|e| b.pow(e)).collect();
        // Taylor coefficient of order `ord` in y (dir = 0) or x (dir = 1).
        let taylor = |dir: u8, ord: u32| -> MPoly {
            let mut e = MPoly::zero(nv, &field);
            for (p, q, c) in &k_terms {
                let lead = if dir == 0 { *q } else { *p };
                if lead < ord {
                    continue;
                }
                let w = field.int(binom(lead, ord));
                let term = if dir == 0 {
                    c.mul(&apow[*p as usize]).mul(&bpow[(q - ord) as usize])
                } else {
                    c.mul(&apow[(p - ord) as usize]).mul(&bpow[*q as usize])
                };
                e = e.add(&term.scale(&w));
            }
            e
        };
        for j in 0..=m {
            if j != profile.surviving_y[nu] {
                equations.push(Equation {
                    label: format!("pair {}: y-order {j}", nu + 1),
                    poly: taylor(0, j),
                });
            }
        }
        for l in 1..=n {
            if l != profile.surviving_x[nu] {
                equations.push(Equation {
                    label: format!("pair {}: x-order {l}", nu + 1),
                    poly: taylor(1, l),
                });
            }
        }
    }
    let linear = unknowns
        .iter()
        .map(|u| u == "A" || u.starts_with('c'))
        .collect();
    Ok(ConstraintSystem {
        profile: profile.clone(),
        field,
        unknowns,
        fixed,
        equations,
        k_terms,
        pairs,
        linear,
        shifted: false,
    })
}

impl ConstraintSystem {
    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    /// Equations identically zero after fixing values carry no information
    /// and nonzero constants make the system inconsistent.
    pub fn is_overdetermined(&self) -> bool {
        self.num_equations() > self.num_unknowns()
    }

    /// First equation that is a nonzero constant, if any.
    pub fn inconsistent_equation(&self) -> Option<&Equation> {
        self.equations
            .iter()
            .find(|e| !e.poly.is_zero() && e.poly.support().is_empty())
    }

    /// `K` with the given values substituted.
    pub fn instantiate(&self, vals: &[FieldElem]) -> Poly2 {
        Poly2::from_terms(
            XY,
            &self.field,
            self.k_terms.iter().map(|(j, k, c)| ((*j, *k), c.eval(vals))),
        )
    }

    /// The four pairs with the given values substituted.
    pub fn pair_values(&self, vals: &[FieldElem]) -> Vec<(FieldElem, FieldElem)> {
        self.pairs
            .iter()
            .map(|(a, b)| (a.eval(vals), b.eval(vals)))
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u == name)
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "profile": self.profile.to_json(),
            "equations": self.num_equations(),
            "unknowns": self.unknowns,
            "fixed": self.fixed.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>(),
            "count_constraints": count_constraints(self.profile.m, self.profile.n),
            "overdetermined": self.is_overdetermined(),
            "inconsistent": self.inconsistent_equation().map(|e| e.label.clone()),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    /// Starts drawn around this point instead of the box `|re|, |im| <= 2`.
    pub center: Option<Vec<Complex64>>,
    /// Relative perturbation radius around `center`.
    pub radius: f64,
}

impl SearchOptions {
    pub fn new(starts: usize, seed: u64, tol: f64) -> Self {
        SearchOptions {
            starts,
            seed,
            tol,
            max_iter: 200,
            center: None,
            radius: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub assignment: Vec<Complex64>,
    /// `max |equation|` at the assignment.
    pub residual: f64,
    pub exact_lift: Option<Vec<FieldElem>>,
    pub lift_error: Option<String>,
    /// Residual norms never increased along the trajectory.
    pub monotone: bool,
    /// Coinciding pair coordinates or `A = 0`.
    pub degenerate: Option<String>,
}

impl Candidate {
    pub fn to_json(&self, names: &[String]) -> Value {
        json!({
            "residual": self.residual,
            "assignment": names.iter().zip(&self.assignment).map(|(n, z)| {
                (n.clone(), json!([z.re, z.im]))
            }).collect::<serde_json::Map<_, _>>(),
            "exact_lift": self.exact_lift.as_ref().map(|v| names.iter().zip(v).map(|(n, e)| {
                (n.clone(), json!(e.to_string()))
            }).collect::<serde_json::Map<_, _>>()),
            "lift_error": self.lift_error,
            "degenerate": self.degenerate,
        })
    }
}

struct Numeric {
    eqs: Vec<Compiled>,
    jac: Vec<(usize, usize, Compiled)>,
}

impl Numeric {
    fn new(sys: &ConstraintSystem) -> Self {
        let eqs = sys.equations.iter().map(|e| Compiled::new(&e.poly)).collect();
        let mut jac = Vec::new();
        for (r, e) in sys.equations.iter().enumerate() {
            for v in e.poly.support() {
                jac.push((r, v, Compiled::new(&e.poly.diff(v))));
            }
        }
        Numeric { eqs, jac }
    }

    fn residual(&self, z: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.eqs.len(), self.eqs.iter().map(|e| e.eval(z)))
    }

    fn jacobian(&self, z: &[Complex64], nv: usize) -> DMatrix<Complex64> {
        let mut j = DMatrix::zeros(self.eqs.len(), nv);
        for (r, v, p) in &self.jac {
            j[(*r, *v)] = p.eval(z);
        }
        j
    }
}

fn max_abs(r: &DVector<Complex64>) -> f64 {
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Levenberg–Marquardt from one start; every accepted step lowers `‖r‖₂`.
fn solve_from(num: &Numeric, nv: usize, mut z: Vec<Complex64>, max_iter: usize, tol: f64) -> (Vec<Complex64>, f64, bool) {
    let mut r = num.residual(&z);
    let mut norm = r.norm();
    let mut mu = 1e-3;
    let mut monotone = true;
    for _ in 0..max_iter {
        if max_abs(&r) < tol * 1e-3 || !norm.is_finite() {
            break;
        }
        let j = num.jacobian(&z, nv);
        let jh = j.adjoint();
        let g = &jh * &r;
        let h = &jh * &j;
        let mut accepted = false;
        while mu < 1e14 {
            let mut a = h.clone();
            for i in 0..nv {
                let d = a[(i, i)].re.max(1e-12);
                a[(i, i)] += Complex64::new(mu * d, 0.0);
            }
            let Some(ch) = a.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let step = ch.solve(&(-&g));
            let trial: Vec<Complex64> = z.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rt = num.residual(&trial);
            let nt = rt.norm();
            if nt.is_finite() && nt < norm {
                z = trial;
                r = rt;
                norm = nt;
                mu = (mu / 10.0).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    if !norm.is_finite() {
        monotone = false;
    }
    (z, max_abs(&r), monotone)
}

fn cmp_assign(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Why a numeric solution is degenerate: two pairs share a coordinate or
/// the `x^n` head vanishes.
pub fn degeneracy(sys: &ConstraintSystem, z: &[Complex64]) -> Option<String> {
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-6 * a.norm().max(1.0);
    let pts: Vec<(Complex64, Complex64)> = sys
        .pairs
        .iter()
        .map(|(a, b)| (Compiled::new(a).eval(z), Compiled::new(b).eval(z)))
        .collect();
    for i in 0..4 {
        for j in i + 1..4 {
            if close(pts[i].0, pts[j].0) {
                return Some(format!("a{} = a{}", i + 1, j + 1));
            }
            if close(pts[i].1, pts[j].1) {
                return Some(format!("b{} = b{}", i + 1, j + 1));
            }
        }
    }
    let a = match sys.index_of("A") {
        Some(i) => z[i],
        None => sys.fixed["A"].to_c64(),
    };
    (a.norm() <= 1e-8).then(|| "A = 0".to_string())
}

/// Damped Gauss–Newton from `starts` seeded complex starts; returns the
/// distinct solutions with residual below `tol`, sorted by residual and then
/// lexicographically. Deterministic for a fixed seed.
pub fn numeric_search(sys: &ConstraintSystem, opts: &SearchOptions) -> Result<Vec<Candidate>> {
    if !(opts.tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let nv = sys.num_unknowns();
    if let Some(e) = sys.inconsistent_equation() {
        log::debug!("inconsistent equation {}", e.label);
        return Ok(Vec::new());
    }
    if let Some(c) = &opts.center {
        if c.len() != nv {
            return Err(Error::Invalid(format!("center has {} entries, need {nv}", c.len())));
        }
    }
    let num = Numeric::new(sys);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: Vec<Candidate> = Vec::new();
    for _ in 0..opts.starts {
        let start: Vec<Complex64> = (0..nv)
            .map(|i| {
                let (re, im) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                match &opts.center {
                    Some(c) => {
                        let rad = opts.radius * c[i].norm().max(1.0);
                        c[i] + Complex64::new(re, im) * rad
                    }
                    None => Complex64::new(2.0 * re, 2.0 * im),
                }
            })
            .collect();
        let (z, res, monotone) = solve_from(&num, nv, start, opts.max_iter, opts.tol);
        if res >= opts.tol {
            continue;
        }
        let dup = found.iter().any(|c| {
            c.assignment
                .iter()
                .zip(&z)
                .all(|(a, b)| (a - b).norm() <= 1e-6 * a.norm().max(1.0))
        });
        if !dup {
            let degenerate = degeneracy(sys, &z);
            found.push(Candidate {
                assignment: z,
                residual: res,
                exact_lift: None,
                lift_error: None,
                degenerate,
                monotone,
            });
        }
    }
    found.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then_with(|| cmp_assign(&a.assignment, &b.assignment))
    });
    Ok(found)
}

/// Exact reconstruction: pair coordinates by bounded-height
/// rationalization, then `A` and the tail by exact linear solving (they
/// enter linearly). Falls back to rationalizing every unknown.
pub fn lift(sys: &ConstraintSystem, cand: &mut Candidate, max_den: u64) {
    match lift_values(sys, &cand.assignment, max_den) {
        Ok(v) => {
            cand.exact_lift = Some(v);
            cand.lift_error = None;
        }
        Err(e) => {
            cand.exact_lift = None;
            cand.lift_error = Some(e);
        }
    }
}

fn lift_values(sys: &ConstraintSystem, z: &[Complex64], max_den: u64) -> std::result::Result<Vec<FieldElem>, String> {
    let tol = 1e-8;
    let one = |i: usize| {
        lift_complex(z[i], &sys.field, max_den, tol)
            .ok_or_else(|| format!("no small-height value near {} = {}", sys.unknowns[i], z[i]))
    };
    let mut vals: Vec<Option<FieldElem>> = vec![None; z.len()];
    for i in 0..z.len() {
        if !sys.linear[i] {
            vals[i] = Some(one(i)?);
        }
    }
    let lin: Vec<usize> = (0..z.len()).filter(|&i| sys.linear[i]).collect();
    if let Some(sol) = solve_linear_part(sys, &vals, &lin) {
        for (k, &i) in lin.iter().enumerate() {
            let d = (sol[k].to_c64() - z[i]).norm();
            if d > 1e-6 * z[i].norm().max(1.0) {
                return Err(format!("exact value of {} differs from the numeric one", sys.unknowns[i]));
            }
            vals[i] = Some(sol[k].clone());
        }
    } else {
        for &i in &lin {
            vals[i] = Some(one(i)?);
        }
    }
    Ok(vals.into_iter().map(|v| v.expect("assigned")).collect())
}

/// Unique solution of the equations for the linear unknowns, given the rest.
fn solve_linear_part(sys: &ConstraintSystem, vals: &[Option<FieldElem>], lin: &[usize]) -> Option<Vec<FieldElem>> {
    if lin.is_empty() {
        return Some(Vec::new());
    }
    let f = &sys.field;
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    for e in &sys.equations {
        let p = e.poly.partial_eval(vals);
        if p.total_degree() > 1 {
            return None;
        }
        let mut row = vec![f.zero(); lin.len()];
        let mut c0 = f.zero();
        for (ex, c) in &p.terms {
            match ex.iter().position(|&k| k > 0) {
                None => c0 = c.clone(),
                Some(v) => row[lin.iter().position(|&l| l == v)?] = c.clone(),
            }
        }
        rows.push(row);
        rhs.push(-c0);
    }
    let mut probe = rows.clone();
    if crate::linalg::rref(&mut probe).len() < lin.len() {
        return None;
    }
    solve(&rows, &rhs)
}

/// Exact verification of a lifted candidate.
#[derive(Clone, Debug)]
pub struct Verification {
    pub first_violation: Option<String>,
    pub k: Poly2,
    pub fibers: std::result::Result<Vec<FiberResult>, String>,
    pub shape: ShapeReport,
}

impl Verification {
    pub fn equations_ok(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn fibers_ok(&self) -> bool {
        self.fibers.as_ref().is_ok_and(|v| v.iter().all(FiberResult::ok))
    }

    pub fn verified(&self) -> bool {
        self.equations_ok() && self.fibers_ok() && self.shape.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verified": self.verified(),
            "equations_ok": self.equations_ok(),
            "first_violation": self.first_violation,
            "K": self.k.to_string(),
            "fibers": match &self.fibers {
                Ok(v) => json!(v.iter().map(FiberResult::to_json).collect::<Vec<_>>()),
                Err(e) => json!({"error": e}),
            },
            "shape": self.shape.to_json(),
        })
    }
}

/// Substitutes the exact lift into every equation, then runs the fiber and
/// shape checks on the instantiated curve.
pub fn exact_verify(cand: &Candidate, sys: &ConstraintSystem) -> Result<Verification> {
    let vals = cand
        .exact_lift
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!(
            "candidate has no exact lift: {}",
            cand.lift_error.clone().unwrap_or_default()
        )))?;
    let first_violation = sys
        .equations
        .iter()
        .find(|e| !e.poly.eval(vals).is_zero())
        .map(|e| e.label.clone());
    let k = sys.instantiate(vals);
    let pts = sys.pair_values(vals);
    let spec = SharedPairSpec::new(
        pts.iter()
            .map(|(a, b)| PairSpec {
                a: SpherePoint::Finite(a.clone()),
                b: SpherePoint::Finite(b.clone()),
                cm: false,
            })
            .collect(),
    );
    let (fibers, shape) = match spec {
        Ok(spec) => (
            fiber_check(&k, &spec).map_err(|e| e.to_string()),
            shape_check(&k, &spec),
        ),
        Err(e) => {
            let msg = e.to_string();
            let dummy = SharedPairSpec::new(Vec::new()).expect("empty spec");
            (Err(msg), shape_check(&k, &dummy))
        }
    };
    Ok(Verification {
        first_violation,
        k,
        fibers,
        shape,
    })
}

/// A chosen exact point together with a system shifted to vanish there.
///
/// Nondegenerate exact solutions of the unshifted system are not known, so
/// the solver, the lift and the exact check are exercised on `E(z) - E(z*)`,
/// which keeps the structure, degrees and sparsity of the original equations.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub profile: DegreeProfile,
    pub field: Field,
    /// Every parameter by name.
    pub values: BTreeMap<String, FieldElem>,
}

/// Nonzero `p/q` with `|p/q| <= 1`, `q <= 3`.
fn small_rational(rng: &mut ChaCha8Rng, field: &Field) -> FieldElem {
    loop {
        let q = rng.gen_range(1i64..=3);
        let p = rng.gen_range(-q..=q);
        if p != 0 {
            return field.frac(p, q);
        }
    }
}

/// Seeded planted point: rationals of modulus at most 1 with denominators
/// at most 3; pair coordinates avoid `0, 1`.
pub fn plant(profile: &DegreeProfile, field: &Field, seed: u64) -> Result<PlantedInstance> {
    profile.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = BTreeMap::new();
    let mut a_used = vec![field.zero(), field.one()];
    let mut b_used = a_used.clone();
    for (i, name) in PAIR_NAMES.iter().enumerate() {
        let used = if i % 2 == 0 { &mut a_used } else { &mut b_used };
        let v = loop {
            let v = small_rational(&mut rng, field);
            if !used.contains(&v) {
                break v;
            }
        };
        used.push(v.clone());
        values.insert(name.to_string(), v);
    }
    values.insert("A".into(), small_rational(&mut rng, field));
    for (j, k) in profile.tail_monomials() {
        values.insert(tail_name(j, k), small_rational(&mut rng, field));
    }
    Ok(PlantedInstance {
        profile: profile.clone(),
        field: field.clone(),
        values,
    })
}

impl PlantedInstance {
    /// A square system in `a3, b3, a4, b4` plus linear unknowns chosen so the
    /// Jacobian at the planted point has full column rank, shifted to vanish
    /// there; every other parameter is fixed to its planted value.
    pub fn recovery_system(&self) -> Result<ConstraintSystem> {
        let mut opts = BuildOptions::new(&self.field);
        let full = build_constraints(&self.profile, &opts)?;
        let vals: Vec<FieldElem> = full.unknowns.iter().map(|u| self.values[u].clone()).collect();
        let cols: Vec<Vec<FieldElem>> = (0..full.num_unknowns())
            .map(|v| full.equations.iter().map(|e| e.poly.diff(v).eval(&vals)).collect())
            .collect();
        let mut basis: Vec<(usize, Vec<FieldElem>)> = Vec::new();
        let mut chosen = Vec::new();
        for v in 0..full.num_unknowns() {
            if basis.len() == full.num_equations() {
                break;
            }
            if let Some(r) = reduce_against(&basis, &cols[v]) {
                basis.push(r);
                chosen.push(v);
            } else if v < 4 {
                return Err(Error::Degenerate(format!(
                    "pair coordinate {} is not locally determined",
                    full.unknowns[v]
                )));
            }
        }
        for (i, name) in full.unknowns.iter().enumerate() {
            if !chosen.contains(&i) {
                opts.fixed.insert(name.clone(), self.values[name].clone());
            }
        }
        let mut sys = build_constraints(&self.profile, &opts)?;
        let point = self.assignment(&sys);
        for e in &mut sys.equations {
            let c = e.poly.eval(&point);
            e.poly = e.poly.sub(&MPoly::constant(c, sys.unknowns.len()));
            e.label.push_str(" (shifted)");
        }
        sys.shifted = true;
        Ok(sys)
    }

    pub fn assignment(&self, sys: &ConstraintSystem) -> Vec<FieldElem> {
        sys.unknowns.iter().map(|u| self.values[u].clone()).collect()
    }
}


/// Gaussian reduction of `v` against echelon vectors; `None` if dependent.
fn reduce_against(basis: &[(usize, Vec<FieldElem>)], v: &[FieldElem]) -> Option<(usize, Vec<FieldElem>)> {
    let mut v = v.to_vec();
    for (p, b) in basis {
        if !v[*p].is_zero() {
            let f = &v[*p] / &b[*p];
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &(&f * y);
            }
        }
    }
    let p = v.iter().position(|x| !x.is_zero())?;
    Some((p, v))
}

/// Outcome of one plant-and-recover run.
#[derive(Clone, Debug)]
pub struct RecoveryRun {
    pub seed: u64,
    pub residual: Option<f64>,
    pub recovered: bool,
    pub verified: bool,
    pub seconds: f64,
}

/// Perturbs the planted unknowns, solves, lifts and verifies exactly.
pub fn plant_and_recover(inst: &PlantedInstance, sys: &ConstraintSystem, seed: u64, starts: usize, radius: f64) -> Result<RecoveryRun> {
    let clock = std::time::Instant::now();
    let truth = inst.assignment(sys);
    let mut opts = SearchOptions::new(starts, seed, 1e-10);
    opts.center = Some(truth.iter().map(FieldElem::to_c64).collect());
    opts.radius = radius;
    let cands = numeric_search(sys, &opts)?;
    let mut run = RecoveryRun {
        seed,
        residual: cands.first().map(|c| c.residual),
        recovered: false,
        verified: false,
        seconds: 0.0,
    };
    for mut c in cands {
        lift(sys, &mut c, 1_000_000);
        if c.exact_lift.as_ref() == Some(&truth) {
            run.recovered = true;
            let v = exact_verify(&c, sys)?;
            // A shifted system certifies the equations only; its curve is
            // not expected to satisfy the fiber conditions.
            run.verified = if sys.shifted { v.equations_ok() } else { v.verified() };
            run.residual = Some(c.residual);
            break;
        }
    }
    run.seconds = clock.elapsed().as_secs_f64();
    Ok(run)
}

/// The default planted profile: `m = n = 9`, `s = t = 2`, head at pair 3.
pub fn default_plant_profile() -> DegreeProfile {
    DegreeProfile {
        m: 9,
        n: 9,
        s: 2,
        t: 2,
        lambda: 2,
        kappa: 3,
        surviving_y: [9, 9, 2, 9],
        surviving_x: [9, 9, 9, 3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> DegreeProfile {
        DegreeProfile {
            m: 2,
            n: 2,
            s: 1,
            t: 1,
            lambda: 2,
            kappa: 3,
            surviving_y: [2, 2, 1, 2],
            surviving_x: [2, 2, 2, 1],
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_constraints(9, 9), 68);
        assert_eq!(count_constraints(1, 1), 4);
        assert_eq!(count_constraints(2, 2), 12);
        let sys = build_constraints(&small(), &BuildOptions::new(&Field::rationals())).unwrap();
        assert_eq!(sys.num_equations(), 12);
        assert_eq!(sys.num_unknowns(), 9);
    }

    #[test]
    fn invalid_exemption() {
        let mut p = small();
        p.surviving_y[0] = 3;
        assert!(p.validate().is_err());
        p.surviving_y[0] = 1;
        assert!(build_constraints(&p, &BuildOptions::new(&Field::rationals())).is_err());
        p = small();
        p.s = 0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn fixed_zero_tail_is_overdetermined() {
        let mut o = BuildOptions::new(&Field::rationals());
        o.tail = TailMode::Fixed;
        let sys = build_constraints(&small(), &o).unwrap();
        assert!(sys.is_overdetermined());
        assert_eq!(sys.num_unknowns(), 5);
        let c = numeric_search(&sys, &SearchOptions::new(20, 7, 1e-10)).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn mpoly_display() {
        let f = Field::rationals();
        let x = MPoly::var(0, 2, &f);
        let y = MPoly::var(1, 2, &f);
        let p = x.mul(&x).add(&y.scale(&f.int(-3)));
        assert_eq!(p.to_string_with(&["u".into(), "v".into()]), "u^2+(-3)*v");
        assert_eq!(p.diff(0).total_degree(), 1);
    }
}
