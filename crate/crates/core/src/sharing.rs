//! Exact IM/CM sharing certificates for rational pairs `(Q, Q̃)`.
//!
//! A pair of values `(a, b)` is shared by `(Q∘h, Q̃∘h)` when the `a`-points
//! of `Q` and the `b`-points of `Q̃` coincide on the part of the sphere that
//! `h` can reach. Comparisons run on canonical squarefree divisors, so no
//! root is ever computed.

use crate::error::{Error, Result};
use crate::field::{Field, SpherePoint};
use crate::poly1::Poly1;
use crate::ratfunc::{mobius_relation, Divisor, MobiusMap, PointSet, RatFunc};
use serde_json::{json, Value};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SharedCm,
    SharedImNotCm,
    NotShared,
}

impl Verdict {
    pub fn is_shared(self) -> bool {
        self != Verdict::NotShared
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SharedCm => "shared-CM",
            Verdict::SharedImNotCm => "shared-IM-not-CM",
            Verdict::NotShared => "not-shared",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One pair of values with the claim that it is shared CM (`cm = true`) or IM.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub a: SpherePoint,
    pub b: SpherePoint,
    pub cm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedPairSpec {
    pairs: Vec<PairSpec>,
}

impl SharedPairSpec {
    /// Rejects repeated values on either side.
    pub fn new(pairs: Vec<PairSpec>) -> Result<Self> {
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[..i] {
                if p.a == q.a || p.b == q.b {
                    return Err(Error::Invalid(format!(
                        "pairs ({}, {}) and ({}, {}) repeat a value",
                        q.a, q.b, p.a, p.b
                    )));
                }
            }
        }
        Ok(SharedPairSpec { pairs })
    }

    pub fn pairs(&self) -> &[PairSpec] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Finite pairs as `(a, b)` values (pairs with an infinite side skipped).
    pub fn finite_pairs(&self) -> Vec<(crate::FieldElem, crate::FieldElem)> {
        self.pairs
            .iter()
            .filter_map(|p| Some((p.a.finite()?.clone(), p.b.finite()?.clone())))
            .collect()
    }

    /// Inverse of [`SharedPairSpec::from_json`].
    pub fn to_json(&self) -> Value {
        json!(self
            .pairs
            .iter()
            .map(|p| json!({"a": p.a.to_string(), "b": p.b.to_string(), "cm": p.cm}))
            .collect::<Vec<_>>())
    }

    /// Parses `[{"a": "...", "b": "...", "cm": bool}, ...]`; `"inf"` denotes ∞.
    pub fn from_json(v: &Value, field: &Field) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Invalid("pairs must be a JSON array".into()))?;
        let mut pairs = Vec::new();
        for item in arr {
            let (a, b, cm) = match item {
                Value::Object(o) => {
                    for k in o.keys() {
                        if !["a", "b", "cm"].contains(&k.as_str()) {
                            return Err(Error::Invalid(format!("unknown pair key '{k}'")));
                        }
                    }
                    let get = |k: &str| -> Result<String> {
                        match o.get(k) {
                            Some(Value::String(s)) => Ok(s.clone()),
                            Some(Value::Number(n)) => Ok(n.to_string()),
                            _ => Err(Error::Invalid(format!("pair entry needs string '{k}'"))),
                        }
                    };
                    let cm = match o.get("cm") {
                        None => false,
                        Some(Value::Bool(b)) => *b,
                        _ => return Err(Error::Invalid("'cm' must be boolean".into())),
                    };
                    (get("a")?, get("b")?, cm)
                }
                Value::Array(xs) if xs.len() == 2 => {
                    let s = |v: &Value| -> Result<String> {
                        match v {
                            Value::String(s) => Ok(s.clone()),
                            Value::Number(n) => Ok(n.to_string()),
                            _ => Err(Error::Invalid("pair values must be strings".into())),
                        }
                    };
                    (s(&xs[0])?, s(&xs[1])?, false)
                }
                _ => return Err(Error::Invalid("malformed pair entry".into())),
            };
            pairs.push(PairSpec {
                a: SpherePoint::parse(&a, field)?,
                b: SpherePoint::parse(&b, field)?,
                cm,
            });
        }
        SharedPairSpec::new(pairs)
    }
}

/// Evidence behind a verdict, all as point sets of the parameter sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    /// Points where both sides take their value.
    pub common: PointSet,
    /// Points where only `Q` takes `a`.
    pub only_q: PointSet,
    /// Points where only `Q̃` takes `b`.
    pub only_qt: PointSet,
    /// Common points with different multiplicities.
    pub mult_mismatch: PointSet,
}

impl Witnesses {
    pub fn to_json(&self) -> Value {
        json!({
            "common": self.common.to_json(),
            "only_q": self.only_q.to_json(),
            "only_qt": self.only_qt.to_json(),
            "multiplicity_mismatch": self.mult_mismatch.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub verdict: Verdict,
    /// Restricted divisors of `Q - a` and `Q̃ - b`.
    pub divisor_q: Divisor,
    pub divisor_qt: Divisor,
    pub witnesses: Witnesses,
}

fn set_difference(a: &PointSet, b: &PointSet) -> PointSet {
    let g = a.finite.gcd(&b.finite);
    PointSet {
        finite: a.finite.exact_div(&g).expect("gcd divides").monic(),
        infinity: a.infinity && !b.infinity,
    }
}

fn set_intersection(a: &PointSet, b: &PointSet) -> PointSet {
    PointSet {
        finite: a.finite.gcd(&b.finite),
        infinity: a.infinity && b.infinity,
    }
}

/// Common points where the multiplicities differ.
fn mismatch(d: &Divisor, e: &Divisor) -> PointSet {
    let var = d.support().finite.var();
    let field = d.support().finite.field().clone();
    let mut out = PointSet::empty(var, &field);
    for (m, f) in d.finite() {
        for (n, g) in e.finite() {
            if m != n {
                let h = f.gcd(g);
                if !h.is_constant() {
                    out = out.union(&PointSet {
                        finite: h,
                        infinity: false,
                    });
                }
            }
        }
    }
    if d.infinity() > 0 && e.infinity() > 0 && d.infinity() != e.infinity() {
        out.infinity = true;
    }
    out
}

fn check_inputs(q: &RatFunc, qt: &RatFunc) -> Result<Field> {
    if q.is_constant() || qt.is_constant() {
        return Err(Error::ConstantFunction);
    }
    if q.var() != qt.var() {
        return Err(Error::VarMismatch {
            expected: q.var().to_string(),
            found: qt.var().to_string(),
        });
    }
    q.field().join(qt.field())
}

fn check_value(v: &SpherePoint, field: &Field) -> Result<()> {
    if let SpherePoint::Finite(x) = v {
        if x.in_field(field).is_err() {
            return Err(Error::OutsideField(x.to_string()));
        }
    }
    Ok(())
}

/// Compares the divisors of `Q - a` and `Q̃ - b` off `punctures`.
pub fn check_pair(
    q: &RatFunc,
    qt: &RatFunc,
    a: &SpherePoint,
    b: &SpherePoint,
    punctures: &PointSet,
) -> Result<PairCheck> {
    let field = check_inputs(q, qt)?;
    check_value(a, &field)?;
    check_value(b, &field)?;
    let d = q.value_divisor(a)?.restrict(punctures);
    let e = qt.value_divisor(b)?.restrict(punctures);
    let (sd, se) = (d.support(), e.support());
    let witnesses = Witnesses {
        common: set_intersection(&sd, &se),
        only_q: set_difference(&sd, &se),
        only_qt: set_difference(&se, &sd),
        mult_mismatch: mismatch(&d, &e),
    };
    let verdict = if d == e {
        Verdict::SharedCm
    } else if sd == se {
        Verdict::SharedImNotCm
    } else {
        Verdict::NotShared
    };
    Ok(PairCheck {
        verdict,
        divisor_q: d,
        divisor_qt: e,
        witnesses,
    })
}

/// Points that must be removed from the parameter sphere for the pair to be
/// shared (IM, or CM when `cm`).
pub fn required_punctures(q: &RatFunc, qt: &RatFunc, pair: &PairSpec) -> Result<PointSet> {
    let field = check_inputs(q, qt)?;
    let d = q.value_divisor(&pair.a)?;
    let e = qt.value_divisor(&pair.b)?;
    let (sd, se) = (d.support(), e.support());
    let mut p = set_difference(&sd, &se).union(&set_difference(&se, &sd));
    if pair.cm {
        p = p.union(&mismatch(&d, &e));
    }
    Ok(PointSet {
        finite: p.finite.in_field(&field)?,
        infinity: p.infinity,
    })
}

/// One class of common points and its multiplicity pair `(p:q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternClass {
    pub p: u32,
    pub q: u32,
    pub points: PointSet,
}

impl PatternClass {
    pub fn size(&self) -> usize {
        self.points.count()
    }

    pub fn label(&self) -> String {
        format!("({}:{})", self.p, self.q)
    }
}

/// Multiplicity pattern of a shared pair, grouped as `(p:1)`, `(1:q)`,
/// `(1:1)`; any class with both entries above 1 is a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternReport {
    pub classes: Vec<PatternClass>,
    pub count_p1: usize,
    pub count_1q: usize,
    pub count_11: usize,
    pub p_values: Vec<u32>,
    pub q_values: Vec<u32>,
    pub violation: bool,
}

impl PatternReport {
    /// Distinct labels, e.g. `["(1:2)"]`.
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.classes.iter().map(PatternClass::label).collect();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "classes": self.classes.iter().map(|c| json!({
                "pattern": c.label(),
                "points": c.points.to_json(),
                "size": c.size(),
            })).collect::<Vec<_>>(),
            "count_p1": self.count_p1,
            "count_1q": self.count_1q,
            "count_11": self.count_11,
            "p": self.p_values,
            "q": self.q_values,
            "violation": self.violation,
        })
    }
}

/// Multiplicity pattern of a pair that is shared off `punctures`.
pub fn multiplicity_pattern(
    q: &RatFunc,
    qt: &RatFunc,
    a: &SpherePoint,
    b: &SpherePoint,
    punctures: &PointSet,
) -> Result<PatternReport> {
    let check = check_pair(q, qt, a, b, punctures)?;
    if !check.verdict.is_shared() {
        return Err(Error::Invalid(format!("pair ({a}, {b}) is not shared")));
    }
    let (d, e) = (&check.divisor_q, &check.divisor_qt);
    let mut classes = Vec::new();
    for (m, f) in d.finite() {
        for (n, g) in e.finite() {
            let h = f.gcd(g);
            if !h.is_constant() {
                classes.push(PatternClass {
                    p: *m,
                    q: *n,
                    points: PointSet {
                        finite: h,
                        infinity: false,
                    },
                });
            }
        }
    }
    if d.infinity() > 0 {
        let var = q.var();
        classes.push(PatternClass {
            p: d.infinity(),
            q: e.infinity(),
            points: PointSet {
                finite: Poly1::one(var, q.field()),
                infinity: true,
            },
        });
    }
    let mut rep = PatternReport {
        classes: Vec::new(),
        count_p1: 0,
        count_1q: 0,
        count_11: 0,
        p_values: Vec::new(),
        q_values: Vec::new(),
        violation: false,
    };
    for c in &classes {
        match (c.p, c.q) {
            (1, 1) => rep.count_11 += c.size(),
            (p, 1) => {
                rep.count_p1 += c.size();
                if !rep.p_values.contains(&p) {
                    rep.p_values.push(p);
                }
            }
            (1, q) => {
                rep.count_1q += c.size();
                if !rep.q_values.contains(&q) {
                    rep.q_values.push(q);
                }
            }
            _ => rep.violation = true,
        }
    }
    rep.classes = classes;
    Ok(rep)
}

/// Per-pair outcome inside a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub pair: PairSpec,
    pub verdict: Verdict,
    pub pattern: Option<PatternReport>,
    pub witnesses: Witnesses,
    pub required: PointSet,
}

impl PairResult {
    /// Shared, and CM whenever CM was claimed.
    pub fn meets_claim(&self) -> bool {
        match self.verdict {
            Verdict::SharedCm => true,
            Verdict::SharedImNotCm => !self.pair.cm,
            Verdict::NotShared => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharingCertificate {
    pub pairs: Vec<PairResult>,
    /// Minimal set of parameter points to remove, ∞ included when needed.
    pub punctures: PointSet,
    /// At most two punctures: realizable by `h = M∘exp∘φ`.
    pub feasible: bool,
    pub excluded_mobius: bool,
    pub mobius: Option<MobiusMap>,
}

impl SharingCertificate {
    /// Every claim holds and the puncture set is realizable.
    pub fn verified(&self) -> bool {
        self.feasible && self.pairs.iter().all(PairResult::meets_claim)
    }

    /// A Möbius map `M` with `{M(0), M(∞)}` covering the punctures, so that
    /// `h = M∘exp` omits exactly them; `None` if infeasible or the punctures
    /// are not field points.
    pub fn realization(&self) -> Option<MobiusMap> {
        if !self.feasible {
            return None;
        }
        let field = self.punctures.finite.field().clone();
        let pts = self.punctures.rational_points()?;
        let one = field.one();
        let zero = field.zero();
        let m = match pts.as_slice() {
            [] => MobiusMap::identity(&field),
            [SpherePoint::Infinity] => MobiusMap::identity(&field),
            [SpherePoint::Finite(p)] => MobiusMap::new(one.clone(), p.clone(), zero, one).ok()?,
            [SpherePoint::Finite(p), SpherePoint::Infinity] => {
                MobiusMap::new(one.clone(), p.clone(), zero, one).ok()?
            }
            [SpherePoint::Finite(p1), SpherePoint::Finite(p2)] => {
                MobiusMap::new(p2.clone(), p1.clone(), one.clone(), one).ok()?
            }
            _ => return None,
        };
        Some(m)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs.iter().map(|r| json!({
                "a": r.pair.a.to_string(),
                "b": r.pair.b.to_string(),
                "cm_claimed": r.pair.cm,
                "verdict": r.verdict.as_str(),
                "pattern": r.pattern.as_ref().map(PatternReport::to_json),
                "witnesses": r.witnesses.to_json(),
                "required_punctures": r.required.to_json(),
            })).collect::<Vec<_>>(),
            "punctures": self.punctures.to_json(),
            "puncture_count": self.punctures.count(),
            "feasible": self.feasible,
            "realization": self.realization().map(|m| m.to_string()),
            "excluded_mobius": self.excluded_mobius,
            "mobius": self.mobius.as_ref().map(|m| m.to_string()),
            "verified": self.verified(),
        })
    }
}

/// Certificate for every pair of `spec`, with the minimal joint puncture set.
pub fn sharing_certificate(
    q: &RatFunc,
    qt: &RatFunc,
    spec: &SharedPairSpec,
) -> Result<SharingCertificate> {
    let field = check_inputs(q, qt)?;
    if spec.is_empty() {
        return Err(Error::Invalid("no pairs given".into()));
    }
    let mut punctures = PointSet::empty(q.var(), &field);
    let mut required = Vec::new();
    for p in spec.pairs() {
        let r = required_punctures(q, qt, p)?;
        punctures = punctures.union(&r);
        required.push(r);
    }
    let mut pairs = Vec::new();
    for (p, req) in spec.pairs().iter().zip(required) {
        let check = check_pair(q, qt, &p.a, &p.b, &punctures)?;
        let pattern = if check.verdict.is_shared() {
            Some(multiplicity_pattern(q, qt, &p.a, &p.b, &punctures)?)
        } else {
            None
        };
        pairs.push(PairResult {
            pair: p.clone(),
            verdict: check.verdict,
            pattern,
            witnesses: check.witnesses,
            required: req,
        });
    }
    let mobius = mobius_relation(q, qt);
    Ok(SharingCertificate {
        feasible: punctures.count() <= 2,
        pairs,
        punctures,
        excluded_mobius: mobius.is_some(),
        mobius,
    })
}

/// True iff `Q̃ = M∘Q` for some Möbius map `M`.
pub fn mobius_relation_guard(q: &RatFunc, qt: &RatFunc) -> bool {
    mobius_relation(q, qt).is_some()
}
