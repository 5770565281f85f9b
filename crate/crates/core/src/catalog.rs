//! Classical instances: Gundersen's pair, the circle, the conic family, the
//! cubic `H(u, y)` over the Eisenstein field, and the sextic with
//! alternating multiplicities.

use crate::field::{Field, FieldElem, Rat, SpherePoint};
use crate::parse::{parse_poly2, parse_ratfunc};
use crate::poly1::Poly1;
use crate::poly2::Poly2;
use crate::ratfunc::{MobiusMap, RatFunc};
use crate::sharing::{PairSpec, SharedPairSpec};
use crate::var::Var;

fn rf(text: &str, var: Var, field: &Field) -> RatFunc {
    parse_ratfunc(text, var, field).expect("catalog expression")
}

fn pt(field: &Field, n: i64, d: i64) -> SpherePoint {
    SpherePoint::Finite(field.frac(n, d))
}

/// `Q̂ = (w+1)/(w-1)²`, `Q̃̂ = (w+1)²/(8(w-1))`.
pub fn gundersen() -> (RatFunc, RatFunc) {
    let f = Field::rationals();
    (
        rf("(w+1)/(w-1)^2", Var::W, &f),
        rf("(w+1)^2/(8*(w-1))", Var::W, &f),
    )
}

/// Values `0, 1, -1/8, ∞` shared IM and `(-1/2, 1/4)` CM.
pub fn gundersen_pairs() -> SharedPairSpec {
    let f = Field::rationals();
    let im = |a: SpherePoint| PairSpec {
        a: a.clone(),
        b: a,
        cm: false,
    };
    SharedPairSpec::new(vec![
        im(pt(&f, 0, 1)),
        im(pt(&f, 1, 1)),
        im(pt(&f, -1, 8)),
        im(SpherePoint::Infinity),
        PairSpec {
            a: pt(&f, -1, 2),
            b: pt(&f, 1, 4),
            cm: true,
        },
    ])
    .expect("distinct values")
}

/// Möbius maps sending the CM pair `(-1/2, 1/4)` to `(∞, ∞)`.
pub fn gundersen_normalizers() -> (MobiusMap, MobiusMap) {
    let f = Field::rationals();
    (
        MobiusMap::new(f.zero(), f.one(), f.one(), f.frac(1, 2)).expect("invertible"),
        MobiusMap::new(f.zero(), f.one(), f.one(), f.frac(-1, 4)).expect("invertible"),
    )
}

/// The pair after normalization: `∞` is shared CM and four finite pairs IM.
pub fn gundersen_normalized() -> (RatFunc, RatFunc, SharedPairSpec) {
    let (q, qt) = gundersen();
    let (m, mt) = gundersen_normalizers();
    let base = gundersen_pairs();
    let pairs = base
        .pairs()
        .iter()
        .map(|p| PairSpec {
            a: m.apply_point(&p.a),
            b: mt.apply_point(&p.b),
            cm: p.cm,
        })
        .collect();
    (
        m.apply(&q),
        mt.apply(&qt),
        SharedPairSpec::new(pairs).expect("distinct values"),
    )
}

/// `Q = (1-t²)/(1+t²)`, `Q̃ = 2t/(1+t²)`.
pub fn circle() -> (RatFunc, RatFunc) {
    let f = Field::rationals();
    (
        rf("(1-t^2)/(1+t^2)", Var::T, &f),
        rf("2*t/(1+t^2)", Var::T, &f),
    )
}

/// `Q = 8/(4+2ct+t²)`, `Q̃ = 8t/(4+2ct+t²)`.
pub fn conic_pair(c: &FieldElem) -> (RatFunc, RatFunc) {
    let f = c.field().clone();
    let den = Poly1::new(Var::T, &f, vec![f.int(4), &f.int(2) * c, f.one()]);
    let eight = Poly1::constant(f.int(8), Var::T, &f);
    let t8 = Poly1::monomial(f.int(8), 1, Var::T, &f);
    (
        RatFunc::new(eight, den.clone()).expect("nonzero denominator"),
        RatFunc::new(t8, den).expect("nonzero denominator"),
    )
}

/// `4x² + 2cxy + y² - 8x`.
pub fn conic(c: &FieldElem) -> Poly2 {
    let f = c.field().clone();
    let xy = (Var::X, Var::Y);
    Poly2::from_terms(
        xy,
        &f,
        [
            ((2, 0), f.int(4)),
            ((1, 1), &f.int(2) * c),
            ((0, 2), f.one()),
            ((1, 0), f.int(-8)),
        ],
    )
}

/// Published pairs of the conic family together with `∞` CM:
/// `(0,0), (8/(4-c²), -8c/(4-c²)), (2/(2+c), 4/(2+c)), (2/(2-c), -4/(2-c))`.
pub fn conic_pairs(c: &FieldElem) -> SharedPairSpec {
    let f = c.field().clone();
    let fin = |x: FieldElem| SpherePoint::Finite(x);
    let q = |n: &FieldElem, d: &FieldElem| n.checked_div(d).expect("c ≠ ±2");
    let four_c2 = &f.int(4) - &(c * c);
    let p2 = &f.int(2) + c;
    let m2 = &f.int(2) - c;
    let im = |a: FieldElem, b: FieldElem| PairSpec {
        a: fin(a),
        b: fin(b),
        cm: false,
    };
    SharedPairSpec::new(vec![
        im(f.zero(), f.zero()),
        im(q(&f.int(8), &four_c2), q(&-(&f.int(8) * c), &four_c2)),
        im(q(&f.int(2), &p2), q(&f.int(4), &p2)),
        im(q(&f.int(2), &m2), q(&f.int(-4), &m2)),
        PairSpec {
            a: SpherePoint::Infinity,
            b: SpherePoint::Infinity,
            cm: true,
        },
    ])
    .expect("distinct values")
}

/// Parameter points excluded for the conic family: `0, -4/c, -2-2c, 2-2c`.
pub fn conic_expected_punctures(c: &FieldElem) -> Vec<FieldElem> {
    let f = c.field().clone();
    let two_c = &f.int(2) * c;
    let mut v = vec![
        f.zero(),
        f.int(-4).checked_div(c).expect("c ≠ 0"),
        &f.int(-2) - &two_c,
        &f.int(2) - &two_c,
    ];
    v.dedup();
    v
}

/// `ω` with `ω² + ω + 1 = 0`, i.e. `-1/2 + (i/2)√3`.
pub fn omega() -> FieldElem {
    Field::eisenstein().generator().expect("quadratic field")
}

/// `H(u, y) = y³ - 3((ā-1)u² - 2u)y² - 3(2u² - (a-1)u)y - u³` with `a = ω`.
pub fn cubic_h() -> Poly2 {
    parse_poly2(
        "y^3-3*((-2-a)*u^2-2*u)*y^2-3*(2*u^2-(a-1)*u)*y-u^3",
        (Var::U, Var::Y),
        &Field::eisenstein(),
    )
    .expect("catalog expression")
}

/// `R̃(t) = 3(a-1) t(1+t)²/(1+3t)²`.
pub fn cubic_r_tilde() -> RatFunc {
    rf("3*(a-1)*t*(1+t)^2/(1+3*t)^2", Var::T, &Field::eisenstein())
}

/// `R(t) = 3(a-1) t²(1+t)/(1+3t)`.
pub fn cubic_r() -> RatFunc {
    rf("3*(a-1)*t^2*(1+t)/(1+3*t)", Var::T, &Field::eisenstein())
}

/// Published leading coefficient `i√3/243 = (2ω+1)/243` of the quartic branches.
pub fn cubic_branch_coefficient() -> FieldElem {
    let f = Field::eisenstein();
    let w = omega();
    &(&(&w * &f.int(2)) + &f.one()) * &f.frac(1, 243)
}

/// `(y-x)⁴ - 16xy(x²-1)(y²-1)`.
pub fn sextic() -> Poly2 {
    parse_poly2(
        "(y-x)^4-16*x*y*(x^2-1)*(y^2-1)",
        (Var::X, Var::Y),
        &Field::rationals(),
    )
    .expect("catalog expression")
}

/// Values `0, 1, -1, ∞` shared by the sextic's parameterizations.
pub fn sextic_pairs() -> SharedPairSpec {
    let f = Field::rationals();
    let im = |a: SpherePoint| PairSpec {
        a: a.clone(),
        b: a,
        cm: false,
    };
    SharedPairSpec::new(vec![
        im(pt(&f, 0, 1)),
        im(pt(&f, 1, 1)),
        im(pt(&f, -1, 1)),
        im(SpherePoint::Infinity),
    ])
    .expect("distinct values")
}

/// Rational `c` as a field element.
pub fn rational(n: i64, d: i64) -> FieldElem {
    FieldElem::from_rat(Rat::new(n.into(), d.into()), &Field::rationals())
}
