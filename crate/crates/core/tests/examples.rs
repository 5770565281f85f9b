use pairshare::catalog::*;
use pairshare::curve::{exponent_set, fiber_check, implicitize, on_curve, puiseux_branches, resultant_pair};
use pairshare::field::rat;
use pairshare::parse::parse_poly2;
use pairshare::sharing::{check_pair, multiplicity_pattern, sharing_certificate, Verdict};
use pairshare::{Field, FieldElem, PointSet, Poly1, SpherePoint, Var};

fn fin(x: FieldElem) -> SpherePoint {
    SpherePoint::Finite(x)
}

fn points(s: &PointSet) -> Vec<SpherePoint> {
    let mut v = s.rational_points().expect("rational punctures");
    v.sort_by_key(|p| p.to_string());
    v
}

fn q_points(vals: &[(i64, i64)], inf: bool) -> Vec<SpherePoint> {
    let f = Field::rationals();
    let mut v: Vec<SpherePoint> = vals.iter().map(|&(n, d)| fin(f.frac(n, d))).collect();
    if inf {
        v.push(SpherePoint::Infinity);
    }
    v.sort_by_key(|p| p.to_string());
    v
}

#[test]
fn gundersen_patterns() {
    let (q, qt) = gundersen();
    let cert = sharing_certificate(&q, &qt, &gundersen_pairs()).unwrap();
    assert!(cert.verified());
    assert!(!cert.excluded_mobius);
    assert_eq!(points(&cert.punctures), q_points(&[(0, 1)], true));
    let labels: Vec<Vec<String>> = cert
        .pairs
        .iter()
        .map(|p| p.pattern.as_ref().unwrap().labels())
        .collect();
    assert_eq!(labels[0], ["(1:2)"]);
    assert_eq!(labels[1], ["(1:2)"]);
    assert_eq!(labels[2], ["(2:1)"]);
    assert_eq!(labels[3], ["(2:1)"]);
    let cm = &cert.pairs[4];
    assert_eq!(cm.verdict, Verdict::SharedCm);
    let w = Field::rationals();
    assert_eq!(cm.witnesses.common.finite, Poly1::from_i64(Var::W, &w, &[3, 0, 1]));
}

#[test]
fn gundersen_curve_is_proper() {
    let (q, qt) = gundersen();
    let model = implicitize(&q, &qt).unwrap();
    assert!(model.is_proper());
    assert!(on_curve(&model.k, &q, &qt).unwrap());
}

#[test]
fn conic_c1_and_cminus1_feasible() {
    for (c, expect) in [(1, [(0, 1), (-4, 1)]), (-1, [(0, 1), (4, 1)])] {
        let c = rational(c, 1);
        let (q, qt) = conic_pair(&c);
        let cert = sharing_certificate(&q, &qt, &conic_pairs(&c)).unwrap();
        assert!(cert.verified(), "c = {c}");
        assert_eq!(points(&cert.punctures), q_points(&expect, false));
        assert!(cert.realization().is_some());
    }
}

#[test]
fn conic_c1_pairs_match_table() {
    let c = rational(1, 1);
    let f = Field::rationals();
    let spec = conic_pairs(&c);
    let got: Vec<(SpherePoint, SpherePoint)> = spec.pairs().iter().map(|p| (p.a.clone(), p.b.clone())).collect();
    let want = vec![
        (fin(f.zero()), fin(f.zero())),
        (fin(f.frac(8, 3)), fin(f.frac(-8, 3))),
        (fin(f.frac(2, 3)), fin(f.frac(4, 3))),
        (fin(f.int(2)), fin(f.int(-4))),
        (SpherePoint::Infinity, SpherePoint::Infinity),
    ];
    assert_eq!(got, want);
}

#[test]
fn conic_c3_infeasible() {
    let c = rational(3, 1);
    let (q, qt) = conic_pair(&c);
    let cert = sharing_certificate(&q, &qt, &conic_pairs(&c)).unwrap();
    assert!(!cert.feasible);
    assert_eq!(cert.punctures.count(), 4);
    assert_eq!(points(&cert.punctures), q_points(&[(0, 1), (-4, 3), (-8, 1), (-4, 1)], false));
    let expected_pts: Vec<SpherePoint> = conic_expected_punctures(&c).into_iter().map(fin).collect();
    for p in &expected_pts {
        assert!(cert.punctures.contains(p));
    }
}

#[test]
fn conic_c3_critical_values() {
    let c = rational(3, 1);
    let f = Field::rationals();
    let (q, qt) = conic_pair(&c);
    let cv = q.critical_values();
    assert_eq!(cv.poly.deg(), 2);
    assert!(cv.contains(&fin(f.zero())));
    assert!(cv.contains(&fin(f.frac(-8, 5))));
    let cvt = qt.critical_values();
    assert_eq!(cvt.poly.deg(), 2);
    assert!(cvt.contains(&fin(f.frac(4, 5))));
    assert!(cvt.contains(&fin(f.int(4))));
    // Simple poles for c ≠ ±2.
    assert!(q.den().gcd(&q.den().derivative()).is_constant());
}

#[test]
fn conic_implicitizes_to_quadric() {
    for c in [1, 3, -1] {
        let c = rational(c, 1);
        let (q, qt) = conic_pair(&c);
        let model = implicitize(&q, &qt).unwrap();
        assert!(model.is_proper());
        assert_eq!(model.k, conic(&c).primitive().1);
    }
}

#[test]
fn circle_implicitizes() {
    let (q, qt) = circle();
    let model = implicitize(&q, &qt).unwrap();
    let f = Field::rationals();
    let want = parse_poly2("x^2+y^2-1", (Var::X, Var::Y), &f).unwrap();
    assert_eq!(model.k, want);
    assert!(model.is_proper());
}

#[test]
fn cubic_parameterization_on_h() {
    let h = cubic_h().with_vars((Var::X, Var::Y));
    assert!(on_curve(&h, &cubic_r_tilde(), &cubic_r()).unwrap());
}

#[test]
fn cubic_branches_at_origin() {
    let h = cubic_h();
    let z = Field::eisenstein().zero();
    let br = puiseux_branches(&h, (&z, &z), 3).unwrap();
    assert_eq!(exponent_set(&br), vec![rat(1, 2), rat(2, 1)]);
}

fn ex2_curve() -> pairshare::Poly2 {
    let rp = resultant_pair(&cubic_h(), Var::U, true).unwrap();
    assert_eq!(rp.diagonal_power, 3);
    rp.selected().expect("flagged factor").k
}

fn assert_fiber(k: &pairshare::Poly2, x0: &FieldElem, y0: &FieldElem, e: usize) {
    let fiber = k.subs_x(x0);
    let lin = Poly1::linear_root(y0, fiber.var(), fiber.field());
    let power = lin.pow(e as u32).scale(&fiber.lc());
    assert_eq!(fiber, power, "fiber at x = {x0}");
}

#[test]
fn ex2_fibers() {
    let k = ex2_curve();
    let f = Field::eisenstein();
    assert_eq!((k.deg_x(), k.deg_y()), (6, 6));
    assert_fiber(&k, &f.zero(), &f.zero(), 6);
    assert_fiber(&k, &f.one(), &f.one(), 6);
    let a = omega();
    assert_fiber(&k, &-&a, &-&a, 6);
}

#[test]
fn ex2_branch_exponents() {
    let k = ex2_curve();
    let z = Field::eisenstein().zero();
    let br = puiseux_branches(&k, (&z, &z), 2).unwrap();
    assert_eq!(exponent_set(&br), vec![rat(1, 4), rat(1, 1), rat(4, 1)]);
    let four = br.iter().find(|b| b.exponent == rat(4, 1)).unwrap();
    let lead = four.leading().unwrap().clone();
    // Exact value; its magnitude matches √3/243 either way the sign falls.
    assert_eq!(&lead * &lead, cubic_branch_coefficient().pow(2));
}

#[test]
fn sextic_fibers_and_patterns() {
    let k = sextic();
    let fibers = fiber_check(&k, &sextic_pairs()).unwrap();
    for r in &fibers {
        assert!(r.ok(), "fiber at {} not monomial", r.a);
    }
    let exps: Vec<(Option<u32>, Option<u32>)> =
        fibers.iter().map(|r| (r.over_a.exponent, r.over_b.exponent)).collect();
    // The multiplicities alternate between the two sides.
    for (x, y) in &exps {
        let (x, y) = (x.unwrap(), y.unwrap());
        assert!(x == 1 || y == 1 || (x, y) == (4, 4), "{x}:{y}");
    }
    let f = Field::rationals();
    assert_fiber(&k, &f.zero(), &f.zero(), 4);
}

#[test]
fn sextic_parameter_free_patterns() {
    let k = sextic();
    let f = Field::rationals();
    // Along y = 0 the curve meets x = 0 with order 4 and the lines x = ±1 with order 1.
    let along = k.subs_y(&f.zero());
    assert_eq!(along, Poly1::from_i64(Var::X, &f, &[0, 0, 0, 0, 1]));
}

#[test]
fn gundersen_pattern_direct() {
    let (q, qt) = gundersen();
    let f = Field::rationals();
    let none = PointSet::from_points(&[fin(f.zero()), SpherePoint::Infinity], Var::W, &f);
    let rep = multiplicity_pattern(&q, &qt, &fin(f.zero()), &fin(f.zero()), &none).unwrap();
    assert_eq!(rep.count_1q, 1);
    assert!(!rep.violation);
    let raw = check_pair(&q, &qt, &fin(f.zero()), &fin(f.zero()), &PointSet::empty(Var::W, &f)).unwrap();
    assert_eq!(raw.verdict, Verdict::NotShared);
}
