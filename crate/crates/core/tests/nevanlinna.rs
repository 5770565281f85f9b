use pairshare::catalog::{gundersen_normalized, rational};
use pairshare::curve::{aux_quadratics, AuxOutcome};
use pairshare::nevanlinna::{characteristic, counting, milestone_report, proximity, ExpFunc};
use pairshare::parse::parse_ratfunc;
use pairshare::{Field, SpherePoint, Var};
use std::f64::consts::PI;

fn exp_of(text: &str) -> ExpFunc {
    ExpFunc::new(parse_ratfunc(text, Var::W, &Field::rationals()).unwrap()).unwrap()
}

#[test]
fn exponential_proximity_is_r_over_pi() {
    let f = exp_of("w");
    for r in [10.0, 20.0, 40.0] {
        let m = proximity(&f, r, 256).unwrap();
        assert!((m.value - r / PI).abs() < 1e-6, "r = {r}: {}", m.value);
        let n = counting(&f, &SpherePoint::Infinity, r).unwrap();
        assert_eq!(n.n, 0.0);
    }
}

#[test]
fn counting_matches_explicit_sum() {
    // Zeros of e^z - 1 are 2πik.
    let f = exp_of("w-1");
    let r = 20.0;
    let zero = SpherePoint::Finite(Field::rationals().zero());
    let c = counting(&f, &zero, r).unwrap();
    let mut want = r.ln();
    let mut k = 1.0;
    while 2.0 * PI * k <= r {
        want += 2.0 * (r / (2.0 * PI * k)).ln();
        k += 1.0;
    }
    assert!((c.n - want).abs() < 1e-12);
    assert_eq!(c.n1, 0.0);
}

#[test]
fn double_points_are_excess() {
    let f = exp_of("(w-2)^2/(w+3)");
    let zero = SpherePoint::Finite(rational(0, 1));
    let c = counting(&f, &zero, 30.0).unwrap();
    assert!((c.n - 2.0 * c.nbar).abs() < 1e-12);
}

#[test]
fn characteristic_grows_like_degree() {
    let r = 40.0;
    for (text, d) in [
        ("w", 1.0),
        ("(w+1)/(w-1)^2", 2.0),
        ("w^3/(w^2+2)", 3.0),
        ("(w^3+1)/(w-2)", 3.0),
    ] {
        let t = characteristic(&exp_of(text), r, 256).unwrap();
        let ratio = t / (r / PI);
        assert!((ratio - d).abs() / d < 0.02, "{text}: {ratio}");
    }
}

#[test]
fn pole_on_the_circle_is_rejected() {
    let f = exp_of("1/(w-1)");
    assert!(proximity(&f, 2.0 * PI, 64).is_err());
}

#[test]
fn gundersen_milestone_table() {
    let (q, qt, spec) = gundersen_normalized();
    let p = match aux_quadratics(&spec).unwrap() {
        AuxOutcome::Basis(b) => b.p,
        AuxOutcome::Degenerate { p0, .. } => p0,
    };
    let rep = milestone_report(&q, &qt, &spec, &p, &[10.0, 20.0, 40.0], 256).unwrap();
    assert_eq!(rep.rows.len(), 3);
    assert!(rep.decreasing().iter().all(|&d| d), "{:?}", rep.to_tsv());
    assert!(rep.rows[2].res_iv < 0.05);
    for row in &rep.rows {
        assert!(row.t > 0.0 && row.ratio > 0.0);
    }
}

#[test]
fn zero_near_the_circle_is_integrated() {
    // A zero of Q(e^z) lies about 0.08 inside |z| = r; log⁺|1/f| spikes there.
    let f = exp_of("-5+2*w-w^2/3");
    let g = f.reciprocal().unwrap();
    let r = 19.663945497346017;
    let coarse = proximity(&g, r, 64).unwrap().value;
    let fine = proximity(&g, r, 8192).unwrap().value;
    assert!(coarse > 1e-3);
    assert!((coarse - fine).abs() < 1e-9);
    let jensen = characteristic(&f, r, 64).unwrap() - characteristic(&g, r, 64).unwrap();
    assert!((jensen - (10.0f64 / 3.0).ln()).abs() < 1e-9);
}

#[test]
fn sliver_at_a_panel_edge_is_integrated() {
    // log⁺|f| turns positive 0.0026 before a panel edge near θ = 1.53.
    let f = exp_of("-3/(w^2-w/3+5/3)");
    let r = 17.1905589606296;
    let coarse = proximity(&f, r, 64).unwrap().value;
    let fine = proximity(&f, r, 8192).unwrap().value;
    assert!((coarse - fine).abs() < 1e-9, "{coarse} vs {fine}");
}

#[test]
fn excursion_between_nodes_is_integrated() {
    // |f| rises above 1 on a stretch that no Gauss–Kronrod node of the coarse grid hits.
    let field = Field::gaussian();
    let q = parse_ratfunc("8/15-4/15*a+(-1-a)*w+2/3*w^2+(-6/5-2/5*a)*w^3", Var::W, &field).unwrap();
    let f = ExpFunc::new(q).unwrap();
    let r = 17.296450648013323;
    let coarse = proximity(&f, r, 64).unwrap().value;
    let fine = proximity(&f, r, 8192).unwrap().value;
    assert!((coarse - fine).abs() < 1e-9, "{coarse} vs {fine}");
}
