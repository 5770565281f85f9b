mod common;

use common::*;
use pairshare::parse::{parse_poly1, parse_poly2, parse_ratfunc};
use pairshare::{Field, FieldElem, MobiusMap, Poly1, RatFunc, SpherePoint, Var};
use proptest::prelude::*;

fn point(field: Field) -> impl Strategy<Value = SpherePoint> {
    prop_oneof![
        1 => Just(SpherePoint::Infinity),
        6 => elem(field).prop_map(SpherePoint::Finite),
    ]
}

fn mobius(field: Field) -> impl Strategy<Value = MobiusMap> {
    (elem(field.clone()), elem(field.clone()), elem(field.clone()), elem(field))
        .prop_filter_map("invertible", |(a, b, c, d)| MobiusMap::new(a, b, c, d).ok())
}

fn case() -> impl Strategy<Value = (RatFunc, SpherePoint, MobiusMap)> {
    any_field().prop_flat_map(|f| (ratfunc(f.clone(), 3), point(f.clone()), mobius(f)))
}

/// Finite value `v` forced critical at `t0`: `Q = v + (t - t0)^2 · n / d`.
fn forced_critical() -> impl Strategy<Value = (RatFunc, FieldElem)> {
    any_field().prop_flat_map(|f| {
        (
            elem(f.clone()),
            elem(f.clone()),
            poly1(f.clone(), Var::T, 1),
            poly1_deg(f, Var::T, 0, 2),
        )
            .prop_filter_map("nonconstant", |(v, t0, n, d)| {
                let field = v.field().clone();
                if d.eval(&t0).is_zero() {
                    return None;
                }
                let sq = Poly1::linear_root(&t0, Var::T, &field).pow(2);
                let base = RatFunc::new(&sq * &n, d).ok()?;
                if base.is_zero() {
                    return None;
                }
                let q = base.add(&RatFunc::constant(v.clone(), Var::T, &field));
                (!q.is_constant()).then_some((q, v))
            })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn divisor_degree_is_conserved((q, a, _m) in case()) {
        let d = q.value_divisor(&a).unwrap();
        prop_assert_eq!(d.total_degree(), q.degree());
    }

    #[test]
    fn divisor_is_mobius_invariant((q, a, m) in case()) {
        let mq = m.apply(&q);
        let ma = m.apply_point(&a);
        prop_assert_eq!(mq.value_divisor(&ma).unwrap(), q.value_divisor(&a).unwrap());
        prop_assert_eq!(mq.ramification_total(), q.ramification_total());
    }

    #[test]
    fn mobius_relation_recovers_map((q, _a, m) in case()) {
        let mq = m.apply(&q);
        let found = pairshare::ratfunc::mobius_relation(&q, &mq).expect("related by construction");
        prop_assert_eq!(found.apply(&q), mq);
    }

    #[test]
    fn riemann_hurwitz((q, _a, _m) in case()) {
        prop_assert_eq!(q.ramification_total(), 2 * q.degree() - 2);
    }

    #[test]
    fn riemann_hurwitz_under_reparametrization((q, _a, m) in case()) {
        let qm = m.precompose(&q);
        prop_assert_eq!(qm.degree(), q.degree());
        prop_assert_eq!(qm.ramification_total(), 2 * q.degree() - 2);
    }

    #[test]
    fn critical_values_match_divisors((q, a, _m) in case()) {
        let d = q.value_divisor(&a).unwrap();
        let branched = d.infinity() >= 2 || d.finite().iter().any(|(m, _)| *m >= 2);
        prop_assert_eq!(q.critical_values().contains(&a), branched);
    }

    #[test]
    fn forced_critical_value_is_found((q, v) in forced_critical()) {
        prop_assert!(q.critical_values().contains(&SpherePoint::Finite(v)));
    }

    #[test]
    fn ratfunc_display_round_trips((q, _a, _m) in case()) {
        let text = q.to_string();
        let back = parse_ratfunc(&text, Var::T, q.field()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn poly1_display_round_trips(p in any_field().prop_flat_map(|f| poly1(f, Var::X, 5))) {
        let back = parse_poly1(&p.to_string(), Var::X, p.field()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poly2_display_round_trips(p in any_field().prop_flat_map(|f| poly2(f, 3, 2))) {
        let back = parse_poly2(&p.to_string(), (Var::X, Var::Y), p.field()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluation_commutes_with_composition(
        (q, r, t) in any_field().prop_flat_map(|f| (ratfunc(f.clone(), 2), ratfunc(f.clone(), 2), elem(f)))
    ) {
        let c = q.compose(&r);
        prop_assert_eq!(c.degree(), q.degree() * r.degree());
        let direct = q.eval_point(&r.eval(&t));
        prop_assert_eq!(c.eval(&t), direct);
    }
}
