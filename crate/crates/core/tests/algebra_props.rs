mod common;

use common::*;
use pairshare::resultant::{discriminant, resultant_poly1, resultant_same, sylvester_determinant};
use pairshare::{Field, Poly1, Var};
use proptest::prelude::*;

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<pairshare::FieldElem>)> {
    any_field().prop_flat_map(move |f| (Just(f.clone()), prop::collection::vec(elem(f), n)))
}

fn two_polys(lo: usize, hi: usize) -> impl Strategy<Value = (Poly1, Poly1)> {
    any_field().prop_flat_map(move |f| {
        (
            poly1_deg(f.clone(), Var::X, lo, hi),
            poly1_deg(f, Var::X, lo, hi),
        )
    })
}

fn three_polys(lo: usize, hi: usize) -> impl Strategy<Value = (Poly1, Poly1, Poly1)> {
    any_field().prop_flat_map(move |f| {
        (
            poly1_deg(f.clone(), Var::X, lo, hi),
            poly1_deg(f.clone(), Var::X, lo, hi),
            poly1_deg(f, Var::X, lo, hi),
        )
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(&(a - a), &f.zero());
        if let Some(i) = a.inv() {
            prop_assert!((a * &i).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!((a * b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.pow(3), &(a * a) * a);
    }

    #[test]
    fn sqrt_of_square((_f, v) in field_and_elems(1)) {
        let sq = &v[0] * &v[0];
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn resultant_matches_sylvester((p, q) in two_polys(1, 4)) {
        let r = resultant_poly1(&p, &q).unwrap();
        prop_assert_eq!(r, sylvester_determinant(&p, &q));
    }

    #[test]
    fn resultant_antisymmetry((p, q) in two_polys(1, 4)) {
        let r = resultant_poly1(&p, &q).unwrap();
        let s = resultant_poly1(&q, &p).unwrap();
        let e = sign(p.deg() * q.deg());
        prop_assert_eq!(s, &r * &r.field().int(e));
    }

    #[test]
    fn resultant_multiplicative((p1, p2, q) in three_polys(1, 3)) {
        let lhs = resultant_poly1(&(&p1 * &p2), &q).unwrap();
        let rhs = &resultant_poly1(&p1, &q).unwrap() * &resultant_poly1(&p2, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor((p, q) in two_polys(1, 4)) {
        let r = resultant_poly1(&p, &q).unwrap();
        prop_assert_eq!(r.is_zero(), !p.gcd(&q).is_constant());
    }

    #[test]
    fn forced_common_factor((p, q, g) in three_polys(1, 3)) {
        let r = resultant_poly1(&(&p * &g), &(&q * &g)).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn gcd_divides((p, q, g) in three_polys(0, 3)) {
        let a = &p * &g;
        let b = &q * &g;
        let d = a.gcd(&b);
        prop_assert!(d.divides(&a));
        prop_assert!(d.divides(&b));
        prop_assert!(g.divides(&d));
        prop_assert!(d.lc().is_one());
    }

    #[test]
    fn squarefree_reconstruction((p, q) in two_polys(1, 3)) {
        let f = &(&p * &p) * &q;
        let parts = f.squarefree_decomposition();
        let mut prod = Poly1::constant(f.lc(), Var::X, f.field());
        for (m, g) in &parts {
            prop_assert!(g.lc().is_one());
            prop_assert!(g.gcd(&g.derivative()).is_constant());
            prod = &prod * &g.pow(*m);
        }
        prop_assert_eq!(prod, f.clone());
        for (i, (_, a)) in parts.iter().enumerate() {
            for (_, b) in &parts[i + 1..] {
                prop_assert!(a.gcd(b).is_constant());
            }
        }
        prop_assert!(parts.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn discriminant_vs_gcd((p, _q) in two_polys(1, 4)) {
        let d = discriminant(&p).unwrap();
        let repeated = !p.gcd(&p.derivative()).is_constant();
        prop_assert_eq!(d.is_zero(), repeated);
    }

    #[test]
    fn bivariate_gcd_divides(
        (a, b, g) in any_field().prop_flat_map(|f| (
            poly2(f.clone(), 1, 1),
            poly2(f.clone(), 1, 1),
            poly2(f, 1, 1),
        ))
    ) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let pa = &a * &g;
        let pb = &b * &g;
        let d = pa.gcd(&pb);
        prop_assert!(pa.exact_div(&d).is_some());
        prop_assert!(pb.exact_div(&d).is_some());
        prop_assert!(d.exact_div(&g).is_some());
    }

    #[test]
    fn bivariate_squarefree_idempotent(
        p in any_field().prop_flat_map(|f| poly2(f, 1, 1))
    ) {
        prop_assume!(!p.is_zero());
        prop_assert_eq!((&p * &p).squarefree_part(), p.squarefree_part());
    }

    #[test]
    fn bivariate_resultant_specializes(
        (p, q, x0) in any_field().prop_flat_map(|f| (
            poly2(f.clone(), 2, 2),
            poly2(f.clone(), 2, 2),
            elem(f),
        ))
    ) {
        prop_assume!(p.deg_y() >= 1 && q.deg_y() >= 1);
        let lp = p.as_poly_in_y().last().unwrap().eval(&x0);
        let lq = q.as_poly_in_y().last().unwrap().eval(&x0);
        prop_assume!(!lp.is_zero() && !lq.is_zero());
        let r = resultant_same(&p, &q, Var::Y).unwrap();
        let direct = resultant_poly1(&p.subs_x(&x0), &q.subs_x(&x0)).unwrap();
        prop_assert_eq!(r.eval(&x0), direct);
    }
}
