mod common;

use common::*;
use pairshare::search::{build_constraints, count_constraints, BuildOptions, DegreeProfile, MPoly};
use pairshare::{Field, FieldElem};
use proptest::prelude::*;

/// Profiles obeying every validation rule, with degrees kept small.
fn profile(max: u32) -> impl Strategy<Value = DegreeProfile> {
    (1..=max, 1..=max)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 1..=n.min(4), 1..=m.min(4), 0usize..4, 0usize..4))
        .prop_flat_map(|(m, n, s, t, lambda, kappa)| {
            (
                Just((m, n, s, t, lambda, kappa)),
                prop::array::uniform4(1..=m),
                prop::array::uniform4(1..=n),
            )
        })
        .prop_map(|((m, n, s, t, lambda, kappa), mut sy, mut sx)| {
            for v in 0..4 {
                if t < m && v != lambda {
                    sy[v] = m;
                }
                if s < n && v != kappa {
                    sx[v] = n;
                }
            }
            DegreeProfile { m, n, s, t, lambda, kappa, surviving_y: sy, surviving_x: sx }
        })
}

fn values(field: Field, n: usize) -> impl Strategy<Value = Vec<FieldElem>> {
    prop::collection::vec(elem(field), n)
}

fn mpoly(nvars: usize) -> impl Strategy<Value = MPoly> {
    let term = (prop::collection::vec(0u32..3, nvars), elem(Field::gaussian()));
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        let field = Field::gaussian();
        ts.into_iter().fold(MPoly::zero(nvars, &field), |acc, (e, c)| {
            let mono = e.iter().enumerate().fold(MPoly::constant(c, nvars), |m, (i, &k)| {
                m.mul(&MPoly::var(i, nvars, &field).pow(k))
            });
            acc.add(&mono)
        })
    })
}

fn mpolys(nvars: usize) -> impl Strategy<Value = (MPoly, MPoly, Vec<FieldElem>)> {
    (mpoly(nvars), mpoly(nvars), values(Field::gaussian(), nvars))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn constraint_count_formula(m in 1u32..=9, n in 1u32..=9) {
        prop_assert_eq!(count_constraints(m, n), 4 * (m + n - 1));
        prop_assert_eq!(count_constraints(m, n), count_constraints(n, m));
    }

    #[test]
    fn mpoly_ring_laws((p, q, v) in mpolys(3)) {
        prop_assert_eq!(p.mul(&q).eval(&v), &p.eval(&v) * &q.eval(&v));
        prop_assert_eq!(p.add(&q).eval(&v), &p.eval(&v) + &q.eval(&v));
        for i in 0..3 {
            let lhs = p.mul(&q).diff(i);
            let rhs = p.diff(i).mul(&q).add(&p.mul(&q.diff(i)));
            prop_assert_eq!(lhs, rhs);
        }
        let partial: Vec<Option<FieldElem>> = vec![Some(v[0].clone()), None, Some(v[2].clone())];
        prop_assert_eq!(p.partial_eval(&partial).eval(&v), p.eval(&v));
    }

    /// Every equation is the Taylor coefficient it claims to be.
    #[test]
    fn equations_are_taylor_coefficients(
        (prof, vals) in profile(4).prop_flat_map(|p| {
            let n = build_constraints(&p, &BuildOptions::new(&Field::rationals())).unwrap().num_unknowns();
            (Just(p), values(Field::rationals(), n))
        })
    ) {
        prop_assert!(prof.validate().is_ok());
        let sys = build_constraints(&prof, &BuildOptions::new(&Field::rationals())).unwrap();
        prop_assert_eq!(sys.num_equations() as u32, count_constraints(prof.m, prof.n));
        let k = sys.instantiate(&vals);
        let pairs = sys.pair_values(&vals);
        prop_assert_eq!(&pairs[0], &(Field::rationals().zero(), Field::rationals().zero()));
        for eq in &sys.equations {
            let (head, order) = eq.label.split_once(": ").unwrap();
            let nu: usize = head.trim_start_matches("pair ").parse().unwrap();
            let (a, b) = &pairs[nu - 1];
            let local = k.translate(a, b);
            let (dir, ord) = order.split_once("-order ").unwrap();
            let ord: u32 = ord.parse().unwrap();
            let want = if dir == "y" { local.coeff(0, ord) } else { local.coeff(ord, 0) };
            prop_assert_eq!(eq.poly.eval(&vals), want, "{}", eq.label);
        }
    }

    #[test]
    fn valid_profiles_are_accepted(p in profile(9)) {
        prop_assert!(p.validate().is_ok());
        let mut bad = p.clone();
        bad.s = 0;
        prop_assert!(bad.validate().is_err());
    }
}
