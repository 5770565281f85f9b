#![allow(dead_code)]

use pairshare::field::rat;
use pairshare::{Field, FieldElem, Poly1, Poly2, RatFunc, Var};
use proptest::prelude::*;

pub const CASES: u32 = 1000;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn any_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rationals()),
        Just(Field::gaussian()),
        Just(Field::eisenstein()),
    ]
}

/// Small element with denominator at most 3.
pub fn elem(field: Field) -> impl Strategy<Value = FieldElem> {
    let rational = field.is_rationals();
    (-6i64..=6, -4i64..=4, 1i64..=3).prop_map(move |(a, b, d)| {
        let b = if rational { 0 } else { b };
        FieldElem::new(rat(a, d), rat(b, d), &field).expect("in field")
    })
}

pub fn nonzero_elem(field: Field) -> impl Strategy<Value = FieldElem> {
    elem(field).prop_filter("nonzero", |e| !e.is_zero())
}

/// Polynomial in `var` of degree at most `max_deg` (possibly zero).
pub fn poly1(field: Field, var: Var, max_deg: usize) -> impl Strategy<Value = Poly1> {
    let f = field.clone();
    prop::collection::vec(elem(field), 1..=max_deg + 1)
        .prop_map(move |c| Poly1::new(var, &f, c))
}

/// Polynomial of degree exactly in `lo..=hi`.
pub fn poly1_deg(field: Field, var: Var, lo: usize, hi: usize) -> impl Strategy<Value = Poly1> {
    poly1(field, var, hi).prop_filter("degree range", move |p| {
        p.degree().is_some_and(|d| d >= lo && d <= hi)
    })
}

pub fn poly2(field: Field, max_x: u32, max_y: u32) -> impl Strategy<Value = Poly2> {
    let f = field.clone();
    let n = ((max_x + 1) * (max_y + 1)) as usize;
    prop::collection::vec(elem(field), n).prop_map(move |c| {
        let terms = c.into_iter().enumerate().map(|(i, c)| {
            let i = i as u32;
            ((i % (max_x + 1), i / (max_x + 1)), c)
        });
        Poly2::from_terms((Var::X, Var::Y), &f, terms)
    })
}

/// Nonconstant rational function of degree at most `max_deg` in `t`.
pub fn ratfunc(field: Field, max_deg: usize) -> impl Strategy<Value = RatFunc> {
    let f = field.clone();
    (poly1(field.clone(), Var::T, max_deg), poly1(field, Var::T, max_deg))
        .prop_filter_map("nonconstant", move |(n, d)| {
            let _ = &f;
            if d.is_zero() {
                return None;
            }
            RatFunc::new(n, d).ok().filter(|q| !q.is_constant())
        })
}

pub fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}
