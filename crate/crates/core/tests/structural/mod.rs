//! Random inputs and exact structural checks, shared by the property suite
//! and the acceptance target.
#![allow(dead_code)]

use std::path::PathBuf;

use nvcat_core::cochain::{betti_numbers, Cochain};
use nvcat_core::cocycle::IntegralCocycle;
use nvcat_core::complex::{InputDocument, SimplicialComplex};
use nvcat_core::cover::build_twisted_complex;
use nvcat_core::field::{Field, Scalar};
use nvcat_core::laurent::{smith_normal_form, LaurentMatrix, LaurentPoly};
use nvcat_core::linalg::add_scaled;
use nvcat_core::local_system::{cup_twisted, twisted_coboundary, twisted_coboundary_matrix};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const Q: Field = Field::Rationals;

/// A subcomplex of the 3x3 torus with the restriction of `k * xi + δf`.
#[derive(Debug, Clone)]
pub struct Sample {
    pub complex: SimplicialComplex,
    pub xi: IntegralCocycle,
}

fn torus() -> (SimplicialComplex, IntegralCocycle) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/torus.json");
    let doc = InputDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    (
        SimplicialComplex::from_document(&doc).unwrap(),
        IntegralCocycle::from_document(&doc).unwrap(),
    )
}

pub fn sample() -> impl Strategy<Value = Sample> {
    (
        prop::collection::vec(any::<bool>(), 18),
        prop::collection::vec(any::<bool>(), 27),
        -2i64..=2,
        prop::collection::vec(-2i64..=2, 9),
    )
        .prop_map(|(tris, edges, k, f)| {
            let (torus, xi) = torus();
            let mut listed: Vec<Vec<usize>> = Vec::new();
            for (s, keep) in torus.simplices(2).iter().zip(&tris) {
                if *keep {
                    listed.push(s.vertices().to_vec());
                }
            }
            for (s, keep) in torus.simplices(1).iter().zip(&edges) {
                if *keep {
                    listed.push(s.vertices().to_vec());
                }
            }
            let complex = SimplicialComplex::from_simplices(9, &listed).unwrap();
            let mut sub = IntegralCocycle::zero_on(&complex);
            for s in complex.simplices(1) {
                let (i, j) = (s[0], s[1]);
                sub.set(i, j, k * xi.at(i, j) + f[j] - f[i]);
            }
            Sample { complex, xi: sub }
        })
}

pub fn twist() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-4i64..=-1, 1i64..=4], 1i64..=3).prop_map(|(n, d)| Q.ratio(n, d).unwrap())
}

fn poly(field: Field) -> impl Strategy<Value = LaurentPoly> {
    (-1i64..=1, prop::collection::vec(-2i64..=2, 0..=3))
        .prop_map(move |(low, c)| LaurentPoly::from_i64s(field, low, &c))
}

pub fn matrix(field: Field) -> impl Strategy<Value = LaurentMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(poly(field), c), r)
            .prop_map(move |rows| LaurentMatrix::from_rows(field, rows))
    })
}

/// Degrees and raw values for a pair of twisted cochains.
pub fn cochain_pair() -> impl Strategy<Value = (Scalar, Scalar, usize, usize, Vec<i64>, Vec<i64>)> {
    (
        twist(),
        twist(),
        0usize..=1,
        0usize..=1,
        prop::collection::vec(-3i64..=3, 1..12),
        prop::collection::vec(-3i64..=3, 1..12),
    )
}

fn values(n: usize, raw: &[i64]) -> Vec<Scalar> {
    (0..n).map(|i| Q.from_i64(raw[i % raw.len()])).collect()
}

pub fn twisted_boundary_squares_to_zero(s: &Sample) -> Result<(), TestCaseError> {
    let c = build_twisted_complex(&s.complex, &s.xi, Q).unwrap();
    for q in 1..c.top_degree() {
        prop_assert!(c.boundary(q).mul(&c.boundary(q + 1)).is_zero());
    }
    Ok(())
}

pub fn twisted_coboundary_squares_to_zero(s: &Sample, a: &Scalar) -> Result<(), TestCaseError> {
    for q in 0..s.complex.dim().saturating_sub(1) {
        let d0 = twisted_coboundary_matrix(&s.complex, &s.xi, a, q);
        let d1 = twisted_coboundary_matrix(&s.complex, &s.xi, a, q + 1);
        prop_assert!(d1.mul(&d0).is_zero());
    }
    Ok(())
}

/// `δ(u ∪ v) = δu ∪ v + (-1)^p u ∪ δv`. Pairs whose degrees do not fit are
/// tested one dimension lower.
pub fn leibniz_rule(
    s: &Sample,
    (a, b, p, q, ru, rv): &(Scalar, Scalar, usize, usize, Vec<i64>, Vec<i64>),
) -> Result<(), TestCaseError> {
    let x = &s.complex;
    let top = x.dim();
    if top == 0 {
        return Ok(());
    }
    let (p, q) = if p + q < top { (*p, *q) } else { (0, 0) };
    let u = Cochain::twisted(p, values(x.count(p), ru), a.clone());
    let v = Cochain::twisted(q, values(x.count(q), rv), b.clone());
    let lhs = twisted_coboundary(x, &s.xi, &cup_twisted(x, &s.xi, &u, &v).unwrap()).unwrap();
    let du = twisted_coboundary(x, &s.xi, &u).unwrap();
    let dv = twisted_coboundary(x, &s.xi, &v).unwrap();
    let mut rhs = cup_twisted(x, &s.xi, &du, &v).unwrap().values;
    let sign = if p % 2 == 0 { Q.one() } else { -Q.one() };
    add_scaled(&mut rhs, &cup_twisted(x, &s.xi, &u, &dv).unwrap().values, &sign);
    prop_assert_eq!(lhs.values, rhs);
    Ok(())
}

pub fn snf_reconstructs(a: &LaurentMatrix) -> Result<(), TestCaseError> {
    let snf = smith_normal_form(a);
    let u = snf.u.as_ref().unwrap();
    let v = snf.v.as_ref().unwrap();
    prop_assert_eq!(u.mul(a).mul(v), snf.diagonal_matrix(a.rows(), a.cols()));
    prop_assert!(u.determinant().is_unit());
    prop_assert!(v.determinant().is_unit());
    for w in snf.diagonal.windows(2) {
        prop_assert!(w[0].divides(&w[1]));
    }
    Ok(())
}

pub fn specialization_at_one(s: &Sample) -> Result<(), TestCaseError> {
    let c = build_twisted_complex(&s.complex, &s.xi, Q).unwrap();
    let one = Q.one();
    let top = c.top_degree();
    let ranks: Vec<usize> = (0..=top + 1).map(|q| c.boundary(q).specialize(&one).rank()).collect();
    let dims: Vec<usize> = (0..=top).map(|q| c.count(q) - ranks[q] - ranks[q + 1]).collect();
    prop_assert_eq!(dims, betti_numbers(&s.complex, Q));
    Ok(())
}

fn out<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e}"))
}

/// Runs every structural check for `cases` random inputs each.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let runner = || {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };
    let f7 = Field::prime(7).unwrap();
    vec![
        (
            "twisted boundary squares to zero",
            out(runner().run(&sample(), |s| twisted_boundary_squares_to_zero(&s))),
        ),
        (
            "twisted coboundary squares to zero",
            out(runner().run(&(sample(), twist()), |(s, a)| {
                twisted_coboundary_squares_to_zero(&s, &a)
            })),
        ),
        (
            "leibniz rule",
            out(runner().run(&(sample(), cochain_pair()), |(s, c)| leibniz_rule(&s, &c))),
        ),
        ("snf over Q", out(runner().run(&matrix(Q), |a| snf_reconstructs(&a)))),
        ("snf over F_7", out(runner().run(&matrix(f7), |a| snf_reconstructs(&a)))),
        (
            "specialization at t = 1",
            out(runner().run(&sample(), |s| specialization_at_one(&s))),
        ),
    ]
}
