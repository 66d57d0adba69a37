#![allow(dead_code)]

use std::path::PathBuf;

use nvcat_core::cocycle::IntegralCocycle;
use nvcat_core::complex::{InputDocument, SimplicialComplex};
use nvcat_core::field::Field;
use nvcat_core::laurent::LaurentPoly;

pub const Q: Field = Field::Rationals;

pub const CORPUS: [&str; 9] = [
    "circle",
    "torus",
    "minimal_torus",
    "sphere",
    "mapping_torus_deg2",
    "genus2",
    "torus_wedge_circle",
    "theta",
    "cone",
];

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.json"))
}

pub fn load(name: &str) -> (SimplicialComplex, IntegralCocycle) {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    let doc = InputDocument::from_json(&text).unwrap();
    (
        SimplicialComplex::from_document(&doc).unwrap(),
        IntegralCocycle::from_document(&doc).unwrap(),
    )
}

pub fn poly(low: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_i64s(Q, low, coeffs)
}
