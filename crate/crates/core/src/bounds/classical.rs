use crate::cochain::{untwisted_cohomology, CohomologySpace};
use crate::cocycle::IntegralCocycle;
use crate::complex::SimplicialComplex;
use crate::field::Field;

use super::certificate::{ProductCertificate, SparseCochain};
use super::products::{pairing_witness, positive_classes, saturate, Level};

#[derive(Clone, Debug)]
pub struct ClassicalResult {
    /// Longest nonzero product of positive-degree classes.
    pub cuplength: usize,
    pub certificate: Option<ProductCertificate>,
}

impl ClassicalResult {
    /// `cat(X) >= cuplength + 1`.
    pub fn bound(&self) -> usize {
        self.cuplength + 1
    }
}

pub(crate) fn untwisted_spaces(complex: &SimplicialComplex, field: Field) -> Vec<CohomologySpace> {
    use rayon::prelude::*;
    (0..=complex.dim())
        .into_par_iter()
        .map(|q| untwisted_cohomology(complex, field, q))
        .collect()
}

pub fn classical_cup_length(complex: &SimplicialComplex, field: Field) -> ClassicalResult {
    capped_cup_length(complex, field, complex.dim())
}

/// Searches products of at most `max_len` classes.
pub(crate) fn capped_cup_length(complex: &SimplicialComplex, field: Field, max_len: usize) -> ClassicalResult {
    let spaces = untwisted_spaces(complex, field);
    let multipliers = positive_classes(&spaces);
    let mut first = Level::new(spaces.len());
    for (k, w) in multipliers.iter().enumerate() {
        let mut g = w.clone();
        g.factors = vec![k];
        first.offer(&spaces, g);
    }
    if first.is_empty() || max_len == 0 {
        return ClassicalResult {
            cuplength: 0,
            certificate: None,
        };
    }
    let levels = saturate(complex, &spaces, first, &multipliers, max_len - 1);
    let top = levels.last().expect("nonempty");
    let g = &top.gens[0];
    let (witness, pairing) = pairing_witness(
        complex,
        &IntegralCocycle::zero_on(complex),
        &field.one(),
        g.degree,
        &g.values,
    )
    .expect("nonzero class");
    let w = g
        .factors
        .iter()
        .map(|&k| SparseCochain::from_values(complex, multipliers[k].degree, &multipliers[k].values))
        .collect();
    ClassicalResult {
        cuplength: levels.len(),
        certificate: Some(ProductCertificate {
            w,
            witness: SparseCochain::from_values(complex, g.degree, &witness),
            pairing: pairing.to_string(),
        }),
    }
}
