//! Subspace saturation for cup-product searches.
//!
//! Level `m` holds cocycles whose classes are independent in each degree and
//! span all products reachable in `m` multiplication steps. Every kept cocycle
//! remembers the factor indices that produced it, so a witness tuple can be
//! read off without enumerating tuples.

use rayon::prelude::*;

use crate::cochain::{cup_values, CohomologySpace};
use crate::cocycle::IntegralCocycle;
use crate::complex::SimplicialComplex;
use crate::field::Scalar;
use crate::linalg::{is_zero_vec, IncrementalBasis};
use crate::local_system::twisted_coboundary_matrix;

#[derive(Clone, Debug)]
pub(crate) struct Generator {
    pub degree: usize,
    pub values: Vec<Scalar>,
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Level {
    bases: Vec<IncrementalBasis>,
    pub gens: Vec<Generator>,
}

impl Level {
    pub fn new(degrees: usize) -> Self {
        Level {
            bases: vec![IncrementalBasis::new(); degrees],
            gens: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Keeps `g` when its class is nonzero and independent of the kept ones.
    pub fn offer(&mut self, spaces: &[CohomologySpace], g: Generator) -> bool {
        let Some(space) = spaces.get(g.degree) else {
            return false;
        };
        let Some(coords) = space.coordinates(&g.values) else {
            return false;
        };
        if is_zero_vec(&coords) || !self.bases[g.degree].insert(&coords) {
            return false;
        }
        self.gens.push(g);
        true
    }
}

/// Multiplies the last level by every multiplier until nothing new appears
/// or `extra_levels` steps were taken.
pub(crate) fn saturate(
    complex: &SimplicialComplex,
    spaces: &[CohomologySpace],
    first: Level,
    multipliers: &[Generator],
    extra_levels: usize,
) -> Vec<Level> {
    let top = complex.dim();
    let mut levels = vec![first];
    while levels.len() <= extra_levels {
        let last = levels.last().expect("nonempty");
        if last.is_empty() {
            break;
        }
        let pairs: Vec<(&Generator, usize, &Generator)> = last
            .gens
            .iter()
            .flat_map(|g| multipliers.iter().enumerate().map(move |(k, w)| (g, k, w)))
            .filter(|(g, _, w)| g.degree + w.degree <= top)
            .collect();
        let products: Vec<Generator> = pairs
            .par_iter()
            .map(|(g, k, w)| {
                let mut factors = g.factors.clone();
                factors.push(*k);
                Generator {
                    degree: g.degree + w.degree,
                    values: cup_values(complex, g.degree, &g.values, w.degree, &w.values, None),
                    factors,
                }
            })
            .collect();
        let mut next = Level::new(spaces.len());
        for g in products {
            next.offer(spaces, g);
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// A chain `c` with `<z, c> != 0` that pairs to zero with every twisted
/// coboundary, proving the class of `z` in `H^n(X; a^xi)` is nonzero.
pub(crate) fn pairing_witness(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    twist: &Scalar,
    degree: usize,
    z: &[Scalar],
) -> Option<(Vec<Scalar>, Scalar)> {
    let field = twist.field();
    let n = complex.count(degree);
    let cycles: Vec<Vec<Scalar>> = if degree == 0 {
        (0..n)
            .map(|i| {
                let mut e = vec![field.zero(); n];
                e[i] = field.one();
                e
            })
            .collect()
    } else {
        twisted_coboundary_matrix(complex, xi, twist, degree - 1)
            .transpose()
            .kernel()
    };
    cycles.into_iter().find_map(|c| {
        let p = pair(z, &c);
        (!p.is_zero()).then_some((c, p))
    })
}

pub(crate) fn pair(z: &[Scalar], c: &[Scalar]) -> Scalar {
    let field = z
        .first()
        .or(c.first())
        .map(Scalar::field)
        .unwrap_or(crate::field::Field::Rationals);
    z.iter().zip(c).fold(field.zero(), |acc, (a, b)| {
        if a.is_zero() || b.is_zero() {
            acc
        } else {
            &acc + &(a * b)
        }
    })
}

/// Positive-degree basis representatives of untwisted cohomology.
pub(crate) fn positive_classes(spaces: &[CohomologySpace]) -> Vec<Generator> {
    spaces
        .iter()
        .skip(1)
        .flat_map(|s| {
            s.reps().iter().map(move |r| Generator {
                degree: s.degree,
                values: r.clone(),
                factors: Vec::new(),
            })
        })
        .collect()
}
