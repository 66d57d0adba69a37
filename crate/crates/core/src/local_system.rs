//! Cohomology with coefficients in the rank-one local system `a^xi`, the
//! twisted cup product, and the choice of generic monodromy values.
//!
//! A twisted cochain stores its value at the leading vertex of each simplex.
//! The coboundary moves the 0-th face value from `v1` to `v0` by
//! `a^{xi(v0 v1)}`, which makes `δ_a` the transpose of the cover boundary
//! specialized at `t = a`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{cup_values, Cochain, CohomologySpace};
use crate::cocycle::{integrate_path, IntegralCocycle};
use crate::complex::{sign, SimplicialComplex};
use crate::cover::TorsionSummary;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// The monodromy value `a` of `a^xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monodromy {
    a: Scalar,
}

impl Monodromy {
    pub fn new(a: Scalar) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroTwist);
        }
        Ok(Monodromy { a })
    }

    pub fn value(&self) -> &Scalar {
        &self.a
    }

    /// Multiplication factor along a closed path: `a^{<xi, path>}`.
    pub fn along(&self, xi: &IntegralCocycle, path: &[usize]) -> Result<Scalar> {
        Ok(self.a.pow(integrate_path(xi, path)?)?)
    }
}

/// `δ_a : C^q -> C^{q+1}`; rows are `(q+1)`-simplices.
pub fn twisted_coboundary_matrix(complex: &SimplicialComplex, xi: &IntegralCocycle, a: &Scalar, q: usize) -> Matrix {
    let field = a.field();
    let mut m = Matrix::zeros(field, complex.count(q + 1), complex.count(q));
    for (row, s) in complex.simplices(q + 1).iter().enumerate() {
        let head = complex.index_of(&s.face(0)).expect("closed under faces");
        m.set(row, head, a.pow(xi.at(s[0], s[1])).expect("nonzero twist"));
        for i in 1..=q + 1 {
            let col = complex.index_of(&s.face(i)).expect("closed under faces");
            m.set(row, col, sign(i, field));
        }
    }
    m
}

/// Twisted coboundary of `u`; an untwisted cochain is treated as `a = 1`.
pub fn twisted_coboundary(complex: &SimplicialComplex, xi: &IntegralCocycle, u: &Cochain) -> Result<Cochain> {
    if !u.fits(complex) {
        return Err(Error::MismatchedCochains);
    }
    let field = u.values.first().map(Scalar::field);
    let a = match (&u.twist, field) {
        (Some(a), _) => a.clone(),
        (None, Some(f)) => f.one(),
        (None, None) => Field::Rationals.one(),
    };
    if a.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let values = twisted_coboundary_matrix(complex, xi, &a, u.degree).mul_vec(&u.values);
    Ok(Cochain {
        degree: u.degree + 1,
        values,
        twist: u.twist.clone(),
    })
}

/// `H^q(X; a^xi)` with cocycle representatives.
pub fn twisted_cohomology(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    a: &Scalar,
    q: usize,
) -> Result<CohomologySpace> {
    if a.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let prev = if q == 0 {
        Matrix::zeros(a.field(), complex.count(0), 0)
    } else {
        twisted_coboundary_matrix(complex, xi, a, q - 1)
    };
    Ok(CohomologySpace::new(
        q,
        &prev,
        &twisted_coboundary_matrix(complex, xi, a, q),
    ))
}

/// All degrees of `H^*(X; a^xi)`.
#[derive(Clone, Debug)]
pub struct TwistedCohomology {
    pub a: Scalar,
    pub spaces: Vec<CohomologySpace>,
}

impl TwistedCohomology {
    pub fn compute(complex: &SimplicialComplex, xi: &IntegralCocycle, a: &Scalar) -> Result<Self> {
        let spaces = (0..=complex.dim())
            .into_par_iter()
            .map(|q| twisted_cohomology(complex, xi, a, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistedCohomology { a: a.clone(), spaces })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(CohomologySpace::dim).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedDims {
    pub a: String,
    pub dims: Vec<usize>,
}

/// Twisted cup product `H^p(a^xi) x H^q(b^xi) -> H^{p+q}((ab)^xi)`:
/// `(u ∪ v)[v0..v_{p+q}] = u[v0..vp] * b^{xi(v0 vp)} * v[vp..v_{p+q}]`.
pub fn cup_twisted(complex: &SimplicialComplex, xi: &IntegralCocycle, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    if !u.fits(complex) || !v.fits(complex) {
        return Err(Error::MismatchedCochains);
    }
    let field = u
        .values
        .first()
        .or(v.values.first())
        .map(Scalar::field)
        .unwrap_or(Field::Rationals);
    let a = u.twist.clone().unwrap_or_else(|| field.one());
    let b = v.twist.clone().unwrap_or_else(|| field.one());
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let degree = u.degree + v.degree;
    let ab = &a * &b;
    let twist = if ab.is_one() && u.twist.is_none() && v.twist.is_none() {
        None
    } else {
        Some(ab)
    };
    if degree > complex.dim() {
        return Ok(Cochain {
            degree,
            values: Vec::new(),
            twist,
        });
    }
    let values = cup_values(complex, u.degree, &u.values, v.degree, &v.values, Some((xi, &b)));
    Ok(Cochain { degree, values, twist })
}

/// `count` distinct values `a` such that neither `a` nor `1/a` lies in
/// `Supp`. Seed 0 walks the candidates in natural order (over `Q`: 2, 1/2, 3,
/// 1/3, 5, ...; over `F_p`: 2, 3, ..., p-1, then 1); other seeds shuffle them.
pub fn pick_generic(supp: &TorsionSummary, field: Field, count: usize, seed: u64) -> Result<Vec<Scalar>> {
    let admissible = |a: &Scalar| !supp.contains(a) && !supp.contains(&a.inverse().expect("nonzero"));
    let mut out: Vec<Scalar> = Vec::with_capacity(count);
    let take = |a: Scalar, out: &mut Vec<Scalar>| {
        if out.len() < count && admissible(&a) && !out.contains(&a) {
            out.push(a);
        }
    };
    match field {
        Field::Rationals => {
            let n = 32 + 2 * (count + supp.supp.len());
            let mut pool = Vec::new();
            for p in primes(n) {
                pool.push(field.from_i64(p as i64));
                pool.push(field.ratio(1, p as i64).expect("nonzero"));
            }
            if seed != 0 {
                pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            }
            for a in pool {
                take(a, &mut out);
            }
        }
        Field::Prime(p) => {
            if p <= 1 << 20 || seed == 0 {
                let mut pool: Box<dyn Iterator<Item = u64>> = Box::new((2..p).chain(std::iter::once(1)));
                if seed != 0 {
                    let mut all: Vec<u64> = (1..p).collect();
                    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                    pool = Box::new(all.into_iter());
                }
                for r in pool {
                    if out.len() == count {
                        break;
                    }
                    take(field.from_i64(r as i64), &mut out);
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..64 * (count + 1) {
                    if out.len() == count {
                        break;
                    }
                    take(field.from_i64(rng.gen_range(1..p) as i64), &mut out);
                }
            }
        }
    }
    if out.len() < count {
        return Err(Error::FieldTooSmall { field, needed: count });
    }
    Ok(out)
}

fn primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut k = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= k).all(|&p| !k.is_multiple_of(p)) {
            out.push(k);
        }
        k += 1;
    }
    out
}
