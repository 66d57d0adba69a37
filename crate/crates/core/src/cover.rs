//! The infinite cyclic cover of `(X, xi)` as a free chain complex over
//! `k[t, 1/t]`, its homology, torsion and the set `Supp`.
//!
//! The deck transformation `t` raises the lifted potential by one. A
//! q-simplex `[v0..vq]` is lifted so that its leading vertex sits on the base
//! sheet; its 0-th face then starts `xi(v0 v1)` sheets higher.

use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::{require_cocycle, IntegralCocycle};
use crate::complex::{sign, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::laurent::factor::{cmp_scalar, factor, roots, IrreducibleFactor};
use crate::laurent::{poly_lcm, smith_diagonal, smith_with_row_transform, LaurentMatrix, LaurentPoly};

#[derive(Clone, Debug)]
pub struct TwistedChainComplex {
    field: Field,
    counts: Vec<usize>,
    // boundaries[q] : C_q -> C_{q-1}, rows indexed by (q-1)-simplices
    boundaries: Vec<LaurentMatrix>,
}

pub fn build_twisted_complex(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
) -> Result<TwistedChainComplex> {
    require_cocycle(complex, xi)?;
    let top = complex.dim();
    let counts: Vec<usize> = (0..=top).map(|q| complex.count(q)).collect();
    let mut boundaries = vec![LaurentMatrix::zeros(field, 0, counts[0])];
    for q in 1..=top {
        let mut m = LaurentMatrix::zeros(field, counts[q - 1], counts[q]);
        for (j, s) in complex.simplices(q).iter().enumerate() {
            let head = complex.index_of(&s.face(0)).expect("closed under faces");
            m.set(head, j, LaurentPoly::t_pow(field, xi.at(s[0], s[1])));
            for i in 1..=q {
                let row = complex.index_of(&s.face(i)).expect("closed under faces");
                m.set(row, j, LaurentPoly::constant(sign(i, field)));
            }
        }
        boundaries.push(m);
    }
    Ok(TwistedChainComplex {
        field,
        counts,
        boundaries,
    })
}

impl TwistedChainComplex {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn top_degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }

    /// `∂_q : C_q -> C_{q-1}`; the zero map above the top degree.
    pub fn boundary(&self, q: usize) -> LaurentMatrix {
        match self.boundaries.get(q) {
            Some(m) => m.clone(),
            None => LaurentMatrix::zeros(self.field, self.count(q - 1), 0),
        }
    }

    pub fn is_cycle(&self, q: usize, z: &[LaurentPoly]) -> bool {
        z.len() == self.count(q) && self.boundary(q).mul_vec(z).iter().all(LaurentPoly::is_zero)
    }

    /// A basis of the free module of q-cycles.
    pub fn cycle_basis(&self, q: usize) -> Vec<Vec<LaurentPoly>> {
        let d = self.boundary(q);
        let snf = crate::laurent::smith_normal_form(&d);
        let v = snf.v.expect("tracked");
        (snf.rank..d.cols())
            .map(|j| (0..d.cols()).map(|i| v.get(i, j).clone()).collect())
            .collect()
    }
}

/// `H_q` of the cover as `Λ^free_rank ⊕ ⨁ Λ/(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverHomology {
    pub field: Field,
    pub degrees: Vec<DegreeHomology>,
}

impl CoverHomology {
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.degree % 2 == 0 {
                    d.free_rank as i64
                } else {
                    -(d.free_rank as i64)
                }
            })
            .sum()
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.free_rank).collect()
    }
}

pub fn cover_homology(c: &TwistedChainComplex) -> CoverHomology {
    let top = c.top_degree();
    let snfs: Vec<_> = (0..=top + 1)
        .into_par_iter()
        .map(|q| smith_diagonal(&c.boundary(q)))
        .collect();
    let degrees = (0..=top)
        .map(|q| DegreeHomology {
            degree: q,
            free_rank: c.count(q) - snfs[q].rank - snfs[q + 1].rank,
            invariant_factors: snfs[q + 1].invariant_factors(),
        })
        .collect();
    CoverHomology {
        field: c.field(),
        degrees,
    }
}

#[derive(Clone, Debug)]
pub struct TorsionSummary {
    pub field: Field,
    pub lambda: u64,
    /// Invariant factors of the torsion, per degree, for the indivisible class.
    pub factors: Vec<(usize, Vec<LaurentPoly>)>,
    /// Product of all invariant factors.
    pub delta: LaurentPoly,
    /// Irreducible factorization of `delta`.
    pub factorization: Vec<IrreducibleFactor>,
    /// Base-field points of `Supp(X, xi)`, ascending.
    pub supp: Vec<Scalar>,
    pub torsion_dim: usize,
}

impl TorsionSummary {
    /// Whether `a` lies in `Supp(X, xi)`: `delta` vanishes at `a^{-lambda}`.
    pub fn contains(&self, a: &Scalar) -> bool {
        if a.is_zero() {
            return false;
        }
        let b = a.pow(-(self.lambda as i64)).expect("nonzero");
        self.delta.eval(&b).expect("same field").is_zero()
    }
}

/// `Supp(X, eta)` is the set of `a` with `a^{-1}` a root of some invariant
/// factor; for `xi = lambda * eta` it becomes `{a : a^lambda ∈ Supp(X, eta)}`.
pub fn torsion_summary(h: &CoverHomology, lambda: u64) -> TorsionSummary {
    let field = h.field;
    let factors: Vec<(usize, Vec<LaurentPoly>)> = h
        .degrees
        .iter()
        .map(|d| (d.degree, d.invariant_factors.clone()))
        .collect();
    let mut delta = LaurentPoly::one(field);
    let mut torsion_dim = 0;
    for f in factors.iter().flat_map(|(_, fs)| fs) {
        delta = &delta * f;
        torsion_dim += f.span().unwrap_or(0);
    }
    let base: Vec<Scalar> = roots(&delta)
        .iter()
        .map(|r| r.inverse().expect("nonzero root"))
        .collect();
    let mut supp = Vec::new();
    for s in &base {
        if lambda == 1 {
            supp.push(s.clone());
            continue;
        }
        // roots of t^lambda - s
        let mut c = vec![field.zero(); lambda as usize + 1];
        c[0] = -s.clone();
        c[lambda as usize] = field.one();
        supp.extend(roots(&LaurentPoly::from_coeffs(field, 0, c)));
    }
    supp.sort_by(cmp_scalar);
    supp.dedup();
    TorsionSummary {
        field,
        lambda,
        factors,
        factorization: factor(&delta),
        delta,
        supp,
        torsion_dim,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Movability {
    pub movable: bool,
    /// Minimal canonical annihilator of the class when it is torsion.
    #[serde(serialize_with = "serialize_opt_poly")]
    pub annihilator: Option<LaurentPoly>,
}

fn serialize_opt_poly<S: serde::Serializer>(p: &Option<LaurentPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// A cycle is movable exactly when its class is Λ-torsion.
pub fn is_movable(c: &TwistedChainComplex, q: usize, z: &[LaurentPoly]) -> Result<Movability> {
    if !c.is_cycle(q, z) {
        return Err(Error::NotACycle);
    }
    let field = c.field();
    let d = c.boundary(q + 1);
    let snf = smith_with_row_transform(&d);
    let u = snf.u.as_ref().expect("tracked");
    let w = u.mul_vec(z);
    if w[snf.rank..].iter().any(|x| !x.is_zero()) {
        return Ok(Movability {
            movable: false,
            annihilator: None,
        });
    }
    let mut ann = LaurentPoly::one(field);
    for (di, wi) in snf.diagonal.iter().zip(&w).take(snf.rank) {
        if wi.is_zero() || di.is_unit() {
            continue;
        }
        let g = crate::laurent::poly_gcd(di, wi).expect("nonzero");
        let need = di.exact_div(&g).expect("gcd divides");
        ann = poly_lcm(&ann, &need).expect("nonzero");
    }
    Ok(Movability {
        movable: true,
        annihilator: Some(ann.normalized()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::InputDocument;

    const Q: Field = Field::Rationals;

    fn circle(values: [i64; 3]) -> (SimplicialComplex, IntegralCocycle) {
        let c = SimplicialComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let mut xi = IntegralCocycle::new();
        xi.set(0, 1, values[0]);
        xi.set(1, 2, values[1]);
        xi.set(0, 2, values[2]);
        (c, xi)
    }

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(Q, low, c)
    }

    #[test]
    fn edge_boundary() {
        let c = SimplicialComplex::from_simplices(2, &[vec![0, 1]]).unwrap();
        let mut xi = IntegralCocycle::new();
        xi.set(0, 1, 1);
        let t = build_twisted_complex(&c, &xi, Q).unwrap();
        let d = t.boundary(1);
        assert_eq!(d.get(1, 0), &p(1, &[1]));
        assert_eq!(d.get(0, 0), &p(0, &[-1]));
    }

    #[test]
    fn boundary_squares_to_zero_and_specializes() {
        let doc = InputDocument::from_json(include_str!("../../../corpus/torus.json")).unwrap();
        let x = SimplicialComplex::from_document(&doc).unwrap();
        let xi = IntegralCocycle::from_document(&doc).unwrap();
        let t = build_twisted_complex(&x, &xi, Q).unwrap();
        assert!(t.boundary(1).mul(&t.boundary(2)).is_zero());
        let one = Q.one();
        assert_eq!(t.boundary(2).specialize(&one), x.boundary_matrix(2, Q));
    }

    #[test]
    fn circle_cover_is_a_line() {
        let (x, xi) = circle([1, 0, 0]);
        let h = cover_homology(&build_twisted_complex(&x, &xi, Q).unwrap());
        assert_eq!(
            h.degrees[0],
            DegreeHomology {
                degree: 0,
                free_rank: 0,
                invariant_factors: vec![p(0, &[-1, 1])]
            }
        );
        assert_eq!(
            h.degrees[1],
            DegreeHomology {
                degree: 1,
                free_rank: 0,
                invariant_factors: vec![]
            }
        );
        let s = torsion_summary(&h, 1);
        assert_eq!(s.supp, vec![Q.one()]);
        assert_eq!(s.torsion_dim, 1);
        let doubled = torsion_summary(&h, 2);
        assert_eq!(doubled.supp, vec![Q.from_i64(-1), Q.one()]);
        assert!(doubled.contains(&Q.from_i64(-1)));
        assert!(!doubled.contains(&Q.from_i64(2)));
    }

    #[test]
    fn movability_of_zero_and_points() {
        let (x, xi) = circle([1, 0, 0]);
        let t = build_twisted_complex(&x, &xi, Q).unwrap();
        let zero = vec![LaurentPoly::zero(Q); 3];
        assert_eq!(
            is_movable(&t, 0, &zero).unwrap(),
            Movability {
                movable: true,
                annihilator: Some(LaurentPoly::one(Q))
            }
        );
        let point = vec![LaurentPoly::one(Q), LaurentPoly::zero(Q), LaurentPoly::zero(Q)];
        assert_eq!(is_movable(&t, 0, &point).unwrap().annihilator, Some(p(0, &[-1, 1])));
        assert!(matches!(
            is_movable(&t, 1, &[p(0, &[1]), p(0, &[]), p(0, &[])]),
            Err(Error::NotACycle)
        ));
    }
}
