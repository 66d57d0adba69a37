//! Cochains, cohomology spaces with explicit representatives, and the
//! front-face/back-face cup product.

use crate::cocycle::IntegralCocycle;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{is_zero_vec, Matrix, Solver};

/// A cochain on the q-simplices of a complex, in their canonical order.
/// `twist` is the monodromy value `a` of the local system, `None` when
/// untwisted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<Scalar>,
    pub twist: Option<Scalar>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<Scalar>) -> Self {
        Cochain {
            degree,
            values,
            twist: None,
        }
    }

    pub fn twisted(degree: usize, values: Vec<Scalar>, a: Scalar) -> Self {
        Cochain {
            degree,
            values,
            twist: Some(a),
        }
    }

    pub fn zero(complex: &SimplicialComplex, degree: usize, field: Field) -> Self {
        Self::new(degree, vec![field.zero(); complex.count(degree)])
    }

    /// The unit 0-cocycle, constant 1 on vertices.
    pub fn unit(complex: &SimplicialComplex, field: Field) -> Self {
        Self::new(0, vec![field.one(); complex.count(0)])
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn fits(&self, complex: &SimplicialComplex) -> bool {
        self.values.len() == complex.count(self.degree)
    }

    /// Untwisted coboundary.
    pub fn coboundary(&self, complex: &SimplicialComplex, field: Field) -> Result<Cochain> {
        if !self.fits(complex) {
            return Err(Error::MismatchedCochains);
        }
        let d = complex.coboundary_matrix(self.degree, field);
        Ok(Cochain::new(self.degree + 1, d.mul_vec(&self.values)))
    }
}

/// `H^q` of a cochain complex given by its two adjacent coboundary matrices,
/// with a basis of representatives and a solver for class coordinates.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: usize,
    field: Field,
    reps: Vec<Vec<Scalar>>,
    next: Matrix,
    // columns of `prev` spanning the coboundaries
    boundary_cols: Vec<usize>,
    boundary_basis: Vec<Vec<Scalar>>,
    solver: Solver,
}

impl CohomologySpace {
    /// `prev: C^{q-1} -> C^q` and `next: C^q -> C^{q+1}`.
    pub fn new(degree: usize, prev: &Matrix, next: &Matrix) -> Self {
        let field = next.field();
        let n = next.cols();
        let boundary_cols = prev.independent_columns();
        let boundary_basis: Vec<Vec<Scalar>> = boundary_cols.iter().map(|&j| prev.column(j)).collect();
        let cycles = next.kernel();
        let mut columns = boundary_basis.clone();
        columns.extend(cycles.iter().cloned());
        let picked = Matrix::from_columns(field, n, &columns).independent_columns();
        let b = boundary_basis.len();
        let reps: Vec<Vec<Scalar>> = picked
            .iter()
            .filter(|&&j| j >= b)
            .map(|&j| cycles[j - b].clone())
            .collect();
        let mut basis = boundary_basis.clone();
        basis.extend(reps.iter().cloned());
        let solver = Solver::new(&Matrix::from_columns(field, n, &basis));
        CohomologySpace {
            degree,
            field,
            reps,
            next: next.clone(),
            boundary_cols,
            boundary_basis,
            solver,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Cocycle representatives of a basis.
    pub fn reps(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    /// Number of q-cochains.
    pub fn cochain_len(&self) -> usize {
        self.next.cols()
    }

    pub fn coboundary_rank(&self) -> usize {
        self.boundary_basis.len()
    }

    pub fn is_cocycle(&self, z: &[Scalar]) -> bool {
        is_zero_vec(&self.next.mul_vec(z))
    }

    /// Coordinates of the class of `z` in the representative basis; `None`
    /// when `z` is not a cocycle.
    pub fn coordinates(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.is_cocycle(z) {
            return None;
        }
        let x = self.solver.solve(z)?;
        Some(x[self.boundary_basis.len()..].to_vec())
    }

    /// True when `z` is a coboundary.
    pub fn is_exact(&self, z: &[Scalar]) -> bool {
        self.coordinates(z).is_some_and(|c| is_zero_vec(&c))
    }

    /// Some `y` with `d y = z` for the `prev` map, when `z` is a coboundary.
    /// Linear in `z`.
    pub fn primitive(&self, z: &[Scalar], prev_cols: usize) -> Option<Vec<Scalar>> {
        let x = self.solver.solve(z)?;
        let (b, tail) = x.split_at(self.boundary_basis.len());
        if !is_zero_vec(tail) {
            return None;
        }
        let mut y = vec![self.field.zero(); prev_cols];
        for (&j, c) in self.boundary_cols.iter().zip(b) {
            y[j] = c.clone();
        }
        Some(y)
    }

    /// The cocycle `sum c_i rep_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.cochain_len()];
        for (c, r) in coords.iter().zip(&self.reps) {
            crate::linalg::add_scaled(&mut out, r, c);
        }
        out
    }
}

/// `H^q(X; k)` with cocycle representatives.
pub fn untwisted_cohomology(complex: &SimplicialComplex, field: Field, q: usize) -> CohomologySpace {
    let prev = if q == 0 {
        Matrix::zeros(field, complex.count(0), 0)
    } else {
        complex.coboundary_matrix(q - 1, field)
    };
    CohomologySpace::new(q, &prev, &complex.coboundary_matrix(q, field))
}

/// Betti numbers over `field` in degrees `0..=dim`.
pub fn betti_numbers(complex: &SimplicialComplex, field: Field) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=complex.dim() + 1)
        .map(|q| complex.boundary_matrix(q, field).rank())
        .collect();
    (0..=complex.dim())
        .map(|q| complex.count(q) - ranks[q] - ranks[q + 1])
        .collect()
}

/// Cup product of a p-cochain and a q-cochain given as value vectors. With
/// `transport = Some((xi, b))` the back face value is moved to the leading
/// vertex by `b^{xi(v0, vp)}`.
pub fn cup_values(
    complex: &SimplicialComplex,
    p: usize,
    u: &[Scalar],
    q: usize,
    v: &[Scalar],
    transport: Option<(&IntegralCocycle, &Scalar)>,
) -> Vec<Scalar> {
    let field = u.first().or(v.first()).map(Scalar::field).unwrap_or(Field::Rationals);
    complex
        .simplices(p + q)
        .iter()
        .map(|s| {
            let a = &u[complex.index_of(&s[..=p]).expect("front face")];
            if a.is_zero() {
                return field.zero();
            }
            let b = &v[complex.index_of(&s[p..]).expect("back face")];
            if b.is_zero() {
                return field.zero();
            }
            let prod = a * b;
            match transport {
                Some((xi, base)) if p > 0 => {
                    let w = xi.at(s[0], s[p]);
                    if w == 0 {
                        prod
                    } else {
                        &prod * &base.pow(w).expect("nonzero twist")
                    }
                }
                _ => prod,
            }
        })
        .collect()
}

/// Untwisted cup product `(u ∪ v)[v0..v_{p+q}] = u[v0..vp] * v[vp..v_{p+q}]`.
pub fn cup_untwisted(complex: &SimplicialComplex, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    if !u.fits(complex) || !v.fits(complex) || u.twist.is_some() || v.twist.is_some() {
        return Err(Error::MismatchedCochains);
    }
    if u.degree + v.degree > complex.dim() {
        return Ok(Cochain::new(u.degree + v.degree, Vec::new()));
    }
    Ok(Cochain::new(
        u.degree + v.degree,
        cup_values(complex, u.degree, &u.values, v.degree, &v.values, None),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::InputDocument;

    const Q: Field = Field::Rationals;

    fn load(text: &str) -> SimplicialComplex {
        SimplicialComplex::from_document(&InputDocument::from_json(text).unwrap()).unwrap()
    }

    fn torus() -> SimplicialComplex {
        load(include_str!("../../../corpus/minimal_torus.json"))
    }

    #[test]
    fn circle_and_torus_dimensions() {
        let c3 = SimplicialComplex::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(untwisted_cohomology(&c3, Q, 1).dim(), 1);
        let t = torus();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        assert_eq!(untwisted_cohomology(&t, Q, 1).dim(), 2);
        assert_eq!(betti_numbers(&t, Q), vec![1, 2, 1]);
        assert_eq!(betti_numbers(&t, Field::Prime(2)), vec![1, 2, 1]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let t = torus();
        for q in 0..2 {
            assert!(t.coboundary_matrix(q + 1, Q).mul(&t.coboundary_matrix(q, Q)).is_zero());
        }
    }

    #[test]
    fn torus_cup_products() {
        let t = torus();
        let h1 = untwisted_cohomology(&t, Q, 1);
        let h2 = untwisted_cohomology(&t, Q, 2);
        let u = Cochain::new(1, h1.reps()[0].clone());
        let v = Cochain::new(1, h1.reps()[1].clone());
        let uv = cup_untwisted(&t, &u, &v).unwrap();
        assert!(h2.is_cocycle(&uv.values));
        assert!(!h2.is_exact(&uv.values));
        for w in [&u, &v] {
            let sq = cup_untwisted(&t, w, w).unwrap();
            assert!(h2.is_exact(&sq.values));
        }
        let unit = Cochain::unit(&t, Q);
        let left = cup_untwisted(&t, &unit, &u).unwrap();
        assert_eq!(left.values, u.values);
    }

    #[test]
    fn primitive_solves_coboundary() {
        let t = torus();
        let h1 = untwisted_cohomology(&t, Q, 1);
        let f: Vec<Scalar> = (0..7).map(|i| Q.from_i64(i * i - 3)).collect();
        let df = t.coboundary_matrix(0, Q).mul_vec(&f);
        assert!(h1.is_exact(&df));
        let y = h1.primitive(&df, 7).unwrap();
        assert_eq!(t.coboundary_matrix(0, Q).mul_vec(&y), df);
        assert!(h1.primitive(&h1.reps()[0], 7).is_none());
    }
}
