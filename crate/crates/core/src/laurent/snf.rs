//! Smith normal form over the principal ideal domain `k[t, 1/t]`.
//!
//! Elimination uses Euclidean division with the span `high - low` as the
//! size function. Pivots are chosen as the entry of least (span, height),
//! ties broken by position, which keeps the output deterministic and limits
//! coefficient growth over `Q`. Every pivot is scaled to its canonical
//! associate as soon as it is final.

use crate::laurent::matrix::LaurentMatrix;
use crate::laurent::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSnf {
    /// Canonical invariant factors, one per diagonal position
    /// (`min(rows, cols)` entries): units, then proper factors, then zeros.
    pub diagonal: Vec<LaurentPoly>,
    /// Row transform (`rows x rows`); `None` when not tracked.
    pub u: Option<LaurentMatrix>,
    /// Column transform (`cols x cols`); `None` when not tracked.
    pub v: Option<LaurentMatrix>,
    pub rank: usize,
}

impl LaurentSnf {
    /// Nonzero diagonal entries that are not units.
    pub fn invariant_factors(&self) -> Vec<LaurentPoly> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_unit())
            .cloned()
            .collect()
    }

    /// The diagonal as a full `rows x cols` matrix.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> LaurentMatrix {
        let field = self.diagonal.first().map(LaurentPoly::field);
        let mut d = LaurentMatrix::zeros(field.unwrap_or(crate::field::Field::Rationals), rows, cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

/// Smith normal form with both transforms: `U * A * V = diag`.
pub fn smith_normal_form(a: &LaurentMatrix) -> LaurentSnf {
    reduce(a, true, true)
}

/// Invariant factors only, no transforms.
pub fn smith_diagonal(a: &LaurentMatrix) -> LaurentSnf {
    reduce(a, false, false)
}

/// Tracks only the row transform `U`.
pub fn smith_with_row_transform(a: &LaurentMatrix) -> LaurentSnf {
    reduce(a, true, false)
}

struct Work {
    m: LaurentMatrix,
    u: Option<LaurentMatrix>,
    v: Option<LaurentMatrix>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, f: &LaurentPoly, from: usize) {
        self.m.add_row_multiple(target, source, f, from);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, f, 0);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, f: &LaurentPoly, from: usize) {
        self.m.add_col_multiple(target, source, f, from);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, f, 0);
        }
    }

    fn scale_row(&mut self, i: usize, f: &LaurentPoly) {
        self.m.scale_row(i, f);
        if let Some(u) = &mut self.u {
            u.scale_row(i, f);
        }
    }
}

fn pivot_key(p: &LaurentPoly) -> (usize, u64) {
    (p.span().unwrap_or(usize::MAX), p.height())
}

fn reduce(a: &LaurentMatrix, track_u: bool, track_v: bool) -> LaurentSnf {
    let field = a.field();
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        m: a.clone(),
        u: track_u.then(|| LaurentMatrix::identity(field, rows)),
        v: track_v.then(|| LaurentMatrix::identity(field, cols)),
    };
    let n = rows.min(cols);
    let mut rank = 0;
    for k in 0..n {
        let mut best: Option<((usize, u64), usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let x = w.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let key = pivot_key(x);
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            let pivot = w.m.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let x = w.m.get(i, k);
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem(&pivot).expect("nonzero pivot");
                if !q.is_zero() {
                    w.add_row(i, k, &-&q, k);
                }
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                let x = w.m.get(k, j);
                if x.is_zero() {
                    continue;
                }
                let (q, r) = x.div_rem(&pivot).expect("nonzero pivot");
                if !q.is_zero() {
                    w.add_col(j, k, &-&q, k);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                // a remainder of smaller span became the new pivot candidate
                let mut cand: Option<((usize, u64), bool, usize)> = None;
                for i in k + 1..rows {
                    let x = w.m.get(i, k);
                    if !x.is_zero() && cand.as_ref().is_none_or(|(b, _, _)| pivot_key(x) < *b) {
                        cand = Some((pivot_key(x), true, i));
                    }
                }
                for j in k + 1..cols {
                    let x = w.m.get(k, j);
                    if !x.is_zero() && cand.as_ref().is_none_or(|(b, _, _)| pivot_key(x) < *b) {
                        cand = Some((pivot_key(x), false, j));
                    }
                }
                match cand {
                    Some((_, true, i)) => w.swap_rows(k, i),
                    Some((_, false, j)) => w.swap_cols(k, j),
                    None => {}
                }
                continue;
            }
            // row and column are clear; the pivot must divide the rest
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !pivot.divides(w.m.get(i, j))));
            match offender {
                Some(i) => w.add_row(k, i, &LaurentPoly::one(field), k),
                None => break,
            }
        }
        let (unit, _) = w.m.get(k, k).canonical();
        let inv = unit.unit_inverse().expect("unit");
        if !inv.is_one() {
            w.scale_row(k, &inv);
        }
        rank += 1;
    }
    let diagonal = (0..n).map(|i| w.m.get(i, i).clone()).collect();
    LaurentSnf {
        diagonal,
        u: w.u,
        v: w.v,
        rank,
    }
}

/// Decomposition of the module with `cols` generators and the rows of `A`
/// as relations: `Λ^free_rank ⊕ ⨁ Λ/(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<LaurentPoly>,
}

pub fn module_presentation(a: &LaurentMatrix) -> ModulePresentation {
    let snf = smith_diagonal(a);
    ModulePresentation {
        free_rank: a.cols() - snf.rank,
        invariant_factors: snf.invariant_factors(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    const Q: Field = Field::Rationals;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(Q, low, c)
    }

    fn check(a: &LaurentMatrix) -> LaurentSnf {
        let snf = smith_normal_form(a);
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        assert_eq!(u.mul(a).mul(v), snf.diagonal_matrix(a.rows(), a.cols()));
        assert!(u.determinant().is_unit());
        assert!(v.determinant().is_unit());
        for w in snf.diagonal.windows(2) {
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        snf
    }

    #[test]
    fn unit_entry_is_absorbed() {
        let a = LaurentMatrix::from_rows(Q, vec![vec![p(1, &[1]), p(0, &[1])], vec![p(0, &[]), p(0, &[-1, 1])]]);
        let snf = check(&a);
        assert_eq!(snf.diagonal, vec![p(0, &[1]), p(0, &[-1, 1])]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn zero_matrix() {
        let snf = check(&LaurentMatrix::zeros(Q, 2, 3));
        assert_eq!(snf.rank, 0);
        assert!(snf.diagonal.iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn single_entry() {
        let snf = check(&LaurentMatrix::from_rows(Q, vec![vec![p(0, &[-1, 1])]]));
        assert_eq!(snf.diagonal, vec![p(0, &[-1, 1])]);
    }

    #[test]
    fn presentations() {
        let one = module_presentation(&LaurentMatrix::from_rows(Q, vec![vec![p(0, &[-1, 1])]]));
        assert_eq!(
            one,
            ModulePresentation {
                free_rank: 0,
                invariant_factors: vec![p(0, &[-1, 1])]
            }
        );
        let free = module_presentation(&LaurentMatrix::zeros(Q, 1, 1));
        assert_eq!(
            free,
            ModulePresentation {
                free_rank: 1,
                invariant_factors: vec![]
            }
        );
        // (t-1)(t-2) = t^2 - 3t + 2
        let a = LaurentMatrix::from_rows(Q, vec![vec![p(0, &[2, -3, 1]), p(0, &[])], vec![p(0, &[]), p(0, &[1])]]);
        let pres = module_presentation(&a);
        assert_eq!(
            pres,
            ModulePresentation {
                free_rank: 0,
                invariant_factors: vec![p(0, &[2, -3, 1])]
            }
        );
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(t-1, t-2) has invariant factors 1, (t-1)(t-2)
        let a = LaurentMatrix::from_rows(
            Q,
            vec![vec![p(0, &[-1, 1]), p(0, &[])], vec![p(0, &[]), p(0, &[-2, 1])]],
        );
        let snf = check(&a);
        assert_eq!(snf.diagonal, vec![p(0, &[1]), p(0, &[2, -3, 1])]);
    }
}
