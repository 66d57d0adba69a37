use std::fmt;

use crate::field::{Field, Scalar};
use crate::laurent::poly::LaurentPoly;
use crate::linalg::Matrix;

/// Dense matrix over `k[t, 1/t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            field,
            rows,
            cols,
            data: vec![LaurentPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentPoly) {
        assert_eq!(x.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero(self.field);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Image under `t -> a`.
    pub fn specialize(&self, a: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    m.set(i, j, x.eval(a).expect("nonzero evaluation point"));
                }
            }
        }
        m
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += f * row[source]`, touching columns `from..`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, f: &LaurentPoly, from: usize) {
        for j in from..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[target * self.cols + j] + &(f * s);
            self.data[target * self.cols + j] = v;
        }
    }

    /// `col[target] += f * col[source]`, touching rows `from..`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, f: &LaurentPoly, from: usize) {
        for i in from..self.rows {
            let s = &self.data[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[i * self.cols + target] + &(f * s);
            self.data[i * self.cols + target] = v;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: &LaurentPoly) {
        for j in 0..self.cols {
            let v = &self.data[i * self.cols + j] * f;
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by cofactor expansion; intended for small matrices.
    pub fn determinant(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> LaurentPoly {
        if cols.is_empty() {
            return LaurentPoly::one(self.field);
        }
        let mut acc = LaurentPoly::zero(self.field);
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.minor_det(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        let sub = LaurentMatrix::from_rows(
            self.field,
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        );
        if rows.is_empty() {
            return LaurentPoly::one(self.field);
        }
        sub.determinant()
    }
}

impl fmt::Display for LaurentMatrix {
    /// One line per row, entries rendered as `coef*t^e` sums.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        fmt::Display::fmt(self, f)
    }
}
