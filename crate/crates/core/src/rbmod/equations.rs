//! Linear systems whose unknown is a matrix `X` (rows × cols), vectorized
//! row-major: `X[a][b]` is unknown `a·cols + b`.

use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar, Subspace, Vector};

pub(crate) struct MatrixEquations {
    field: Field,
    rows: usize,
    cols: usize,
    lhs: Vec<Vector>,
    rhs: Vec<Scalar>,
}

impl MatrixEquations {
    pub fn new(field: Field, rows: usize, cols: usize) -> MatrixEquations {
        MatrixEquations {
            field,
            rows,
            cols,
            lhs: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn unknowns(&self) -> usize {
        self.rows * self.cols
    }

    fn push(&mut self, row: Vector, rhs: Scalar) {
        if row.iter().all(Scalar::is_zero) && rhs.is_zero() {
            return;
        }
        self.lhs.push(row);
        self.rhs.push(rhs);
    }

    /// `X·a = b·X` with `a` cols×cols and `b` rows×rows.
    pub fn intertwine(&mut self, a: &Matrix, b: &Matrix) {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let mut row = vec![self.field.zero(); self.unknowns()];
                // (X a)[r][c] = Σ_k X[r][k] a[k][c]
                for k in 0..self.cols {
                    let x = a.get(k, c);
                    if !x.is_zero() {
                        row[r * self.cols + k] += x;
                    }
                }
                // (b X)[r][c] = Σ_k b[r][k] X[k][c]
                for k in 0..self.rows {
                    let x = b.get(r, k);
                    if !x.is_zero() {
                        row[k * self.cols + c] -= x;
                    }
                }
                self.push(row, self.field.zero());
            }
        }
    }

    /// `f·X = g` with `f` k×rows and `g` k×cols.
    pub fn left_factor_equals(&mut self, f: &Matrix, g: &Matrix) {
        for r in 0..f.rows() {
            for c in 0..self.cols {
                let mut row = vec![self.field.zero(); self.unknowns()];
                for k in 0..self.rows {
                    let x = f.get(r, k);
                    if !x.is_zero() {
                        row[k * self.cols + c] = x.clone();
                    }
                }
                self.push(row, g.get(r, c).clone());
            }
        }
    }

    /// `X·v = w`
    pub fn maps_to(&mut self, v: &[Scalar], w: &[Scalar]) {
        for r in 0..self.rows {
            let mut row = vec![self.field.zero(); self.unknowns()];
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[r * self.cols + k] = x.clone();
                }
            }
            self.push(row, w[r].clone());
        }
    }

    fn coefficient_matrix(&self) -> Matrix {
        if self.lhs.is_empty() {
            return Matrix::zeros(self.field, 0, self.unknowns());
        }
        Matrix::from_rows(self.field, self.lhs.clone()).expect("rows have equal length")
    }

    /// Solution space of the homogeneous part.
    pub fn kernel(&self) -> Subspace {
        if self.lhs.is_empty() {
            return Subspace::full(self.field, self.unknowns());
        }
        self.coefficient_matrix().kernel()
    }

    /// A particular solution, if consistent.
    pub fn solve(&self) -> Result<Option<Matrix>> {
        if self.lhs.is_empty() {
            return Ok(Some(Matrix::zeros(self.field, self.rows, self.cols)));
        }
        let x = self.coefficient_matrix().solve(&self.rhs)?;
        Ok(x.map(|x| self.to_matrix(&x)))
    }

    pub fn to_matrix(&self, x: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            x[r * self.cols + c].clone()
        })
    }
}

pub(crate) fn vectorize(m: &Matrix) -> Vector {
    m.entries().to_vec()
}
