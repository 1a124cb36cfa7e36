use super::matrix::{rref_rows, Matrix};
use super::scalar::{Field, Scalar};
use super::vector::{self, Vector};

/// A linear subspace of `k^n`, stored by its reduced row echelon basis.
///
/// The echelon form is canonical, so two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::span(
            field,
            ambient,
            (0..ambient).map(|i| vector::unit(field, ambient, i)),
        )
    }

    pub fn span(
        field: Field,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vector>,
    ) -> Subspace {
        let rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "spanning vector has wrong length"))
            .collect();
        let (basis, pivots) = rref_rows(rows, ambient);
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.basis.clone())
            .unwrap_or_else(|_| Matrix::zeros(self.field, 0, self.ambient))
    }

    /// Remainder of `v` after clearing every pivot coordinate against the basis.
    /// Zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = -&out[p];
            vector::axpy(&mut out, &c, row);
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&self.reduce(v))
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in the stored basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(
            coords.len(),
            self.dim(),
            "coordinate vector has wrong length"
        );
        let mut out = vector::zeros(self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            vector::axpy(&mut out, c, row);
        }
        out
    }

    pub fn is_within(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        // columns: basis of self, then negated basis of other
        let m = Matrix::from_fn(self.field, self.ambient, a + b, |r, c| {
            if c < a {
                self.basis[c][r].clone()
            } else {
                -&other.basis[c - a][r]
            }
        });
        let kernel = m.kernel();
        Subspace::span(
            self.field,
            self.ambient,
            kernel.basis().iter().map(|k| self.combine(&k[..a])),
        )
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(
            map.cols(),
            self.ambient,
            "map does not act on this subspace"
        );
        Subspace::span(
            self.field,
            map.rows(),
            self.basis.iter().map(|b| map.mul_vec(b)),
        )
    }

    /// First basis vector whose image under `map` leaves the subspace.
    pub fn unstable_vector(&self, map: &Matrix) -> Option<Vector> {
        self.basis
            .iter()
            .find(|b| !self.contains(&map.mul_vec(b)))
            .cloned()
    }

    /// Matrix of `map` restricted to this subspace, in the stored basis.
    /// `None` if the subspace is not stable under `map`.
    pub fn restrict(&self, map: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&map.mul_vec(b)))
            .collect();
        Some(Matrix::from_columns(self.field, self.dim(), &cols?))
    }

    /// Inclusion of the subspace into the ambient space (basis as columns).
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// The quotient of the ambient space by this subspace.
    pub fn quotient(&self) -> Quotient {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        Quotient {
            sub: self.clone(),
            free: (0..self.ambient).filter(|&c| !is_pivot[c]).collect(),
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|b| vector::render(b)).collect();
        write!(f, "span{{{}}} ⊆ k^{}", rows.join(", "), self.ambient)
    }
}

/// `k^n / W` with coordinates taken at the non-pivot columns of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    sub: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn relations(&self) -> &Subspace {
        &self.sub
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }

    /// Ambient indices whose classes form the quotient basis.
    pub fn basis_indices(&self) -> &[usize] {
        &self.free
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.sub.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// The canonical representative of a class.
    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(
            coords.len(),
            self.dim(),
            "quotient coordinates have wrong length"
        );
        let mut out = vector::zeros(self.sub.field, self.sub.ambient);
        for (c, &i) in coords.iter().zip(&self.free) {
            out[i] = c.clone();
        }
        out
    }

    pub fn projection_matrix(&self) -> Matrix {
        let field = self.sub.field;
        let n = self.sub.ambient;
        let cols: Vec<Vector> = (0..n)
            .map(|i| self.project(&vector::unit(field, n, i)))
            .collect();
        Matrix::from_columns(field, self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Matrix {
        let field = self.sub.field;
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| self.lift(&vector::unit(field, self.dim(), i)))
            .collect();
        Matrix::from_columns(field, self.sub.ambient, &cols)
    }

    /// Matrix of the map induced on quotients by `map: ambient → target.ambient`.
    pub fn induced(&self, map: &Matrix, target: &Quotient) -> Matrix {
        target
            .projection_matrix()
            .mul(map)
            .mul(&self.section_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_decides_equality() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(f, 3, vec![v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn coordinates_recombine() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 3, 1]);
        let c = a.coordinates(&x).unwrap();
        assert_eq!(a.combine(&c), x);
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(f, 3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            a.intersection(&b),
            Subspace::span(f, 3, vec![v(&[0, 1, 0])])
        );
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
    }

    #[test]
    fn quotient_projection_kills_relations() {
        let f = Field::Rational;
        let w = Subspace::span(f, 3, vec![v(&[1, -1, 0])]);
        let q = w.quotient();
        assert_eq!(q.dim(), 2);
        assert!(vector::is_zero(&q.project(&v(&[2, -2, 0]))));
        assert_eq!(q.project(&v(&[1, 0, 0])), q.project(&v(&[0, 1, 0])));
        let p = q.projection_matrix();
        assert!(p.mul(&q.section_matrix()).is_identity());
    }
}
