//! Dense exact linear algebra. Matrices act on column vectors (`M v`); the
//! module layer uses the transposed, row-vector convention and says so where it
//! matters.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, cols, rows)
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length");
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let b = self.get(k, c);
                if !b.is_zero() {
                    *o = &*o + &(a * b);
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack columns");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix { field, rows, cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.put(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                out.put(r * other.rows, c * other.cols, &other.scale(a));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns, pivots in increasing order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = m.get(lead, c).inv();
            for j in c..m.cols {
                let idx = lead * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(lead, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = &f * b;
                    let idx = r * m.cols + j;
                    m.data[idx] = &m.data[idx] - &t;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.truncate_rows(pivots.len());
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn truncate_rows(&mut self, n: usize) {
        self.data.truncate(n * self.cols);
        self.rows = n;
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `x · self = b` for a row vector `x`, if solvable.
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        // (self^T) x^T = b^T
        let t = self.transpose();
        let mut aug = Matrix::zeros(self.field, t.rows, t.cols + 1);
        aug.put(0, 0, &t);
        for (r, x) in b.iter().enumerate() {
            aug.set(r, t.cols, x.clone());
        }
        let (red, piv) = aug.rref();
        if piv.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); t.cols];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = red.get(r, t.cols).clone();
        }
        Some(x)
    }
}

/// A subspace of `field^ambient`, stored canonically as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row span of the given vectors.
    pub fn span(field: Field, ambient: usize, vectors: &Matrix) -> Self {
        assert_eq!(vectors.cols(), ambient, "ambient dimension");
        debug_assert_eq!(vectors.field(), field, "field");
        let (basis, pivots) = vectors.rref();
        Subspace { ambient, basis, pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        Self::span(field, ambient, &Matrix::from_rows(field, ambient, vectors))
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, x) in self.basis.row(r).iter().enumerate() {
                if !x.is_zero() {
                    v[c] = &v[c] - &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.row_vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of a member vector in the RREF basis.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Non-pivot coordinates: the canonical complement basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_piv = vec![false; self.ambient];
        for &p in &self.pivots {
            is_piv[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_piv[c]).collect()
    }

    /// Orthogonal complement with respect to the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel_basis(&self.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        let m = Matrix::vstack(self.field(), self.ambient, &[&self.basis, &other.basis]);
        Subspace::span(self.field(), self.ambient, &m)
    }

    /// Image of the subspace under the row-vector map `v ↦ v · m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field(), m.cols(), &self.basis.mul(m))
    }
}

/// Basis of `{v : M vᵀ = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let (red, pivots) = m.rref();
    let mut is_piv = vec![false; m.cols()];
    for &p in &pivots {
        is_piv[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_piv[c]) {
        let mut v = vec![field.zero(); m.cols()];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free);
        }
        vecs.push(v);
    }
    Subspace::from_vectors(field, m.cols(), vecs)
}

/// `{v : f v ∈ W}` for `f` acting on column vectors.
pub fn preimage(f: &Matrix, w: &Subspace) -> Result<Subspace> {
    if w.ambient_dim() != f.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subspace in dimension {} but map has {} rows",
            w.ambient_dim(),
            f.rows()
        )));
    }
    let ann = w.annihilator();
    Ok(kernel_basis(&ann.basis().mul(f)))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "intersecting subspaces of dimension {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let ann = a.annihilator().sum(&b.annihilator());
    Ok(kernel_basis(ann.basis()))
}

/// `{v : v · m = 0}`, the kernel in the row-vector convention.
pub fn left_kernel(m: &Matrix) -> Subspace {
    kernel_basis(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: Field = Field::Prime(32003);

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(F, 3)).is_zero());
        assert!(kernel_basis(&Matrix::zeros(F, 2, 3)).is_full());
        let q = Field::Rationals;
        let k = kernel_basis(&Matrix::from_i64(q, &[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(k, Subspace::span(q, 3, &Matrix::from_i64(q, &[&[1, -1, 0]])));
    }

    #[test]
    fn preimage_examples() {
        let w = Subspace::span(F, 2, &Matrix::from_i64(F, &[&[3, 5]]));
        assert_eq!(preimage(&Matrix::identity(F, 2), &w).unwrap(), w);
        let f = Matrix::from_i64(F, &[&[1, 0], &[0, 0]]);
        let full = Subspace::full(F, 2);
        assert_eq!(preimage(&f, &full).unwrap(), full);
        let line = Subspace::span(F, 2, &Matrix::from_i64(F, &[&[1, 0]]));
        assert!(preimage(&f, &line).unwrap().is_full());
        assert!(preimage(&Matrix::identity(F, 3), &line).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(F, 2, &Matrix::from_i64(F, &[&[1, 2]]));
        assert_eq!(intersect(&a, &Subspace::full(F, 2)).unwrap(), a);
        assert!(intersect(&a, &Subspace::zero(F, 2)).unwrap().is_zero());
        let b = Subspace::span(F, 2, &Matrix::from_i64(F, &[&[1, 3]]));
        assert!(intersect(&a, &b).unwrap().is_zero());
        assert!(intersect(&a, &Subspace::zero(F, 3)).is_err());
    }

    fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-2i64..3, rows * cols)
            .prop_map(move |v| Matrix::from_vec(F, rows, cols, v.into_iter().map(|x| F.from_i64(x)).collect()))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| mat(r, c))) {
            prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), m.cols());
        }

        #[test]
        fn preimage_of_kernel((f, g) in (1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(a, b, c)| (mat(b, a), mat(c, b))))
        {
            let lhs = preimage(&f, &kernel_basis(&g)).unwrap();
            let rhs = kernel_basis(&g.mul(&f));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn deterministic_basis(m in mat(3, 4)) {
            prop_assert_eq!(kernel_basis(&m), kernel_basis(&m.clone()));
        }
    }
}
