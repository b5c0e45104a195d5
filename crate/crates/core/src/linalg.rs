//! Dense exact linear algebra: row reduction, kernels, subspace intersection
//! and linear solves over a [`Field`].
//!
//! Subspaces are always kept in canonical form (the nonzero rows of their
//! reduced row-echelon form), so two subspaces are equal exactly when their
//! canonical bases are equal.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A coordinate vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Matrix> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a matrix with {cols} columns", bad.len())));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data: rows })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, data).expect("rectangular input")
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
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[Vector] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c][r] = self.data[r][c].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok(self.data.iter().map(|row| dot(self.field, row, v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let t = other.transpose();
        let data = self
            .data
            .iter()
            .map(|row| t.data.iter().map(|col| dot(self.field, row, col)).collect())
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: other.cols, data })
    }
}

pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row-echelon form. Zero rows are kept at the bottom so that
/// `reduced` has the same shape as the input.
pub fn rref(m: &Matrix) -> Rref {
    let mut rows = m.data.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inverse();
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let factor = row[col].clone();
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    Rref {
        rank: pivots.len(),
        reduced: Matrix { field: m.field, rows: m.rows, cols: m.cols, data: rows },
        pivot_columns: pivots,
    }
}

/// `row -= factor * other`, skipping zero entries of `other`.
fn axpy(row: &mut [Scalar], factor: &Scalar, other: &[Scalar]) {
    for (x, y) in row.iter_mut().zip(other) {
        if !y.is_zero() {
            *x = &*x - &(factor * y);
        }
    }
}

/// Inverse of a square matrix, `None` if singular or not square.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let augmented: Vec<Vector> = (0..n)
        .map(|r| {
            let mut row = m.data[r].clone();
            row.extend((0..n).map(|c| if c == r { m.field.one() } else { m.field.zero() }));
            row
        })
        .collect();
    let r = rref(&Matrix { field: m.field, rows: n, cols: 2 * n, data: augmented });
    if r.pivot_columns.iter().take(n).copied().ne(0..n) || r.rank < n {
        return None;
    }
    let data = r.reduced.data.into_iter().map(|row| row[n..].to_vec()).collect();
    Some(Matrix { field: m.field, rows: n, cols: n, data })
}

pub fn rank(m: &Matrix) -> usize {
    let mut s = Subspace::zero(m.field, m.cols);
    for row in &m.data {
        s.insert(row.clone());
    }
    s.dim()
}

/// Basis of `{x : m x = 0}` in canonical (reduced) form.
pub fn kernel(m: &Matrix) -> Vec<Vector> {
    let r = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivot_columns {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &p) in r.pivot_columns.iter().enumerate() {
            let x = r.reduced.get(row, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    Subspace::spanned_by(field, m.cols, basis).into_basis()
}

/// Canonical basis of `span(a) ∩ span(b)` inside a space of dimension `ambient`.
pub fn intersect(field: Field, a: &[Vector], b: &[Vector], ambient: usize) -> Result<Vec<Vector>> {
    check_lengths(a, ambient)?;
    check_lengths(b, ambient)?;
    let sa = Subspace::spanned_by(field, ambient, a.to_vec());
    let sb = Subspace::spanned_by(field, ambient, b.to_vec());
    Ok(sa.intersect(&sb).into_basis())
}

fn check_lengths(vs: &[Vector], ambient: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::Dimension(format!("vector of length {} in ambient dimension {ambient}", v.len()))),
        None => Ok(()),
    }
}

/// Solves `m x = rhs`, setting free variables to zero.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Vector> {
    if rhs.len() != m.rows {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", rhs.len(), m.rows)));
    }
    let mut aug = Vec::with_capacity(m.rows);
    for (row, b) in m.data.iter().zip(rhs) {
        let mut r = row.clone();
        r.push(b.clone());
        aug.push(r);
    }
    let aug = Matrix { field: m.field, rows: m.rows, cols: m.cols + 1, data: aug };
    let r = rref(&aug);
    if r.pivot_columns.last() == Some(&m.cols) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (row, &p) in r.pivot_columns.iter().enumerate() {
        x[p] = r.reduced.get(row, m.cols).clone();
    }
    Ok(x)
}

/// A subspace of `field^ambient`, stored as its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    /// Rows in rref, sorted by pivot column.
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let rows = Matrix::identity(field, ambient).data;
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn spanned_by(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_basis(self) -> Vec<Vector> {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &mut Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                axpy(v, &factor, row);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    /// Adds `v` to the spanning set. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match the ambient dimension");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                axpy(row, &factor, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // Solve sum_i x_i a_i = sum_j y_j b_j: kernel of [A^T | -B^T].
        let (r, s) = (self.dim(), other.dim());
        let mut cols = Vec::with_capacity(self.ambient);
        for k in 0..self.ambient {
            let mut row = Vec::with_capacity(r + s);
            row.extend(self.rows.iter().map(|a| a[k].clone()));
            row.extend(other.rows.iter().map(|b| -&b[k]));
            cols.push(row);
        }
        let m = Matrix { field: self.field, rows: self.ambient, cols: r + s, data: cols };
        let vectors = kernel(&m).into_iter().map(|x| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (coef, a) in x[..r].iter().zip(&self.rows) {
                if !coef.is_zero() {
                    for (acc, ai) in v.iter_mut().zip(a) {
                        if !ai.is_zero() {
                            *acc = &*acc + &(coef * ai);
                        }
                    }
                }
            }
            v
        });
        Subspace::spanned_by(self.field, self.ambient, vectors)
    }

    /// Coordinates of `v` with respect to the canonical basis, or `None` if
    /// `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}
