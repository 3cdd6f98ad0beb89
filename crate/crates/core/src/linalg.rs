//! Dense exact linear algebra: row reduction, kernels, linear systems and subspaces.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, PartialEq)]
pub struct Rref<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t *= b;
                    out[(i, j)] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![S::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    let mut t = a.clone();
                    t *= x;
                    *o += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(&other.data) {
            *o += x;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= c;
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<S> {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Rows `rows` of `self`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix<S> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self` next to `other`.
    pub fn hstack(&self, other: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Block diagonal matrix.
    pub fn block_diagonal(blocks: &[Matrix<S>]) -> Matrix<S> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] *= &inv;
                }
            }
            let pivot_row: Vec<S> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                let base = i * m.cols;
                for (k, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        m.data[base + c + k].sub_mul_assign(&factor, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space as a [`Subspace`] whose coordinate positions are the free columns.
    pub fn kernel(&self) -> Subspace<S> {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    let x = &reduced[(r, f)];
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect();
        Subspace {
            ambient: self.cols,
            vectors,
            positions: free,
        }
    }

    /// Basis of the null space; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        self.kernel().vectors
    }

    /// A particular solution of `self * x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Result<Option<Vec<S>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let rhs_col = Matrix::from_columns(self.rows, &[rhs.to_vec()]);
        let aug = self.hstack(&rhs_col)?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        debug_assert_eq!(self.mul_vec(&x)?, rhs);
        Ok(Some(x))
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Debug for Rref<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} pivots {:?} {:?}",
            self.rank, self.pivots, self.reduced
        )
    }
}

impl<S: fmt::Display> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.data[i * self.cols + j])?;
            }
        }
        Ok(())
    }
}

/// A subspace of `S^ambient` with a basis in "unit position" form.
///
/// For every basis vector `vectors[i]` and every `j`, `vectors[i][positions[j]]` is `1` if
/// `i == j` and `0` otherwise. Coordinates of a member `v` are therefore read off as
/// `v[positions[..]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    vectors: Vec<Vec<S>>,
    positions: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            vectors: Vec::new(),
            positions: Vec::new(),
        }
    }

    /// Span of the given vectors (row-reduced).
    pub fn span(ambient: usize, spanning: Vec<Vec<S>>) -> Self {
        if spanning.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(ambient, spanning).expect("vector length");
        let Rref {
            reduced, pivots, ..
        } = m.rref();
        let vectors = (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect();
        Subspace {
            ambient,
            vectors,
            positions: pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix<S>) -> Self {
        let cols = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::span(m.rows(), cols)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// `v` minus its projection along the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.positions) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    o.sub_mul_assign(&c, x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of a member of the subspace.
    pub fn coords(&self, v: &[S]) -> Vec<S> {
        self.positions.iter().map(|&p| v[p].clone()).collect()
    }

    /// Ambient indices not used as positions; unit vectors there complete the basis.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.positions {
            used[p] = true;
        }
        (0..self.ambient).filter(|&j| !used[j]).collect()
    }

    /// Coordinates of the class of `v` in the quotient by this subspace, in the basis given by
    /// [`Subspace::complement_positions`].
    pub fn quotient_coords(&self, v: &[S]) -> Vec<S> {
        let r = self.reduce(v);
        self.complement_positions()
            .into_iter()
            .map(|j| r[j].clone())
            .collect()
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn to_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(self.ambient, &self.vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational};
    use num_traits::{One, Zero};

    fn q(v: i64) -> Rational {
        Rational::from_i64(v, Field::Rational).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_matrix() {
        let m = Matrix::<Rational>::zeros(0, 0);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn identity_is_reduced() {
        let m = Matrix::<Rational>::identity(3);
        let r = m.rref();
        assert_eq!(r.reduced, m);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rank_one() {
        let r = mat(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, mat(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernels() {
        assert!(Matrix::<Rational>::identity(4).kernel_basis().is_empty());
        assert_eq!(Matrix::<Rational>::zeros(2, 3).kernel_basis().len(), 3);
        let k = mat(&[&[1, 1, 0], &[0, 0, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1), q(0)]]);
    }

    #[test]
    fn solving() {
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(id.solve(&[q(1), q(0)]).unwrap(), Some(vec![q(1), q(0)]));
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(z.solve(&[q(1), q(0)]).unwrap(), None);
        let two = mat(&[&[2]]);
        let x = two.solve(&[q(3)]).unwrap().unwrap();
        assert_eq!(x, vec![q(3) / q(2)]);
        assert!(two.solve(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::span(3, vec![vec![q(1), q(1), q(0)], vec![q(2), q(2), q(1)]]);
        assert_eq!(s.dim(), 2);
        let v = vec![q(3), q(3), q(5)];
        assert!(s.contains(&v));
        let c = s.coords(&v);
        let rebuilt: Vec<Rational> = (0..3)
            .map(|j| {
                s.basis()
                    .iter()
                    .zip(&c)
                    .fold(Rational::zero(), |acc, (b, x)| {
                        acc + b[j].clone() * x.clone()
                    })
            })
            .collect();
        assert_eq!(rebuilt, v);
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        assert_eq!(s.complement_positions(), vec![1]);
        assert_eq!(
            s.quotient_coords(&[q(1), q(0), q(0)]),
            vec![-Rational::one()]
        );
    }
}
