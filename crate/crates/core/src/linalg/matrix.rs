//! Dense matrices over ℚ(i).

use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::GaussianRational;
use crate::error::{Error, Result};

/// A dense, row-major matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!(
                "matrix must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::InvalidShape(format!(
                "ragged rows: expected length {n_cols}, found {}",
                bad.len()
            )));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// Integer literal convenience. Panics on an empty or ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| v.into()).collect())
                .collect(),
        )
        .expect("well-formed integer matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussianRational::one())
    }

    /// `c·I` of size n.
    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    /// The matrix unit E_ij of size n.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.entries[i * n + j] = GaussianRational::one();
        m
    }

    /// Standard basis column vector e_i of length n.
    pub fn basis_column(n: usize, i: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.entries[i] = GaussianRational::one();
        m
    }

    /// Standard basis row vector (a coordinate functional) of length n.
    pub fn basis_row(n: usize, i: usize) -> Self {
        let mut m = Self::zeros(1, n);
        m.entries[i] = GaussianRational::one();
        m
    }

    /// Single Jordan block with eigenvalue zero: ones on the superdiagonal.
    pub fn jordan_nilpotent(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = GaussianRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.entries.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: 1,
            entries: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &GaussianRational)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_shape(&self, other: &Matrix, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::mismatch(op, self.shape(), other.shape()))
        }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::mismatch("mul", self.shape(), other.shape()));
        }
        let mut out = vec![GaussianRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// `self − c·I`.
    pub fn shift(&self, c: &GaussianRational) -> Result<Matrix> {
        let n = self.require_square("shift")?;
        let mut out = self.clone();
        for i in 0..n {
            out.entries[i * n + i] -= c;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<GaussianRational> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self.get(i, i)).sum())
    }

    /// `self^k`, with `self^0 = I`.
    pub fn pow(&self, k: u32) -> Result<Matrix> {
        let n = self.require_square("pow")?;
        let mut acc = Matrix::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.require_square("commutator")?;
        self.same_shape(other, "commutator")?;
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn commutes_with(&self, other: &Matrix) -> Result<bool> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// Kronecker product: block (i, j) of the result is `self[i, j]·other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![GaussianRational::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Column-stacking vectorization: columns of `self` top to bottom.
    pub fn vec(&self) -> Matrix {
        Matrix {
            rows: self.rows * self.cols,
            cols: 1,
            entries: self.transpose().entries,
        }
    }

    /// Inverse of [`Matrix::vec`].
    pub fn unvec(v: &Matrix, rows: usize, cols: usize) -> Result<Matrix> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::InvalidShape(format!(
                "cannot unvec a {}x{} matrix into {rows}x{cols}",
                v.rows, v.cols
            )));
        }
        Ok(Matrix::new(cols, rows, v.entries.clone())?.transpose())
    }

    pub(crate) fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|e| -e)
    }
}

impl std::ops::Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

/// The rank-one operator `z ↦ f(z)·x`, realised as the outer product `x·f`.
///
/// `f` is a 1×d row vector (a linear functional), `x` a d×1 column.
pub fn rank_one(f: &Matrix, x: &Matrix) -> Result<Matrix> {
    if f.rows != 1 || x.cols != 1 || f.cols != x.rows {
        return Err(Error::mismatch("rank_one", f.shape(), x.shape()));
    }
    x.checked_mul(f)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_vecs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GaussianRational>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.row_vecs().map(<[_]>::to_vec).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "entries do not match declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        Matrix::new(
            repr.rows,
            repr.cols,
            repr.entries.into_iter().flatten().collect(),
        )
        .map_err(D::Error::custom)
    }
}
