//! Dense integer matrices with overflow-checked arithmetic.
//!
//! Entries are stored as `i64`; products and determinants are accumulated in
//! `i128` and narrowed back with a checked conversion, so an overflow is
//! always reported as [`Error::Overflow`] rather than wrapping.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

pub(crate) fn ck<T>(v: Option<T>, what: &'static str) -> Result<T> {
    v.ok_or(Error::Overflow(what))
}

pub(crate) fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(columns: &[C]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, |col| col.as_ref().len());
        let mut m = Self::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: col.len() });
            }
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_major(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let p = self.get(i, k) as i128 * other.get(k, j) as i128;
                    acc = ck(acc.checked_add(p), "matrix product")?;
                }
                out.set(i, j, narrow(acc, "matrix product")?);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        (0..self.rows)
            .map(|i| {
                let mut acc: i128 = 0;
                for (k, &xk) in x.iter().enumerate() {
                    acc = ck(acc.checked_add(self.get(i, k) as i128 * xk as i128), "matrix-vector product")?;
                }
                narrow(acc, "matrix-vector product")
            })
            .collect()
    }

    pub fn scale(&self, c: i64) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|&v| ck(v.checked_mul(c), "scalar multiple"))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `Tᵀ · self · T`.
    pub fn congruent(&self, t: &IntMatrix) -> Result<IntMatrix> {
        t.transpose().mul(&self.mul(t)?)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    pub(crate) fn to_wide(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| v as i128).collect()).collect()
    }

    pub(crate) fn from_wide(rows: usize, cols: usize, m: &[Vec<i128>]) -> Result<IntMatrix> {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, narrow(m[i][j], "matrix entry")?);
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        det_wide(self.to_wide())
    }

    /// Leading principal minors `det(M[0..k, 0..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<i128>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        (1..=n)
            .map(|k| {
                let sub: Vec<Vec<i128>> =
                    (0..k).map(|i| (0..k).map(|j| self.get(i, j) as i128).collect()).collect();
                det_wide(sub)
            })
            .collect()
    }

    /// Classical adjugate, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(IntMatrix::identity(1));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<i128>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| self.get(r, c) as i128).collect())
                    .collect();
                let d = det_wide(minor)?;
                let cof = if (i + j) % 2 == 0 { d } else { -d };
                out.set(j, i, narrow(cof, "adjugate")?);
            }
        }
        Ok(out)
    }

    /// Exact inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let d = self.determinant()?;
        match d {
            1 => self.adjugate(),
            -1 => self.adjugate()?.scale(-1),
            0 => Err(Error::Singular),
            _ => Err(Error::InvalidArgument(format!("matrix has determinant {d}, not ±1"))),
        }
    }
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub(crate) fn det_wide(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ck(m[k][k].checked_mul(m[i][j]), "determinant")?;
                let b = ck(m[i][k].checked_mul(m[k][j]), "determinant")?;
                m[i][j] = ck(a.checked_sub(b), "determinant")? / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Arbitrary-precision matrix, used where intermediate growth can exceed
/// `i64` (the Smith transforms of unstructured inputs).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub(crate) fn from_wide(m: &[Vec<i128>], cols: usize) -> Self {
        BigMatrix { rows: m.len(), cols, data: m.iter().flatten().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &BigMatrix) -> Result<BigMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                data.push((0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        Ok(BigMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Exact determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &m[n - 1][n - 1] })
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_ok_and(|d| d.abs().is_one())
    }

    /// Checked conversion to `i64` entries.
    pub fn to_int(&self) -> Result<IntMatrix> {
        let data = self.data.iter().map(|v| v.to_i64().ok_or(Error::Overflow("matrix entry"))).collect::<Result<_>>()?;
        IntMatrix::from_row_major(self.rows, self.cols, data)
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        BigMatrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(|&v| BigInt::from(v)).collect() }
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    /// Row-major with `;` between rows, the same syntax the CLI accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}
