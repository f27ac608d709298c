//! Positive-definite integral quadratic forms.
//!
//! A form is stored as its full symmetric Gram matrix `M`, with value
//! `Q(x) = xᵀ M x`. Off-diagonal entries are the full bilinear coefficients,
//! so `x² + y² + 2z² + 2yz` has Gram `[[1,0,0],[0,1,1],[0,1,2]]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{ck, narrow, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    gram: IntMatrix,
}

/// An integer matrix with determinant ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMap(IntMatrix);

impl UnimodularMap {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let d = matrix.determinant()?;
        if d.abs() != 1 {
            return Err(Error::InvalidArgument(format!("determinant {d} is not ±1")));
        }
        Ok(UnimodularMap(matrix))
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap(IntMatrix::identity(n))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn determinant(&self) -> i128 {
        // Validated at construction.
        self.0.determinant().unwrap_or(0)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(UnimodularMap(self.0.unimodular_inverse()?))
    }
}

impl QuadForm {
    /// Validates symmetry and positive definiteness (all leading minors > 0).
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.rows() == 0 {
            return Err(Error::InvalidArgument("form must have dimension at least 1".into()));
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        for (k, minor) in gram.leading_minors()?.into_iter().enumerate() {
            if minor <= 0 {
                return Err(Error::NotPositiveDefinite { index: k + 1, minor });
            }
        }
        Ok(QuadForm { gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The diagonal form `⟨a₁, …, aₙ⟩`.
    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::diagonal(entries))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram.get(i, j)
    }

    /// `det(M)`; always positive.
    pub fn determinant(&self) -> i128 {
        self.gram.determinant().unwrap_or(0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| i == j || self.entry(i, j) == 0))
    }

    pub fn evaluate(&self, x: &[i64]) -> Result<i64> {
        narrow(self.evaluate_wide(x)?, "form value")
    }

    pub(crate) fn evaluate_wide(&self, x: &[i64]) -> Result<i128> {
        self.bilinear_wide(x, x)
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        narrow(self.bilinear_wide(x, y)?, "bilinear value")
    }

    pub(crate) fn bilinear_wide(&self, x: &[i64], y: &[i64]) -> Result<i128> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut acc: i128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row = ck(row.checked_add(self.entry(i, j) as i128 * y[j] as i128), "bilinear value")?;
            }
            acc = ck(row.checked_mul(x[i] as i128).and_then(|p| acc.checked_add(p)), "bilinear value")?;
        }
        Ok(acc)
    }

    /// The form `c·Q` (Gram scaled by `c > 0`).
    pub fn scaled(&self, c: i64) -> Result<Self> {
        if c <= 0 {
            return Err(Error::NonPositive(c));
        }
        Ok(QuadForm { gram: self.gram.scale(c)? })
    }

    /// Restriction to the lattice spanned by the columns of `basis`:
    /// the form with Gram `basisᵀ · M · basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> Result<Self> {
        if basis.rows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: basis.rows() });
        }
        QuadForm::new(self.gram.congruent(basis)?)
    }

    /// Orthogonal sum `self ⊥ other`.
    pub fn orthogonal_sum(&self, other: &QuadForm) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let mut g = IntMatrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.entry(i, j));
            }
        }
        for i in 0..m {
            for j in 0..m {
                g.set(n + i, n + j, other.entry(i, j));
            }
        }
        QuadForm { gram: g }
    }

    /// Pairwise (Gauss) reduction: returns `(R, T)` with `R = Tᵀ M T`,
    /// diagonal sorted ascending and `2|R_ij| ≤ min(R_ii, R_jj)` for all `i ≠ j`.
    /// For dimension ≤ 2 this is Minkowski reduction.
    pub fn reduce(&self) -> Result<(QuadForm, UnimodularMap)> {
        let n = self.dim();
        let mut basis = IntMatrix::identity(n);
        let mut g = self.gram.clone();
        loop {
            // sort by norm
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| g.get(i, i));
            if order.iter().enumerate().any(|(k, &i)| k != i) {
                let mut perm = IntMatrix::zeros(n, n);
                for (k, &i) in order.iter().enumerate() {
                    perm.set(i, k, 1);
                }
                basis = basis.mul(&perm)?;
                g = self.gram.congruent(&basis)?;
            }
            let mut changed = false;
            'scan: for j in 0..n {
                for i in 0..n {
                    if i == j || g.get(i, i) > g.get(j, j) {
                        continue;
                    }
                    let (mii, mij) = (g.get(i, i) as i128, g.get(i, j) as i128);
                    if 2 * mij.abs() > mii {
                        // nearest integer to mij / mii
                        let q = (2 * mij + mii).div_euclid(2 * mii);
                        let q = narrow(q, "reduction")?;
                        let mut step = IntMatrix::identity(n);
                        step.set(i, j, -q);
                        basis = basis.mul(&step)?;
                        g = self.gram.congruent(&basis)?;
                        changed = true;
                        break 'scan;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok((QuadForm { gram: g }, UnimodularMap(basis)))
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm[{}]", self.gram)
    }
}

impl fmt::Display for QuadForm {
    /// `⟨a,b,c⟩` for diagonal forms, the row-major Gram matrix otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            let d: Vec<String> = (0..self.dim()).map(|i| self.entry(i, i).to_string()).collect();
            write!(f, "<{}>", d.join(","))
        } else {
            write!(f, "[{}]", self.gram)
        }
    }
}
