//! Hermite and Smith normal forms over the integers.
//!
//! The Hermite form here is the column-style, lower-triangular variant: for an
//! `n×m` matrix `A` it returns `H = A·T` with `T` unimodular, pivots positive,
//! each pivot row reduced so that entries left of the pivot lie in
//! `[0, pivot)`, and zero columns moved to the end. Two matrices have the same
//! `H` exactly when their columns generate the same subgroup of `Zⁿ`.

use crate::error::Result;
use crate::matrix::{ck, BigMatrix, IntMatrix};

type Wide = Vec<Vec<i128>>;

/// Result of [`hnf`]: `input · transform = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
}

/// Result of [`snf`]: `left · input · right = d`.
///
/// The transforms are arbitrary precision: for unstructured inputs they can
/// legitimately outgrow `i64` even when `d` is small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: IntMatrix,
    pub left: BigMatrix,
    pub right: BigMatrix,
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | …` (including trailing zeros).
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }
}

fn identity_wide(n: usize) -> Wide {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn negate_col(m: &mut Wide, j: usize) {
    for row in m.iter_mut() {
        row[j] = -row[j];
    }
}

/// `Ck -= q·Cj`.
fn col_sub(m: &mut Wide, k: usize, j: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        row[k] = ck(q.checked_mul(row[j]).and_then(|p| row[k].checked_sub(p)), "normal form")?;
    }
    Ok(())
}

/// `Rk -= q·Rj`.
fn row_sub(m: &mut Wide, k: usize, j: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    let src = m[j].clone();
    for (dst, s) in m[k].iter_mut().zip(src) {
        *dst = ck(q.checked_mul(s).and_then(|p| dst.checked_sub(p)), "normal form")?;
    }
    Ok(())
}

/// Nearest-integer quotient, so remainders satisfy `|r| ≤ |b|/2`.
fn round_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

fn norm(v: &[i128]) -> f64 {
    v.iter().map(|&x| (x as f64) * (x as f64)).sum()
}

/// Pairwise size reduction of `vectors`, returning the operations
/// `(target, source, q)` meaning `v_target -= q·v_source`, in order.
/// Only steps that strictly shorten a vector are taken.
fn pair_reduce(vectors: &mut [Vec<i128>]) -> Result<Vec<(usize, usize, i128)>> {
    let mut ops = Vec::new();
    for _ in 0..64 {
        let mut changed = false;
        for j in 0..vectors.len() {
            let nj = norm(&vectors[j]);
            if nj == 0.0 {
                continue;
            }
            for i in 0..vectors.len() {
                if i == j {
                    continue;
                }
                let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(&a, &b)| a as f64 * b as f64).sum();
                let q = (dot / nj).round();
                if q == 0.0 || !q.is_finite() || q.abs() > 1e30 {
                    continue;
                }
                let q = q as i128;
                let candidate: Vec<i128> = vectors[i]
                    .iter()
                    .zip(&vectors[j])
                    .map(|(&a, &b)| q.checked_mul(b).and_then(|p| a.checked_sub(p)))
                    .collect::<Option<_>>()
                    .ok_or(crate::error::Error::Overflow("normal form"))?;
                if norm(&candidate) < norm(&vectors[i]) {
                    vectors[i] = candidate;
                    ops.push((i, j, q));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(ops)
}

fn column(m: &Wide, j: usize, rows: std::ops::Range<usize>) -> Vec<i128> {
    m[rows].iter().map(|r| r[j]).collect()
}

/// Size-reduce columns `cols` of `h` and `t` jointly, measuring only rows
/// `rows` of `h` (the rows not yet fixed).
fn reduce_columns(h: &mut Wide, t: &mut Wide, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Result<()> {
    if cols.len() < 2 {
        return Ok(());
    }
    let mut vectors: Vec<Vec<i128>> = cols
        .clone()
        .map(|j| {
            let mut v = column(h, j, rows.clone());
            v.extend(column(t, j, 0..t.len()));
            v
        })
        .collect();
    for (i, j, q) in pair_reduce(&mut vectors)? {
        col_sub(h, cols.start + i, cols.start + j, q)?;
        col_sub(t, cols.start + i, cols.start + j, q)?;
    }
    Ok(())
}

/// Shorten the tail columns `from..` (zero in `h`) among themselves, then use
/// them to shorten the transform part of the leading columns.
fn reduce_kernel_columns(h: &mut Wide, t: &mut Wide, from: usize) -> Result<()> {
    let m = t.len();
    reduce_columns(h, t, 0..0, from..m)?;
    for j in 0..from {
        for k in from..m {
            let kv = column(t, k, 0..m);
            let nk = norm(&kv);
            if nk == 0.0 {
                continue;
            }
            let jv = column(t, j, 0..m);
            let dot: f64 = jv.iter().zip(&kv).map(|(&a, &b)| a as f64 * b as f64).sum();
            let q = (dot / nk).round();
            if q != 0.0 && q.is_finite() && q.abs() < 1e30 {
                col_sub(t, j, k, q as i128)?;
            }
        }
    }
    Ok(())
}

pub fn hnf(a: &IntMatrix) -> Result<Hermite> {
    let (n, m) = (a.rows(), a.cols());
    let mut h = a.to_wide();
    let mut t = identity_wide(m);
    let mut col = 0;
    for row in 0..n {
        if col == m {
            break;
        }
        // Euclid on the row: the smallest nonzero entry becomes the pivot.
        while let Some(k) = (col..m).filter(|&k| h[row][k] != 0).min_by_key(|&k| h[row][k].abs()) {
            if k != col {
                for r in h.iter_mut().chain(t.iter_mut()) {
                    r.swap(k, col);
                }
            }
            let p = h[row][col];
            let mut done = true;
            for k in col + 1..m {
                if h[row][k] != 0 {
                    let q = round_div(h[row][k], p);
                    col_sub(&mut h, k, col, q)?;
                    col_sub(&mut t, k, col, q)?;
                    done &= h[row][k] == 0;
                }
            }
            if done {
                break;
            }
        }
        let pivot = h[row][col];
        if pivot == 0 {
            continue;
        }
        if pivot < 0 {
            negate_col(&mut h, col);
            negate_col(&mut t, col);
        }
        let pivot = h[row][col];
        for k in 0..col {
            let q = h[row][k].div_euclid(pivot);
            col_sub(&mut h, k, col, q)?;
            col_sub(&mut t, k, col, q)?;
        }
        col += 1;
        reduce_columns(&mut h, &mut t, row + 1..n, col..m)?;
    }
    reduce_kernel_columns(&mut h, &mut t, col)?;
    Ok(Hermite { h: IntMatrix::from_wide(n, m, &h)?, transform: IntMatrix::from_wide(m, m, &t)?, rank: col })
}

/// Column HNF with zero columns dropped: a canonical basis of the column span.
pub fn span_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let herm = hnf(a)?;
    let cols: Vec<Vec<i64>> = (0..herm.rank).map(|j| herm.h.col(j)).collect();
    if cols.is_empty() {
        return Ok(IntMatrix::zeros(a.rows(), 0));
    }
    IntMatrix::from_columns(&cols)
}

pub fn snf(a: &IntMatrix) -> Result<Smith> {
    let (n, m) = (a.rows(), a.cols());
    // Starting from the column HNF keeps the transforms small: for a generic
    // matrix H is the identity apart from its last row.
    let herm = hnf(a)?;
    let mut d = herm.h.to_wide();
    let mut u = identity_wide(n);
    let mut v = herm.transform.to_wide();
    let mut rank = 0;

    for t in 0..n.min(m) {
        // Bring a nonzero entry to (t, t), preferring what is already there.
        if d[t][t] == 0 {
            let found = (t..m).find_map(|j| (t..n).find(|&i| d[i][j] != 0).map(|i| (i, j)));
            let Some((pi, pj)) = found else {
                break;
            };
            swap_rows(&mut d, &mut u, pi, t);
            swap_cols(&mut d, &mut v, pj, t);
        }
        loop {
            // Euclid down column t, then along row t.
            while let Some(i) = (t..n).filter(|&i| d[i][t] != 0).min_by_key(|&i| d[i][t].abs()) {
                swap_rows(&mut d, &mut u, i, t);
                let p = d[t][t];
                for i in t + 1..n {
                    let q = round_div(d[i][t], p);
                    row_sub(&mut d, i, t, q)?;
                    row_sub(&mut u, i, t, q)?;
                }
                if (t + 1..n).all(|i| d[i][t] == 0) {
                    break;
                }
            }
            while let Some(j) = (t..m).filter(|&j| d[t][j] != 0).min_by_key(|&j| d[t][j].abs()) {
                swap_cols(&mut d, &mut v, j, t);
                let p = d[t][t];
                for j in t + 1..m {
                    let q = round_div(d[t][j], p);
                    col_sub(&mut d, j, t, q)?;
                    col_sub(&mut v, j, t, q)?;
                }
                if (t + 1..m).all(|j| d[t][j] == 0) {
                    break;
                }
            }
            if (t + 1..n).any(|i| d[i][t] != 0) {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let p = d[t][t];
            match (t + 1..n).find(|&i| (t + 1..m).any(|j| d[i][j] % p != 0)) {
                Some(i) => {
                    row_sub(&mut d, t, i, -1)?;
                    row_sub(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        rank += 1;
    }
    finish(d, u, v, n, m, rank)
}

fn swap_rows(d: &mut Wide, u: &mut Wide, i: usize, j: usize) {
    d.swap(i, j);
    u.swap(i, j);
}

fn swap_cols(d: &mut Wide, v: &mut Wide, i: usize, j: usize) {
    for row in d.iter_mut().chain(v.iter_mut()) {
        row.swap(i, j);
    }
}

/// Shrink `U` and `V` together without changing `D = U·A·V`.
///
/// For `i ≠ j < rank` with `d_i | d_j`, the pair "row `i` of `U` minus `q`
/// times row `j`, column `j` of `V` plus `q·d_j/d_i` times column `i`" keeps
/// the product fixed; when `d_j | d_i` the factor moves to the `U` side.
fn joint_reduce(d: &Wide, u: &mut Wide, v: &mut Wide, rank: usize) -> Result<()> {
    let diag: Vec<i128> = (0..rank).map(|i| d[i][i].abs()).collect();
    let vcol = |v: &Wide, j: usize| column(v, j, 0..v.len());
    for _ in 0..64 {
        let mut changed = false;
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let (a, b) = if diag[j] % diag[i] == 0 {
                    (1, diag[j] / diag[i])
                } else if diag[i] % diag[j] == 0 {
                    (diag[i] / diag[j], 1)
                } else {
                    continue;
                };
                let (ui, uj) = (&u[i], &u[j]);
                let (vi, vj) = (vcol(v, i), vcol(v, j));
                let dot = |x: &[i128], y: &[i128]| -> f64 { x.iter().zip(y).map(|(&p, &q)| p as f64 * q as f64).sum() };
                let (af, bf) = (a as f64, b as f64);
                let denom = af * af * norm(uj) + bf * bf * norm(&vi);
                if denom == 0.0 {
                    continue;
                }
                let q = ((af * dot(ui, uj) - bf * dot(&vj, &vi)) / denom).round();
                if q == 0.0 || !q.is_finite() || q.abs() > 1e30 {
                    continue;
                }
                let q = q as i128;
                let step = |x: &[i128], y: &[i128], c: i128| -> Option<Vec<i128>> {
                    x.iter().zip(y).map(|(&p, &r)| c.checked_mul(q)?.checked_mul(r).and_then(|t| p.checked_add(t))).collect()
                };
                let (Some(nu), Some(nv)) = (step(ui, uj, -a), step(&vj, &vi, b)) else {
                    continue;
                };
                if norm(&nu) + norm(&nv) < norm(ui) + norm(&vj) {
                    u[i] = nu;
                    for (row, x) in v.iter_mut().zip(nv) {
                        row[j] = x;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(())
}

fn transpose(m: &Wide) -> Wide {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn finish(mut d: Wide, mut u: Wide, mut v: Wide, n: usize, m: usize, rank: usize) -> Result<Smith> {
    // rows of u past the rank annihilate A from the left, columns of v from the right
    let mut ut = transpose(&u);
    let mut dt = transpose(&d);
    reduce_kernel_columns(&mut dt, &mut ut, rank)?;
    u = transpose(&ut);
    d = transpose(&dt);
    reduce_kernel_columns(&mut d, &mut v, rank)?;
    joint_reduce(&d, &mut u, &mut v, rank)?;
    Ok(Smith {
        d: IntMatrix::from_wide(n, m, &d)?,
        left: BigMatrix::from_wide(&u, n),
        right: BigMatrix::from_wide(&v, m),
        rank,
    })
}
