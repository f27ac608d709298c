//! Automorphism counting and isometry testing by backtracking over short vectors.
//!
//! Both searches reduce the target Gram matrix first, then look for columns
//! `t_1, …, t_n` in the source lattice with `Q(t_j) = G_jj` and
//! `B(t_i, t_j) = G_ij`. Matching Gram matrices of equal determinant forces
//! `det(T)² = 1`, so every full assignment is a unimodular isometry.

use std::collections::BTreeMap;

use crate::enumerate::{vectors_by_norm, Budget};
use crate::error::{Error, Result};
use crate::form::{QuadForm, UnimodularMap};
use crate::matrix::IntMatrix;

struct Search<'a> {
    source: &'a QuadForm,
    target: &'a IntMatrix,
    candidates: Vec<&'a [Vec<i64>]>,
    chosen: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// Depth-first over column choices. `on_full` returns `true` to stop.
    fn run<F: FnMut(&[Vec<i64>]) -> bool>(&mut self, on_full: &mut F) -> Result<bool> {
        let j = self.chosen.len();
        let n = self.target.rows();
        if j == n {
            let cols: Vec<Vec<i64>> = self.chosen.iter().enumerate().map(|(c, &k)| self.candidates[c][k].clone()).collect();
            return Ok(on_full(&cols));
        }
        for k in 0..self.candidates[j].len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::BudgetExceeded { limit: self.limit });
            }
            let v = &self.candidates[j][k];
            let mut ok = true;
            for (i, &ki) in self.chosen.iter().enumerate() {
                if self.source.bilinear_wide(&self.candidates[i][ki], v)? != self.target.get(i, j) as i128 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.chosen.push(k);
            let stop = self.run(on_full)?;
            self.chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn with_search<R>(
    source: &QuadForm,
    target: &QuadForm,
    budget: Budget,
    body: impl FnOnce(&mut Search<'_>) -> Result<R>,
) -> Result<Option<R>> {
    let n = target.dim();
    let max_norm = (0..n).map(|i| target.entry(i, i)).max().unwrap_or(0);
    let by_norm: BTreeMap<i64, Vec<Vec<i64>>> = vectors_by_norm(source, max_norm, budget)?;
    let mut candidates = Vec::with_capacity(n);
    for i in 0..n {
        match by_norm.get(&target.entry(i, i)) {
            Some(list) => candidates.push(list.as_slice()),
            None => return Ok(None),
        }
    }
    let mut search = Search {
        source,
        target: target.gram(),
        candidates,
        chosen: Vec::with_capacity(n),
        nodes: 0,
        limit: budget.limit,
    };
    body(&mut search).map(Some)
}

/// `o(f)`: the number of `T ∈ GL_n(Z)` with `Tᵀ M T = M`.
pub fn aut_order_with(f: &QuadForm, budget: Budget) -> Result<u64> {
    let (reduced, _) = f.reduce()?;
    let mut count = 0u64;
    with_search(&reduced, &reduced, budget, |s| {
        s.run(&mut |_| {
            count += 1;
            false
        })
    })?;
    Ok(count)
}

pub fn aut_order(f: &QuadForm) -> Result<u64> {
    aut_order_with(f, Budget::default())
}

/// A witness `T` with `Tᵀ M_f T = M_g`, or `None` if the forms are not isometric.
pub fn is_isometric_with(f: &QuadForm, g: &QuadForm, budget: Budget) -> Result<Option<UnimodularMap>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    if f.determinant() != g.determinant() {
        return Ok(None);
    }
    let (g_red, u) = g.reduce()?;
    let mut found: Option<Vec<Vec<i64>>> = None;
    with_search(f, &g_red, budget, |s| {
        s.run(&mut |cols| {
            found = Some(cols.to_vec());
            true
        })
    })?;
    let Some(cols) = found else {
        return Ok(None);
    };
    // Sᵀ M_f S = Uᵀ M_g U  ⇒  T = S U⁻¹
    let s = IntMatrix::from_columns(&cols)?;
    let t = s.mul(u.inverse()?.matrix())?;
    debug_assert_eq!(f.gram().congruent(&t)?, *g.gram());
    Ok(Some(UnimodularMap::new(t)?))
}

pub fn is_isometric(f: &QuadForm, g: &QuadForm) -> Result<Option<UnimodularMap>> {
    is_isometric_with(f, g, Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[i64]) -> QuadForm {
        QuadForm::diagonal(d).unwrap()
    }

    #[test]
    fn aut_order_examples() {
        assert_eq!(aut_order(&diag(&[1, 1, 1])).unwrap(), 48);
        assert_eq!(aut_order(&diag(&[1, 8, 64])).unwrap(), 8);
        let l3p = QuadForm::from_rows(&[[4, 0, 2], [0, 8, 0], [2, 0, 17]]).unwrap();
        assert_eq!(aut_order(&l3p).unwrap(), 8);
        assert_eq!(aut_order(&diag(&[1])).unwrap(), 2);
        // hexagonal plane lattice
        assert_eq!(aut_order(&QuadForm::from_rows(&[[2, 1], [1, 2]]).unwrap()).unwrap(), 12);
    }

    #[test]
    fn self_isometry_is_found() {
        let f = QuadForm::from_rows(&[[4, 2, 2], [2, 9, 1], [2, 1, 9]]).unwrap();
        let t = is_isometric(&f, &f).unwrap().unwrap();
        assert_eq!(f.gram().congruent(t.matrix()).unwrap(), *f.gram());
    }

    #[test]
    fn same_genus_different_class() {
        let l1p = QuadForm::from_rows(&[[2, 0, 1], [0, 2, 1], [1, 1, 5]]).unwrap();
        assert_eq!(l1p.determinant(), 16);
        assert!(is_isometric(&diag(&[1, 1, 16]), &l1p).unwrap().is_none());
    }

    #[test]
    fn permuted_and_transformed_forms_are_isometric() {
        let f = QuadForm::from_rows(&[[4, 0, 0], [0, 4, 2], [0, 2, 5]]).unwrap();
        let g = QuadForm::from_rows(&[[4, 0, 2], [0, 4, 0], [2, 0, 5]]).unwrap();
        let t = is_isometric(&f, &g).unwrap().unwrap();
        assert_eq!(f.gram().congruent(t.matrix()).unwrap(), *g.gram());
        assert_eq!(t.determinant().abs(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(is_isometric(&diag(&[1, 1]), &diag(&[1, 1, 1])).is_err());
    }
}
