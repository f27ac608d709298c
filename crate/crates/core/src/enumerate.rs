//! Exact lattice-point counting.
//!
//! Every count here walks the integer points of an ellipsoid with
//! Fincke–Pohst style bounds. The bounds are computed without floating
//! point: the shifted polynomial `xᵀNx + 2xᵀz` is homogenized to the
//! `(n+1)×(n+1)` matrix `[[N, z], [zᵀ, 0]]`, and fraction-free elimination of
//! the first `i` coordinates yields, for every level `i`, an integer matrix
//! `P_i` and scale `d_i` (the leading `i×i` minor of `N`) such that
//!
//! ```text
//! min over real x_0..x_{i-1} of P(x) = (x_i, …, x_{n-1}, 1)ᵀ P_i (…) / d_i.
//! ```
//!
//! The admissible range for `x_i` is then the solution set of an integer
//! quadratic inequality, solved with an exact integer square root. The
//! innermost coordinate varies fastest.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::matrix::{ck, IntMatrix};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

static PROCESS_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BUDGET);

/// Sets the node budget used by the convenience functions of this module.
pub fn set_default_budget(nodes: u64) {
    PROCESS_BUDGET.store(nodes, Ordering::Relaxed);
}

pub fn default_budget() -> u64 {
    PROCESS_BUDGET.load(Ordering::Relaxed)
}

/// Upper limit on enumeration nodes; exceeding it is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: default_budget() }
    }
}

impl Budget {
    pub fn nodes(limit: u64) -> Self {
        Budget { limit }
    }
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    #[inline]
    fn tick(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// The polynomial `xᵀNx + 2xᵀz` whose integer values are counted by
/// [`shifted_rep_count`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTarget {
    inner: QuadForm,
    shift: Vec<i64>,
}

impl ShiftedTarget {
    pub fn new(inner: QuadForm, shift: Vec<i64>) -> Result<Self> {
        if shift.len() != inner.dim() {
            return Err(Error::DimensionMismatch { expected: inner.dim(), found: shift.len() });
        }
        Ok(ShiftedTarget { inner, shift })
    }

    pub fn unshifted(inner: QuadForm) -> Self {
        let n = inner.dim();
        ShiftedTarget { inner, shift: vec![0; n] }
    }

    pub fn inner_form(&self) -> &QuadForm {
        &self.inner
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// `xᵀNx + 2xᵀz`.
    pub fn evaluate(&self, x: &[i64]) -> Result<i64> {
        let q = self.inner.evaluate_wide(x)?;
        let mut lin: i128 = 0;
        for (xi, zi) in x.iter().zip(&self.shift) {
            lin = ck(lin.checked_add(*xi as i128 * *zi as i128), "shifted value")?;
        }
        crate::matrix::narrow(ck(lin.checked_mul(2).and_then(|l| l.checked_add(q)), "shifted value")?, "shifted value")
    }

    /// Smallest integer not exceeding any value of the polynomial:
    /// `-floor(zᵀ adj(N) z / det N)`.
    pub fn value_floor(&self) -> Result<i64> {
        let adj = self.inner.gram().adjugate()?;
        let az = adj.mul_vec(&self.shift)?;
        let mut num: i128 = 0;
        for (a, z) in az.iter().zip(&self.shift) {
            num = ck(num.checked_add(*a as i128 * *z as i128), "minimum")?;
        }
        crate::matrix::narrow(-num.div_euclid(self.inner.determinant()), "minimum")
    }
}

/// Precomputed elimination data for one polynomial.
struct Ellipsoid {
    n: usize,
    /// `levels[i]` is the `(n+1-i)`-square trailing block after eliminating `i` coordinates.
    levels: Vec<Vec<Vec<i128>>>,
    /// `scales[i] = det(N[0..i, 0..i])`, with `scales[0] = 1`.
    scales: Vec<i128>,
}

impl Ellipsoid {
    fn new(target: &ShiftedTarget) -> Result<Self> {
        let n = target.dim();
        let g = target.inner.gram();
        let mut m: Vec<Vec<i128>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| match (i < n, j < n) {
                        (true, true) => g.get(i, j) as i128,
                        (true, false) => target.shift[i] as i128,
                        (false, true) => target.shift[j] as i128,
                        (false, false) => 0,
                    })
                    .collect()
            })
            .collect();
        let mut levels = Vec::with_capacity(n);
        let mut scales = Vec::with_capacity(n);
        let mut prev: i128 = 1;
        for k in 0..n {
            levels.push(m[k..].iter().map(|row| row[k..].to_vec()).collect());
            scales.push(prev);
            let pivot = m[k][k];
            for i in k + 1..=n {
                for j in k + 1..=n {
                    let a = ck(pivot.checked_mul(m[i][j]), "elimination")?;
                    let b = ck(m[i][k].checked_mul(m[k][j]), "elimination")?;
                    m[i][j] = ck(a.checked_sub(b), "elimination")? / prev;
                }
            }
            prev = pivot;
        }
        Ok(Ellipsoid { n, levels, scales })
    }

    /// Coefficients `(a, b, c)` of `a·t² + 2b·t + c`, the level-`i` projected
    /// value as a function of `x_i = t` with the coordinates above `i` fixed.
    #[inline]
    fn line(&self, i: usize, x: &[i64]) -> Result<(i128, i128, i128)> {
        let p = &self.levels[i];
        let m = p.len();
        // tail vector (x_{i+1}, …, x_{n-1}, 1) occupies indices 1..m of p
        let tail = |j: usize| -> i128 {
            if j == m - 1 {
                1
            } else {
                x[i + j] as i128
            }
        };
        let mut b: i128 = 0;
        let mut c: i128 = 0;
        for j in 1..m {
            let tj = tail(j);
            if tj == 0 {
                continue;
            }
            b = ck(p[0][j].checked_mul(tj).and_then(|v| b.checked_add(v)), "enumeration")?;
            let mut row: i128 = 0;
            for k in 1..m {
                row = ck(p[j][k].checked_mul(tail(k)).and_then(|v| row.checked_add(v)), "enumeration")?;
            }
            c = ck(row.checked_mul(tj).and_then(|v| c.checked_add(v)), "enumeration")?;
        }
        Ok((p[0][0], b, c))
    }

    /// Walks every assignment of `x_1..x_{n-1}` compatible with value `≤ bound`
    /// and hands the innermost line `a·t² + 2b·t + c` to `leaf`.
    fn walk<F>(&self, bound: i128, budget: Budget, mut leaf: F) -> Result<()>
    where
        F: FnMut(&mut [i64], (i128, i128, i128), &mut Meter) -> Result<()>,
    {
        let mut meter = Meter { used: 0, limit: budget.limit };
        let mut x = vec![0i64; self.n];
        self.descend(self.n - 1, bound, &mut x, &mut meter, &mut leaf)
    }

    fn descend<F>(&self, i: usize, bound: i128, x: &mut [i64], meter: &mut Meter, leaf: &mut F) -> Result<()>
    where
        F: FnMut(&mut [i64], (i128, i128, i128), &mut Meter) -> Result<()>,
    {
        let coeffs = self.line(i, x)?;
        meter.tick(1)?;
        if i == 0 {
            return leaf(x, coeffs, meter);
        }
        let cap = ck(self.scales[i].checked_mul(bound), "enumeration bound")?;
        let Some((lo, hi)) = quadratic_range(coeffs, cap)? else {
            return Ok(());
        };
        for t in lo..=hi {
            x[i] = t;
            self.descend(i - 1, bound, x, meter, leaf)?;
        }
        x[i] = 0;
        Ok(())
    }
}

/// Integer `t` with `a·t² + 2b·t + c ≤ cap`, as an inclusive range.
#[inline]
fn quadratic_range((a, b, c): (i128, i128, i128), cap: i128) -> Result<Option<(i64, i64)>> {
    let slack = ck(c.checked_sub(cap), "enumeration bound")?;
    let disc = ck(b.checked_mul(b).and_then(|bb| a.checked_mul(slack).and_then(|r| bb.checked_sub(r))), "discriminant")?;
    if disc < 0 {
        return Ok(None);
    }
    let s = disc.isqrt();
    let hi = (s - b).div_euclid(a);
    let lo = -(s + b).div_euclid(a);
    if lo > hi {
        return Ok(None);
    }
    Ok(Some((crate::matrix::narrow(lo, "coordinate")?, crate::matrix::narrow(hi, "coordinate")?)))
}

/// Integer roots of `a·t² + 2b·t + c = value`.
#[inline]
fn quadratic_roots((a, b, c): (i128, i128, i128), value: i128) -> Result<([i64; 2], usize)> {
    let slack = ck(c.checked_sub(value), "root")?;
    let disc = ck(b.checked_mul(b).and_then(|bb| a.checked_mul(slack).and_then(|r| bb.checked_sub(r))), "discriminant")?;
    let mut out = [0i64; 2];
    let mut k = 0;
    if disc < 0 {
        return Ok((out, 0));
    }
    let s = disc.isqrt();
    if s * s != disc {
        return Ok((out, 0));
    }
    for num in [-b - s, -b + s] {
        if num % a == 0 && (k == 0 || s != 0) {
            out[k] = crate::matrix::narrow(num / a, "coordinate")?;
            k += 1;
        }
    }
    Ok((out, k))
}

fn walk_exact<F>(target: &ShiftedTarget, value: i64, budget: Budget, mut hit: F) -> Result<()>
where
    F: FnMut(&[i64]),
{
    let ell = Ellipsoid::new(target)?;
    ell.walk(value as i128, budget, |x, coeffs, meter| {
        let (roots, k) = quadratic_roots(coeffs, value as i128)?;
        meter.tick(k as u64)?;
        for &r in &roots[..k] {
            x[0] = r;
            hit(x);
        }
        x[0] = 0;
        Ok(())
    })
}

/// Number of `x ∈ Zⁿ` with `xᵀNx + 2xᵀz = value`.
pub fn shifted_rep_count_with(target: &ShiftedTarget, value: i64, budget: Budget) -> Result<u64> {
    let mut count = 0u64;
    walk_exact(target, value, budget, |_| count += 1)?;
    Ok(count)
}

pub fn shifted_rep_count(target: &ShiftedTarget, value: i64) -> Result<u64> {
    shifted_rep_count_with(target, value, Budget::default())
}

/// All solutions of `xᵀNx + 2xᵀz = value`.
pub fn shifted_rep_list(target: &ShiftedTarget, value: i64) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    walk_exact(target, value, Budget::default(), |x| out.push(x.to_vec()))?;
    Ok(out)
}

/// `r(k, f)`: the number of `x ∈ Zⁿ` with `Q(x) = k`.
pub fn rep_count_with(f: &QuadForm, k: i64, budget: Budget) -> Result<u64> {
    if k < 0 {
        return Ok(0);
    }
    shifted_rep_count_with(&ShiftedTarget::unshifted(f.clone()), k, budget)
}

pub fn rep_count(f: &QuadForm, k: i64) -> Result<u64> {
    rep_count_with(f, k, Budget::default())
}

/// Every `x` with `Q(x) = k`, closed under `x ↦ −x`.
pub fn rep_list_with(f: &QuadForm, k: i64, budget: Budget) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    if k < 0 {
        return Ok(out);
    }
    walk_exact(&ShiftedTarget::unshifted(f.clone()), k, budget, |x| out.push(x.to_vec()))?;
    Ok(out)
}

pub fn rep_list(f: &QuadForm, k: i64) -> Result<Vec<Vec<i64>>> {
    rep_list_with(f, k, Budget::default())
}

/// Calls `visit(x, value)` for every `x` with `xᵀNx + 2xᵀz ≤ bound`.
pub fn for_each_point<F>(target: &ShiftedTarget, bound: i64, budget: Budget, mut visit: F) -> Result<()>
where
    F: FnMut(&[i64], i64),
{
    let ell = Ellipsoid::new(target)?;
    ell.walk(bound as i128, budget, |x, (a, b, c), meter| {
        let Some((lo, hi)) = quadratic_range((a, b, c), bound as i128)? else {
            return Ok(());
        };
        meter.tick((hi - lo + 1) as u64)?;
        for t in lo..=hi {
            let tt = t as i128;
            // bounded by `bound` by construction
            let v = a * tt * tt + 2 * b * tt + c;
            x[0] = t;
            visit(x, v as i64);
        }
        x[0] = 0;
        Ok(())
    })
}

/// `r(0..=upper, f)` for one form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSeries {
    form: QuadForm,
    counts: Vec<u64>,
}

impl ThetaSeries {
    pub fn from_counts(form: QuadForm, counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArgument("theta series needs at least one coefficient".into()));
        }
        Ok(ThetaSeries { form, counts })
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn upper(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `r(k, form)`; `None` beyond the computed range.
    pub fn get(&self, k: i64) -> Option<u64> {
        if k < 0 {
            return Some(0);
        }
        self.counts.get(k as usize).copied()
    }

    /// Like [`get`](Self::get) but treats an out-of-range index as a caller bug.
    pub fn at(&self, k: i64) -> u64 {
        self.get(k).unwrap_or_else(|| panic!("theta series computed to {} only, asked for {k}", self.upper()))
    }
}

pub fn theta_series_with(f: &QuadForm, upper: u64, budget: Budget) -> Result<ThetaSeries> {
    let bound = i64::try_from(upper).map_err(|_| Error::Overflow("theta bound"))?;
    let mut counts = vec![0u64; upper as usize + 1];
    for_each_point(&ShiftedTarget::unshifted(f.clone()), bound, budget, |_, v| counts[v as usize] += 1)?;
    ThetaSeries::from_counts(f.clone(), counts)
}

pub fn theta_series(f: &QuadForm, upper: u64) -> Result<ThetaSeries> {
    theta_series_with(f, upper, Budget::default())
}

/// Representatives of the nonzero vectors with `Q(x) ≤ bound`, one from each
/// `±` pair (the one whose first nonzero coordinate is positive), with norms.
pub fn short_vectors_with(f: &QuadForm, bound: i64, budget: Budget) -> Result<Vec<(Vec<i64>, i64)>> {
    let mut out = Vec::new();
    if bound <= 0 {
        return Ok(out);
    }
    for_each_point(&ShiftedTarget::unshifted(f.clone()), bound, budget, |x, v| {
        if v > 0 && x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            out.push((x.to_vec(), v));
        }
    })?;
    Ok(out)
}

pub fn short_vectors(f: &QuadForm, bound: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    short_vectors_with(f, bound, Budget::default())
}

/// All vectors (both signs) with `Q(x) ≤ bound`, grouped by norm.
pub(crate) fn vectors_by_norm(f: &QuadForm, bound: i64, budget: Budget) -> Result<std::collections::BTreeMap<i64, Vec<Vec<i64>>>> {
    let mut map: std::collections::BTreeMap<i64, Vec<Vec<i64>>> = Default::default();
    for (x, v) in short_vectors_with(f, bound, budget)? {
        let neg: Vec<i64> = x.iter().map(|c| -c).collect();
        let bucket = map.entry(v).or_default();
        bucket.push(x);
        bucket.push(neg);
    }
    Ok(map)
}

/// Naive count over the box `|x_i| ≤ ⌊√(k·adj(M)_ii / det M)⌋`, which contains
/// the whole ellipsoid `Q(x) ≤ k`. Independent of the elimination bounds used
/// above; kept as a cross-check.
pub fn box_scan_theta(f: &QuadForm, upper: u64) -> Result<Vec<u64>> {
    let n = f.dim();
    let adj = f.gram().adjugate()?;
    let det = f.determinant();
    let radii: Vec<i64> = (0..n)
        .map(|i| {
            let r2 = ck((upper as i128).checked_mul(adj.get(i, i) as i128), "box radius")? / det;
            crate::matrix::narrow(r2.isqrt(), "box radius")
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; upper as usize + 1];
    let mut x: Vec<i64> = radii.iter().map(|r| -r).collect();
    loop {
        let v = f.evaluate_wide(&x)?;
        if v <= upper as i128 {
            counts[v as usize] += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return Ok(counts);
            }
            if x[i] < radii[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radii[i];
            i += 1;
        }
    }
}

/// Integer matrix helper used by callers that build shifted targets by hand.
pub fn shifted_from_parts(gram: IntMatrix, shift: Vec<i64>) -> Result<ShiftedTarget> {
    ShiftedTarget::new(QuadForm::new(gram)?, shift)
}
