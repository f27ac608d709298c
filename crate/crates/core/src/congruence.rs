//! Counting representations restricted to a congruence class `Bx ≡ w (mod s)`.
//!
//! Solutions of the homogeneous system form a full-rank lattice `𝒰Zⁿ`, and the
//! solutions of the inhomogeneous one are the coset `y + 𝒰Zⁿ`. Substituting
//! `x = 𝒰c + y` turns `xᵀMx = a` into the shifted equation
//! `cᵀNc + 2cᵀz = a − yᵀMy` with `N = 𝒰ᵀM𝒰` and `z = 𝒰ᵀMy`. The converse
//! direction rebuilds a congruence problem from any shifted one.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::One;

use crate::enumerate::{for_each_point, rep_list, Budget, ShiftedTarget};
use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::matrix::{ck, narrow, IntMatrix};
use crate::normal_form::{snf, span_basis};

/// `{x ∈ Zⁿ : Bx ≡ w (mod s)}`, compared componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCondition {
    b: IntMatrix,
    w: Vec<i64>,
    s: Vec<i64>,
}

impl CongruenceCondition {
    pub fn new(b: IntMatrix, w: Vec<i64>, s: Vec<i64>) -> Result<Self> {
        let n = b.rows();
        if !b.is_square() {
            return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
        }
        for v in [&w, &s] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        if let Some(&bad) = s.iter().find(|&&m| m < 1) {
            return Err(Error::InvalidArgument(format!("moduli must be positive, got {bad}")));
        }
        Ok(CongruenceCondition { b, w, s })
    }

    /// `x ≡ w (mod s)` componentwise.
    pub fn coordinatewise(w: Vec<i64>, s: Vec<i64>) -> Result<Self> {
        Self::new(IntMatrix::identity(w.len()), w, s)
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn w(&self) -> &[i64] {
        &self.w
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    /// The same `B` and `s` with right-hand side `k·w`.
    pub fn with_multiple(&self, k: i64) -> Self {
        let w = self.w.iter().zip(&self.s).map(|(&wi, &si)| ((wi as i128 * k as i128).rem_euclid(si as i128)) as i64).collect();
        CongruenceCondition { b: self.b.clone(), w, s: self.s.clone() }
    }

    pub fn homogeneous(&self) -> Self {
        self.with_multiple(0)
    }

    fn residues(&self, x: &[i64]) -> Result<Vec<i64>> {
        let bx = self.b.mul_vec(x)?;
        Ok(bx.iter().zip(&self.s).map(|(&v, &m)| v.rem_euclid(m)).collect())
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        let r = self.residues(x)?;
        Ok(r.iter().zip(&self.w).zip(&self.s).all(|((&ri, &wi), &si)| ri == wi.rem_euclid(si)))
    }
}

/// Some `y` with `By ≡ w (mod s)`, or `None` if the system has no solution.
///
/// The returned `y` is reduced modulo the Hermite basis `H` of the homogeneous
/// lattice, so `0 ≤ y_j < H_jj`; it depends only on the condition.
pub fn find_residue(cond: &CongruenceCondition) -> Result<Option<Vec<i64>>> {
    let n = cond.dim();
    // B·y − diag(s)·t = w over Z
    let system = cond.b.hstack(&IntMatrix::diagonal(&cond.s.iter().map(|v| -v).collect::<Vec<_>>()))?;
    let smith = snf(&system)?;
    let c = smith.left.to_int()?.mul_vec(&cond.w)?;
    let mut z = vec![0i64; 2 * n];
    for i in 0..n {
        let d = smith.d.get(i, i);
        if c[i] % d != 0 {
            return Ok(None);
        }
        z[i] = c[i] / d;
    }
    let full = smith.right.to_int()?.mul_vec(&z)?;
    let kernel = kernel_lattice(cond)?;
    Ok(Some(reduce_mod_hermite(&full[..n], &kernel)?))
}

fn reduce_mod_hermite(y: &[i64], h: &IntMatrix) -> Result<Vec<i64>> {
    let mut y = y.to_vec();
    for j in 0..h.cols() {
        let q = y[j].div_euclid(h.get(j, j));
        if q != 0 {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = narrow(*yi as i128 - q as i128 * h.get(i, j) as i128, "residue")?;
            }
        }
    }
    Ok(y)
}

/// Hermite basis of `{x : Bx ≡ 0 (mod s)}`.
pub fn kernel_lattice(cond: &CongruenceCondition) -> Result<IntMatrix> {
    let n = cond.dim();
    let system = cond.b.hstack(&IntMatrix::diagonal(&cond.s.iter().map(|v| -v).collect::<Vec<_>>()))?;
    let smith = snf(&system)?;
    // The integer kernel of the stacked system is spanned by the trailing
    // columns of the right transform; its projection is the solution lattice.
    let right = smith.right.to_int()?;
    let gens: Vec<Vec<i64>> = (smith.rank..2 * n).map(|j| right.col(j)[..n].to_vec()).collect();
    let basis = span_basis(&IntMatrix::from_columns(&gens)?)?;
    debug_assert_eq!(basis.cols(), n);
    Ok(basis)
}

/// Smallest `d ≥ 1` with `d·y` in the span of `kernel_basis` (lower triangular, full rank).
pub fn coset_index(y: &[i64], kernel_basis: &IntMatrix) -> Result<i64> {
    let n = y.len();
    let mut c: Vec<Ratio<i128>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut rest = Ratio::from(y[j] as i128);
        for (i, ci) in c.iter().enumerate() {
            rest -= *ci * Ratio::from(kernel_basis.get(j, i) as i128);
        }
        let pivot = kernel_basis.get(j, j);
        if pivot == 0 {
            return Err(Error::Singular);
        }
        c.push(rest / Ratio::from(pivot as i128));
    }
    let d = c.iter().fold(1i128, |acc, ci| num_integer::Integer::lcm(&acc, ci.denom()));
    narrow(d, "coset index")
}

/// Hermite basis of `Z·y + 𝒰Zⁿ`.
pub fn extended_lattice(y: &[i64], kernel_basis: &IntMatrix) -> Result<IntMatrix> {
    let gens = IntMatrix::from_columns(&[y])?.hstack(kernel_basis)?;
    span_basis(&gens)
}

/// `basisᵀ M basis`.
pub fn gram_restrict(f: &QuadForm, basis: &IntMatrix) -> Result<QuadForm> {
    f.restrict(basis)
}

/// The residue, homogeneous lattice, extended lattice and index of a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattices {
    pub residue_y: Vec<i64>,
    pub kernel_basis: IntMatrix,
    pub extended_basis: IntMatrix,
    pub index_d: i64,
}

impl CongruenceLattices {
    pub fn new(cond: &CongruenceCondition) -> Result<Self> {
        let y = find_residue(cond)?.ok_or(Error::Unsolvable)?;
        Self::with_residue(cond, y)
    }

    /// As [`CongruenceLattices::new`] but with a caller-chosen residue.
    pub fn with_residue(cond: &CongruenceCondition, y: Vec<i64>) -> Result<Self> {
        if y.len() != cond.dim() {
            return Err(Error::DimensionMismatch { expected: cond.dim(), found: y.len() });
        }
        if !cond.contains(&y)? {
            return Err(Error::InvalidArgument("residue does not satisfy the condition".into()));
        }
        let kernel = kernel_lattice(cond)?;
        let d = coset_index(&y, &kernel)?;
        let extended = extended_lattice(&y, &kernel)?;
        Ok(CongruenceLattices { residue_y: y, kernel_basis: kernel, extended_basis: extended, index_d: d })
    }

    /// `M_{B,0}^s`.
    pub fn kernel_form(&self, f: &QuadForm) -> Result<QuadForm> {
        gram_restrict(f, &self.kernel_basis)
    }

    /// `M̃_{B,w}^s`.
    pub fn extended_form(&self, f: &QuadForm) -> Result<QuadForm> {
        gram_restrict(f, &self.extended_basis)
    }
}

/// `r_{B,w}^s(a, M)` by filtering all representations of `a`.
pub fn congruence_rep_count(f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<u64> {
    check_dims(f, cond)?;
    let mut count = 0;
    for x in rep_list(f, a)? {
        if cond.contains(&x)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Solutions of `xᵀMx = a` with `Bx ≡ w (mod s)`.
pub fn congruence_rep_list(f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<Vec<Vec<i64>>> {
    check_dims(f, cond)?;
    let mut out = Vec::new();
    for x in rep_list(f, a)? {
        if cond.contains(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}

fn check_dims(f: &QuadForm, cond: &CongruenceCondition) -> Result<()> {
    if f.dim() != cond.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: cond.dim() });
    }
    Ok(())
}

/// Maps residue vectors `Bx mod s` to small integer keys.
struct Classifier<'a> {
    cond: &'a CongruenceCondition,
    radix: Vec<u128>,
}

impl<'a> Classifier<'a> {
    fn new(cond: &'a CongruenceCondition) -> Result<Self> {
        let mut radix = Vec::with_capacity(cond.dim());
        let mut acc: u128 = 1;
        for &m in &cond.s {
            radix.push(acc);
            acc = ck(acc.checked_mul(m as u128), "residue key")?;
        }
        Ok(Classifier { cond, radix })
    }

    fn key_of_residues(&self, r: &[i64]) -> u128 {
        r.iter().zip(&self.radix).map(|(&v, &w)| v as u128 * w).sum()
    }

    fn key(&self, x: &[i64]) -> u128 {
        let b = &self.cond.b;
        let mut key = 0u128;
        for i in 0..x.len() {
            let v: i128 = b.row(i).iter().zip(x).map(|(&bij, &xj)| bij as i128 * xj as i128).sum();
            key += v.rem_euclid(self.cond.s[i] as i128) as u128 * self.radix[i];
        }
        key
    }
}

/// `out[k][a] = r_{B,kw}^s(a, M)` for `0 ≤ k < classes` and `0 ≤ a ≤ upper`,
/// in a single enumeration pass.
pub fn coset_theta(f: &QuadForm, upper: u64, cond: &CongruenceCondition, classes: usize) -> Result<Vec<Vec<u64>>> {
    coset_theta_with(f, upper, cond, classes, Budget::default())
}

pub fn coset_theta_with(
    f: &QuadForm,
    upper: u64,
    cond: &CongruenceCondition,
    classes: usize,
    budget: Budget,
) -> Result<Vec<Vec<u64>>> {
    check_dims(f, cond)?;
    let upper_i = i64::try_from(upper).map_err(|_| Error::Overflow("upper bound"))?;
    let classifier = Classifier::new(cond)?;
    let mut lookup: HashMap<u128, usize> = HashMap::new();
    for k in 0..classes {
        let target = cond.with_multiple(k as i64);
        // when k·w repeats an earlier class, the earlier k keeps the key
        lookup.entry(classifier.key_of_residues(&target.w)).or_insert(k);
    }
    let mut out = vec![vec![0u64; upper as usize + 1]; classes];
    for_each_point(&ShiftedTarget::unshifted(f.clone()), upper_i, budget, |x, v| {
        if let Some(&k) = lookup.get(&classifier.key(x)) {
            out[k][v as usize] += 1;
        }
    })?;
    Ok(out)
}

/// `r_{B,w}^s(a, M)` for every `0 ≤ a ≤ upper`.
pub fn congruence_theta(f: &QuadForm, upper: u64, cond: &CongruenceCondition) -> Result<Vec<u64>> {
    // classes 0 and 1 are 0 and w; when w ≡ 0 the first one claims the key
    let mut rows = coset_theta(f, upper, cond, 2)?;
    let homogeneous = cond.with_multiple(1).w.iter().all(|&v| v == 0);
    Ok(rows.swap_remove(usize::from(!homogeneous)))
}

/// The shifted problem equivalent to counting `R_{B,w}^s(a, M)`.
#[derive(Clone, Debug)]
pub struct ShiftedProblem {
    pub target: ShiftedTarget,
    pub value: i64,
    pub residue_y: Vec<i64>,
    pub kernel_basis: IntMatrix,
}

impl ShiftedProblem {
    /// `Φ(x) = 𝒰⁻¹(x − y)`.
    pub fn phi(&self, x: &[i64]) -> Result<Vec<i64>> {
        let diff: Vec<i64> = x.iter().zip(&self.residue_y).map(|(a, b)| a - b).collect();
        let c = solve_lower(&self.kernel_basis, &diff)?;
        c.ok_or_else(|| Error::InvalidArgument("point is not in the residue coset".into()))
    }

    /// `Ψ(c) = 𝒰c + y`.
    pub fn psi(&self, c: &[i64]) -> Result<Vec<i64>> {
        let uc = self.kernel_basis.mul_vec(c)?;
        uc.iter().zip(&self.residue_y).map(|(a, b)| narrow(*a as i128 + *b as i128, "psi")).collect()
    }
}

/// Integer solution of `H c = v` for lower-triangular `H`, if one exists.
fn solve_lower(h: &IntMatrix, v: &[i64]) -> Result<Option<Vec<i64>>> {
    let mut c: Vec<i64> = Vec::with_capacity(v.len());
    for j in 0..v.len() {
        let mut rest = v[j] as i128;
        for (i, &ci) in c.iter().enumerate() {
            rest -= ci as i128 * h.get(j, i) as i128;
        }
        let pivot = h.get(j, j) as i128;
        if pivot == 0 {
            return Err(Error::Singular);
        }
        if rest % pivot != 0 {
            return Ok(None);
        }
        c.push(narrow(rest / pivot, "coordinates")?);
    }
    Ok(Some(c))
}

pub fn to_shifted(f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<ShiftedProblem> {
    check_dims(f, cond)?;
    let lat = CongruenceLattices::new(cond)?;
    to_shifted_with(f, a, &lat)
}

/// As [`to_shifted`] with precomputed lattices (and hence a chosen residue).
pub fn to_shifted_with(f: &QuadForm, a: i64, lat: &CongruenceLattices) -> Result<ShiftedProblem> {
    let u = &lat.kernel_basis;
    let y = &lat.residue_y;
    let n_form = gram_restrict(f, u)?;
    let my = f.gram().mul_vec(y)?;
    let z = u.transpose().mul_vec(&my)?;
    let value = narrow(a as i128 - f.evaluate_wide(y)?, "shifted value")?;
    Ok(ShiftedProblem {
        target: ShiftedTarget::new(n_form, z)?,
        value,
        residue_y: y.clone(),
        kernel_basis: u.clone(),
    })
}

/// A congruence problem equivalent to a shifted one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceProblem {
    pub form: QuadForm,
    pub value: i64,
    pub cond: CongruenceCondition,
    pub residue_y: Vec<i64>,
}

/// Builds `(M′, a′, B′, w′, s′)` with `r_{B′,w′}^{s′}(a′, M′) = r(a; z, N)`.
///
/// With `U N V = D` in Smith form, `NZⁿ = U⁻¹DZⁿ`, so `B′ = U` and `s′` are the
/// invariant factors; `M′ = det(N)·N⁻¹` and `a′ = det(N)·a + zᵀ det(N) N⁻¹ z`.
pub fn from_shifted(t: &ShiftedTarget, a: i64) -> Result<CongruenceProblem> {
    let n = t.inner_form().gram();
    let smith = snf(n)?;
    let s: Vec<i64> = smith.invariant_factors();
    let b = smith.left.to_int()?;
    let z = t.shift().to_vec();
    let w_raw = b.mul_vec(&z)?;
    let w: Vec<i64> = w_raw.iter().zip(&s).map(|(&v, &m)| v.rem_euclid(m)).collect();
    let adj = n.adjugate()?;
    let form = QuadForm::new(adj.clone())?;
    let det = t.inner_form().determinant();
    let z_adj_z = form.evaluate_wide(&z)?;
    let value = narrow(
        ck(det.checked_mul(a as i128).and_then(|v| v.checked_add(z_adj_z)), "converse value")?,
        "converse value",
    )?;
    let cond = CongruenceCondition::new(b, w, s)?;
    Ok(CongruenceProblem { form, value, cond, residue_y: z })
}

/// Both sides of `r(a, M̃) = Σ_{k<d} r_{B,kw}^s(a, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSumReport {
    pub a: i64,
    pub d: i64,
    pub extended_count: u64,
    pub coset_counts: Vec<u64>,
}

impl CosetSumReport {
    pub fn holds(&self) -> bool {
        self.extended_count == self.coset_counts.iter().sum::<u64>()
    }
}

pub fn coset_sum_check(f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<CosetSumReport> {
    check_dims(f, cond)?;
    let lat = CongruenceLattices::new(cond)?;
    let extended_count = crate::enumerate::rep_count(&lat.extended_form(f)?, a)?;
    let coset_counts =
        (0..lat.index_d).map(|k| congruence_rep_count(f, a, &cond.with_multiple(k))).collect::<Result<Vec<_>>>()?;
    Ok(CosetSumReport { a, d: lat.index_d, extended_count, coset_counts })
}

/// Counts behind the negation symmetry and its consequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegationReport {
    pub d: i64,
    pub count_w: u64,
    pub count_minus_w: u64,
    pub extended_count: u64,
    pub kernel_count: u64,
    /// For `d = 2` or `3`: the value of `r_{B,w}^s(a,M)` predicted from the
    /// extended and kernel counts.
    pub predicted: Option<Ratio<i128>>,
    /// When `gcd(det B, s) = gcd(a, s) = 1` for `s = gcd(s_i)`: the
    /// multipliers `k ≤ d` with `gcd(s, k) > 1` and their (expected zero) counts.
    pub gcd_vanishing: Option<Vec<(i64, u64)>>,
}

impl NegationReport {
    pub fn holds(&self) -> bool {
        self.count_w == self.count_minus_w
            && self.predicted.is_none_or(|p| p == Ratio::from(self.count_w as i128))
            && self.gcd_vanishing.as_ref().is_none_or(|v| v.iter().all(|&(_, c)| c == 0))
    }
}

pub fn negation_symmetry_check(f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<NegationReport> {
    check_dims(f, cond)?;
    let lat = CongruenceLattices::new(cond)?;
    let count_w = congruence_rep_count(f, a, cond)?;
    let count_minus_w = congruence_rep_count(f, a, &cond.with_multiple(-1))?;
    let extended_count = crate::enumerate::rep_count(&lat.extended_form(f)?, a)?;
    let kernel_count = crate::enumerate::rep_count(&lat.kernel_form(f)?, a)?;
    let diff = Ratio::from(extended_count as i128 - kernel_count as i128);
    let predicted = match lat.index_d {
        2 => Some(diff),
        3 => Some(diff / Ratio::from(2)),
        _ => None,
    };
    let s = cond.s.iter().fold(0i64, |g, &v| num_integer::Integer::gcd(&g, &v));
    let det_b = cond.b.determinant()?;
    let coprime = |v: i128| num_integer::Integer::gcd(&v, &(s as i128)).is_one();
    let gcd_vanishing = if s > 1 && coprime(det_b) && coprime(a as i128) {
        let ks: Vec<i64> = (1..=lat.index_d.max(s)).filter(|k| num_integer::Integer::gcd(k, &s) > 1).collect();
        Some(ks.into_iter().map(|k| Ok((k, congruence_rep_count(f, a, &cond.with_multiple(k))?))).collect::<Result<_>>()?)
    } else {
        None
    };
    Ok(NegationReport { d: lat.index_d, count_w, count_minus_w, extended_count, kernel_count, predicted, gcd_vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{rep_count, shifted_rep_count};
    use crate::isometry::is_isometric;

    fn diag(d: &[i64]) -> QuadForm {
        QuadForm::diagonal(d).unwrap()
    }

    fn b3() -> IntMatrix {
        IntMatrix::from_rows(&[[1, 0, 0], [0, 1, -1], [0, 1, 1]]).unwrap()
    }

    fn cond1() -> CongruenceCondition {
        CongruenceCondition::coordinatewise(vec![1, 2, 2], vec![4, 8, 8]).unwrap()
    }

    fn cond3() -> CongruenceCondition {
        CongruenceCondition::new(b3(), vec![3, 0, 2], vec![12, 6, 6]).unwrap()
    }

    fn span(cols: &[[i64; 3]]) -> IntMatrix {
        span_basis(&IntMatrix::from_columns(cols).unwrap()).unwrap()
    }

    #[test]
    fn residues() {
        assert_eq!(find_residue(&cond1()).unwrap(), Some(vec![1, 2, 2]));
        let y = find_residue(&cond3()).unwrap().unwrap();
        assert!(cond3().contains(&y).unwrap());
        assert_eq!(y, vec![3, 1, 1]);
        let bad = CongruenceCondition::new(IntMatrix::diagonal(&[2, 2]), vec![1, 0], vec![4, 4]).unwrap();
        assert_eq!(find_residue(&bad).unwrap(), None);
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_lattice(&cond1()).unwrap(), IntMatrix::diagonal(&[4, 8, 8]));
        assert_eq!(kernel_lattice(&cond3()).unwrap(), span(&[[12, 0, 0], [0, 3, -3], [0, 3, 3]]));
        let free = CongruenceCondition::coordinatewise(vec![0, 0, 0], vec![1, 1, 1]).unwrap();
        assert_eq!(kernel_lattice(&free).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn indices_and_extended_lattices() {
        let l1 = CongruenceLattices::new(&cond1()).unwrap();
        assert_eq!(l1.index_d, 4);
        assert_eq!(l1.extended_basis, span(&[[1, 2, 2], [4, 0, 0], [0, 8, 0]]));
        let l3 = CongruenceLattices::new(&cond3()).unwrap();
        assert_eq!(l3.index_d, 12);
        assert_eq!(l3.extended_basis, span(&[[3, 0, 0], [0, 3, -3], [0, 1, 1]]));
        for l in [&l1, &l3] {
            let dk = l.kernel_basis.determinant().unwrap().abs();
            let de = l.extended_basis.determinant().unwrap().abs();
            assert_eq!(dk, l.index_d as i128 * de);
        }
        let zero = CongruenceCondition::new(b3(), vec![0, 0, 0], vec![12, 6, 6]).unwrap();
        let l0 = CongruenceLattices::new(&zero).unwrap();
        assert_eq!(l0.index_d, 1);
        assert_eq!(l0.extended_basis, l0.kernel_basis);
    }

    #[test]
    fn restricted_grams() {
        let l1 = CongruenceLattices::new(&cond1()).unwrap();
        assert_eq!(l1.kernel_form(&diag(&[1, 1, 1])).unwrap(), diag(&[16, 64, 64]));
        let k3 = QuadForm::from_rows(&[[9, 0, 0], [0, 16, 8], [0, 8, 112]]).unwrap();
        let m3 = diag(&[1, 4, 12]);
        let l3 = CongruenceLattices::new(&cond3()).unwrap();
        assert!(is_isometric(&l3.extended_form(&m3).unwrap(), &k3).unwrap().is_some());
        assert_eq!(gram_restrict(&m3, &IntMatrix::identity(3)).unwrap(), m3);
    }

    #[test]
    fn filtered_counts() {
        let m1 = diag(&[1, 1, 1]);
        assert_eq!(congruence_rep_list(&m1, 9, &cond1()).unwrap(), vec![vec![1, 2, 2]]);
        assert_eq!(congruence_rep_count(&m1, 25, &cond1()).unwrap(), 0);
        let theta = congruence_theta(&m1, 60, &cond1()).unwrap();
        for a in 0..=60 {
            assert_eq!(theta[a as usize], congruence_rep_count(&m1, a, &cond1()).unwrap());
        }
    }

    #[test]
    fn forward_bijection_on_instances() {
        let m1 = diag(&[1, 1, 1]);
        for a in [7, 9, 17, 25, 33, 41] {
            let p = to_shifted(&m1, a, &cond1()).unwrap();
            let lhs = congruence_rep_list(&m1, a, &cond1()).unwrap();
            assert_eq!(shifted_rep_count(&p.target, p.value).unwrap(), lhs.len() as u64);
            for x in &lhs {
                let c = p.phi(x).unwrap();
                assert_eq!(p.target.evaluate(&c).unwrap(), p.value);
                assert_eq!(&p.psi(&c).unwrap(), x);
            }
        }
        // w = 0: no shift, value unchanged
        let zero = CongruenceCondition::new(b3(), vec![0, 0, 0], vec![12, 6, 6]).unwrap();
        let p = to_shifted(&diag(&[1, 4, 12]), 144, &zero).unwrap();
        assert!(p.target.shift().iter().all(|&v| v == 0));
        assert_eq!(p.value, 144);
    }

    #[test]
    fn converse_small_example() {
        let t = ShiftedTarget::new(diag(&[2, 3]), vec![1, 1]).unwrap();
        let problem = from_shifted(&t, 5).unwrap();
        assert!(problem.cond.contains(&problem.residue_y).unwrap());
        assert_eq!(
            congruence_rep_count(&problem.form, problem.value, &problem.cond).unwrap(),
            shifted_rep_count(&t, 5).unwrap()
        );
        let id = ShiftedTarget::unshifted(diag(&[1, 1, 1]));
        let p = from_shifted(&id, 3).unwrap();
        assert_eq!(p.form, diag(&[1, 1, 1]));
        assert_eq!(p.value, 3);
        assert!(p.cond.s().iter().all(|&v| v == 1));
    }

    #[test]
    fn coset_sums() {
        let m1 = diag(&[1, 1, 1]);
        for a in [9, 17, 25, 50, 81] {
            let r = coset_sum_check(&m1, a, &cond1()).unwrap();
            assert_eq!(r.d, 4);
            assert!(r.holds(), "{r:?}");
        }
        let r = coset_sum_check(&diag(&[1, 4, 12]), 25, &cond3()).unwrap();
        assert_eq!(r.d, 12);
        assert!(r.holds());
        let table = coset_theta(&m1, 40, &cond1(), 4).unwrap();
        let ext = CongruenceLattices::new(&cond1()).unwrap().extended_form(&m1).unwrap();
        for a in 0..=40 {
            let total: u64 = table.iter().map(|row| row[a as usize]).sum();
            assert_eq!(total, rep_count(&ext, a).unwrap());
        }
    }

    #[test]
    fn negation_and_halving() {
        let m = diag(&[1, 1, 1]);
        let c = CongruenceCondition::coordinatewise(vec![1, 0, 2], vec![2, 2, 4]).unwrap();
        for a in [1, 5, 9, 13, 21] {
            let r = negation_symmetry_check(&m, a, &c).unwrap();
            assert_eq!(r.d, 2);
            assert!(r.predicted.is_some());
            assert!(r.holds(), "{r:?}");
        }
        // d = 3: x ≡ (1, 2) mod 3 on ⟨1, 2⟩
        let c3 = CongruenceCondition::coordinatewise(vec![1, 2], vec![3, 3]).unwrap();
        let f = diag(&[1, 2]);
        for a in 1..60 {
            let r = negation_symmetry_check(&f, a, &c3).unwrap();
            assert_eq!(r.d, 3);
            assert!(r.holds(), "a = {a}: {r:?}");
        }
    }
}
