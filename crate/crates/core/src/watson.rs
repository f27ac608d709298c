//! Watson's `Λ_p` sublattice and its primitive rescaling `λ_p`.
//!
//! `Λ_p(L) = { x ∈ L : Q(x + z) ≡ Q(z) (mod p) for all z ∈ L }`. Expanding,
//! the condition is `Q(x) + 2xᵀMz ≡ 0 (mod p)`, which is affine in `z`, so it
//! suffices to test `z = 0` and the standard basis vectors. Membership only
//! depends on `x mod p`, hence `Λ_p(L)` is generated by `p·Zⁿ` together with
//! the admissible residues in `[0, p)ⁿ`.

use crate::enumerate::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::isometry::is_isometric;
use crate::matrix::IntMatrix;
use crate::normal_form::span_basis;

/// How the restricted Gram matrix is made primitive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Rescale {
    /// Divide by the largest power of `p` dividing every entry.
    #[default]
    PrimePower,
    /// Divide by the gcd of all entries.
    GlobalGcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WatsonStep {
    pub input: QuadForm,
    pub prime: u64,
    /// Columns express `Λ_p(L)` in the basis of `L` (column HNF).
    pub sublattice_basis: IntMatrix,
    pub scale_divisor: i64,
    pub output: QuadForm,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    i64::try_from(p).map_err(|_| Error::Overflow("prime"))
}

/// Does `x` satisfy the defining congruence of `Λ_p`?
pub fn in_lambda(f: &QuadForm, p: i64, x: &[i64]) -> Result<bool> {
    let n = f.dim();
    let q0 = f.evaluate_wide(x)?;
    if q0.rem_euclid(p as i128) != 0 {
        return Ok(false);
    }
    let mut shifted = x.to_vec();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        shifted[i] += 1;
        let diff = f.evaluate_wide(&shifted)? - f.evaluate_wide(&e)?;
        shifted[i] -= 1;
        if diff.rem_euclid(p as i128) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// HNF basis of `Λ_p(L)`.
pub fn lambda_sublattice(f: &QuadForm, p: u64) -> Result<IntMatrix> {
    let p = check_prime(p)?;
    let n = f.dim();
    let cosets = (p as u64).checked_pow(n as u32).filter(|c| *c <= DEFAULT_BUDGET / 100);
    if cosets.is_none() {
        return Err(Error::BudgetExceeded { limit: DEFAULT_BUDGET / 100 });
    }
    let mut generators: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = p;
            e
        })
        .collect();
    let mut x = vec![0i64; n];
    loop {
        if x.iter().any(|&c| c != 0) && in_lambda(f, p, &x)? {
            generators.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return span_basis(&IntMatrix::from_columns(&generators)?);
            }
            x[i] += 1;
            if x[i] < p {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

pub fn watson_transform(f: &QuadForm, p: u64) -> Result<WatsonStep> {
    watson_transform_with(f, p, Rescale::PrimePower)
}

pub fn watson_transform_with(f: &QuadForm, p: u64, rescale: Rescale) -> Result<WatsonStep> {
    let basis = lambda_sublattice(f, p)?;
    let gram = f.gram().congruent(&basis)?;
    let content = gram.row_major().iter().fold(0, |g, &v| gcd(g, v));
    let divisor = match rescale {
        Rescale::GlobalGcd => content,
        Rescale::PrimePower => {
            let p = p as i64;
            let mut d = 1i64;
            while content % (d * p) == 0 {
                d *= p;
            }
            d
        }
    };
    let scaled: Vec<i64> = gram.row_major().iter().map(|v| v / divisor).collect();
    let output = QuadForm::new(IntMatrix::from_row_major(f.dim(), f.dim(), scaled)?)?;
    Ok(WatsonStep { input: f.clone(), prime: p, sublattice_basis: basis, scale_divisor: divisor, output })
}

/// Iterates `λ_p` until the output is isometric to the input, or `max_steps`.
/// The fixed-point step, if reached, is the last element.
pub fn watson_chain(f: &QuadForm, p: u64, max_steps: usize) -> Result<Vec<WatsonStep>> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let mut steps: Vec<WatsonStep> = Vec::new();
    let mut current = f.clone();
    for _ in 0..max_steps {
        let step = watson_transform(&current, p)?;
        let fixed = is_isometric(&step.input, &step.output)?.is_some();
        current = step.output.clone();
        steps.push(step);
        if fixed {
            break;
        }
    }
    Ok(steps)
}

/// Is any form along the chain (including the start) isometric to one of `targets`?
pub fn chain_reaches(start: &QuadForm, chain: &[WatsonStep], targets: &[QuadForm]) -> Result<Option<QuadForm>> {
    let forms = std::iter::once(start).chain(chain.iter().map(|s| &s.output));
    for g in forms {
        for t in targets {
            if t.dim() == g.dim() && is_isometric(g, t)?.is_some() {
                return Ok(Some(g.clone()));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::hnf;

    fn diag(d: &[i64]) -> QuadForm {
        QuadForm::diagonal(d).unwrap()
    }

    /// Membership in the lattice spanned by the columns of `basis`.
    fn in_span(basis: &IntMatrix, v: &[i64]) -> bool {
        let with = basis.hstack(&IntMatrix::from_columns(&[v]).unwrap()).unwrap();
        hnf(&with).unwrap().h.columns()[..basis.cols()] == hnf(basis).unwrap().h.columns()[..]
    }

    #[test]
    fn unimodular_at_three() {
        let b = lambda_sublattice(&diag(&[1, 1, 1]), 3).unwrap();
        assert_eq!(b, IntMatrix::diagonal(&[3, 3, 3]));
        let step = watson_transform(&diag(&[1, 1, 1]), 3).unwrap();
        assert_eq!(step.scale_divisor, 9);
        assert_eq!(step.output, diag(&[1, 1, 1]));
    }

    #[test]
    fn lambda_two_of_1_1_32() {
        let b = lambda_sublattice(&diag(&[1, 1, 32]), 2).unwrap();
        // index 2: x + y even
        assert_eq!(b.determinant().unwrap().abs(), 2);
        for v in [[0, 0, 1], [1, 1, 0], [2, 0, 0]] {
            assert!(in_span(&b, &v));
        }
        assert!(!in_span(&b, &[1, 0, 0]));
        let out = watson_transform(&diag(&[1, 1, 32]), 2).unwrap().output;
        assert!(is_isometric(&out, &diag(&[1, 1, 16])).unwrap().is_some());
    }

    #[test]
    fn lambda_two_of_1_2_2() {
        let f = diag(&[1, 2, 2]);
        let b = lambda_sublattice(&f, 2).unwrap();
        assert!(in_span(&b, &[0, 1, 1]));
        assert!(in_lambda(&f, 2, &[0, 1, 1]).unwrap());
    }

    #[test]
    fn not_prime() {
        assert_eq!(lambda_sublattice(&diag(&[1, 1, 1]), 4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(watson_transform(&diag(&[1, 1, 1]), 1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn shrinks_determinant_of_1_4_16() {
        let step = watson_transform(&diag(&[1, 4, 16]), 2).unwrap();
        assert!(step.output.determinant() < 64);
        assert_eq!(step.output, diag(&[1, 1, 4]));
    }

    #[test]
    fn chain_from_sum_of_three_squares_reaches_fixed_point() {
        let chain = watson_chain(&diag(&[1, 1, 1]), 2, 10).unwrap();
        let last = chain.last().unwrap();
        assert!(is_isometric(&last.input, &last.output).unwrap().is_some());
        // ⟨1,1,1⟩ → A3 (det 4) → A3
        assert_eq!(chain.len(), 2);
        assert_eq!(last.output.determinant(), 4);
    }

    #[test]
    fn odd_unimodular_single_step() {
        let f = QuadForm::from_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]).unwrap();
        // det = 2·11 − 1·4 = 18
        let chain = watson_chain(&f, 5, 1).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(is_isometric(&chain[0].output, &f).unwrap().is_some());
    }

    #[test]
    fn global_gcd_variant() {
        let f = QuadForm::from_rows(&[[2, 1], [1, 2]]).unwrap();
        // Λ_3: 3 | det, kernel of M mod 3 is spanned by (1, 1)
        let pp = watson_transform_with(&f, 3, Rescale::PrimePower).unwrap();
        let gg = watson_transform_with(&f, 3, Rescale::GlobalGcd).unwrap();
        assert_eq!(pp.scale_divisor, 3);
        assert_eq!(gg.scale_divisor, 3);
        let g = diag(&[2, 6]);
        let pp = watson_transform_with(&g, 3, Rescale::PrimePower).unwrap();
        let gg = watson_transform_with(&g, 3, Rescale::GlobalGcd).unwrap();
        assert_eq!(pp.scale_divisor * 2, gg.scale_divisor);
    }
}
