//! Generalized Bell forms `⟨1, 2^α, 2^β⟩` and closed formulas for the four
//! whose spinor genus holds a single class while the genus holds two:
//!
//! ```text
//! L1 = ⟨1,1,16⟩   L2 = ⟨1,4,16⟩   L3 = ⟨1,8,64⟩   L4 = ⟨1,16,16⟩
//! ```
//!
//! Each genus consists of `L_i` and one more class `L_i'`. Representation
//! numbers of `L_i` are expressed through `𝔯₁(k) = r(k, ⟨1,1,1⟩)` (i = 1, 2, 4)
//! or `𝔯₂(k) = r(k, ⟨1,1,2⟩)` (i = 3): a genus-average constant `c_i(a, α)`
//! depending on the 2-adic shape `k = 2^a(8t + α)`, plus a correction on odd
//! squares where the two spinor genera differ.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::enumerate::{rep_count, theta_series, ThetaSeries};
use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::isometry::aut_order;

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BellIndex {
    alpha: u32,
    beta: u32,
}

impl BellIndex {
    pub fn new(alpha: u32, beta: u32) -> Result<Self> {
        if alpha > beta {
            return Err(Error::OrderViolated { alpha, beta });
        }
        Ok(BellIndex { alpha, beta })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }
}

fn pow2(e: u32) -> Result<i64> {
    1i64.checked_shl(e).filter(|v| *v > 0).ok_or(Error::Overflow("power of two"))
}

/// `x² + 2^α y² + 2^β z²`.
pub fn bell_form(idx: BellIndex) -> Result<QuadForm> {
    QuadForm::diagonal(&[1, pow2(idx.alpha)?, pow2(idx.beta)?])
}

/// `x² + y² + 2^{(α+β) mod 2} z²`, which agrees with the Bell form at every odd prime.
pub fn reduced_companion(idx: BellIndex) -> QuadForm {
    let last = if (idx.alpha + idx.beta) % 2 == 1 { 2 } else { 1 };
    QuadForm::diagonal(&[1, 1, last]).expect("diagonal form with positive entries")
}

/// `k = 2^a (8t + α)` with `α ∈ {1, 3, 5, 7}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoAdicSplit {
    pub a: u32,
    pub alpha_res: u8,
    pub t: u64,
}

impl TwoAdicSplit {
    pub fn value(&self) -> u128 {
        (1u128 << self.a) * (8 * self.t as u128 + self.alpha_res as u128)
    }
}

pub fn two_adic_split(k: i64) -> Result<TwoAdicSplit> {
    if k <= 0 {
        return Err(Error::NonPositive(k));
    }
    let a = k.trailing_zeros();
    let odd = (k >> a) as u64;
    Ok(TwoAdicSplit { a, alpha_res: (odd % 8) as u8, t: odd / 8 })
}

/// Which of the four Bell lattices `L_1..L_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinorPairIndex(u8);

impl SpinorPairIndex {
    pub const ALL: [SpinorPairIndex; 4] = [SpinorPairIndex(1), SpinorPairIndex(2), SpinorPairIndex(3), SpinorPairIndex(4)];

    pub fn new(i: u8) -> Result<Self> {
        if (1..=4).contains(&i) {
            Ok(SpinorPairIndex(i))
        } else {
            Err(Error::InvalidArgument(format!("lattice index must be 1..=4, got {i}")))
        }
    }

    pub fn get(&self) -> u8 {
        self.0
    }

    /// `L_i` as a Bell form.
    pub fn lattice(&self) -> QuadForm {
        let d: [i64; 3] = match self.0 {
            1 => [1, 1, 16],
            2 => [1, 4, 16],
            3 => [1, 8, 64],
            _ => [1, 16, 16],
        };
        QuadForm::diagonal(&d).expect("built-in form")
    }

    pub fn bell_index(&self) -> BellIndex {
        let (a, b) = match self.0 {
            1 => (0, 4),
            2 => (2, 4),
            3 => (3, 6),
            _ => (4, 4),
        };
        BellIndex { alpha: a, beta: b }
    }

    /// `L_i'`, the single class of the other spinor genus in `gen(L_i)`.
    pub fn companion(&self) -> QuadForm {
        let g: [[i64; 3]; 3] = match self.0 {
            1 => [[2, 0, 1], [0, 2, 1], [1, 1, 5]],
            2 => [[4, 0, 0], [0, 4, 2], [0, 2, 5]],
            3 => [[4, 0, 2], [0, 8, 0], [2, 0, 17]],
            _ => [[4, 2, 2], [2, 9, 1], [2, 1, 9]],
        };
        QuadForm::from_rows(&g).expect("built-in form")
    }

    /// The sum-of-squares form used by the formulas: `⟨1,1,2⟩` for `L_3`, `⟨1,1,1⟩` otherwise.
    pub fn reference_form(&self) -> QuadForm {
        reduced_companion(self.bell_index())
    }

    fn uses_r2(&self) -> bool {
        self.0 == 3
    }
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Genus-average constant `c_i(a, α)`.
pub fn c_table(i: SpinorPairIndex, a: u32, alpha_res: u8) -> Rational {
    let one = r(1, 1);
    let zero = Rational::zero();
    match i.0 {
        1 => match (a, alpha_res) {
            (0 | 1, 1 | 5) => r(1, 3),
            (2, 1 | 5) => r(2, 3),
            (3, _) => r(1, 3),
            (4.., _) => one,
            _ => zero,
        },
        2 => match (a, alpha_res) {
            (0, 1 | 5) => r(1, 6),
            (2, 1 | 5) => r(2, 3),
            (3, _) => r(1, 3),
            (4.., _) => one,
            _ => zero,
        },
        3 => match (a, alpha_res) {
            (0, 1) => r(1, 4),
            (2, 1 | 3) => r(1, 6),
            (3, 1) => r(1, 3),
            (3, 3) => r(1, 2),
            (4, _) => r(1, 6),
            (5, 1) => r(1, 3),
            (5, 3) => one,
            (5, 5) => r(1, 3),
            (6, _) => r(1, 3),
            (7.., _) => one,
            _ => zero,
        },
        _ => match (a, alpha_res) {
            (0, 1) => r(1, 6),
            (2, 1 | 5) => r(1, 3),
            (4.., _) => one,
            _ => zero,
        },
    }
}

/// `Some(√k)` if `k` is a perfect square.
pub fn exact_sqrt(k: i64) -> Option<i64> {
    if k < 0 {
        return None;
    }
    let s = k.isqrt();
    (s * s == k).then_some(s)
}

fn sign(e: i64) -> i128 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The square-class correction `r(k, L_i) − c_i(a,α)·𝔯_j(k)`, non-zero only
/// when `k` is an odd square.
pub fn correction(i: SpinorPairIndex, k: i64) -> i128 {
    let Some(root) = exact_sqrt(k) else {
        return 0;
    };
    if k % 2 == 0 {
        return 0;
    }
    let mut s = sign((root - 1) / 2);
    if i.0 == 3 {
        s *= sign((k - 1) / 8);
    }
    let coef: i128 = if i.0 == 1 { 2 } else { 1 };
    s * coef * root as i128
}

pub(crate) fn to_count(v: Rational, what: &str) -> Result<u64> {
    if !v.is_integer() || v < Rational::zero() {
        return Err(Error::NonIntegerResult(format!("{what} = {v}")));
    }
    v.to_integer().to_u64().ok_or(Error::Overflow("count"))
}

/// Closed formula for `r(k, L_i)` given `𝔯_j(k)` (`j = 2` for `i = 3`, else `1`).
pub fn closed_form_from(i: SpinorPairIndex, k: i64, r_j: u64) -> Result<u64> {
    let split = two_adic_split(k)?;
    let base = c_table(i, split.a, split.alpha_res) * Rational::from(r_j as i128);
    let total = if (split.a, split.alpha_res) == (0, 1) { base + Rational::from(correction(i, k)) } else { base };
    to_count(total, &format!("closed form for L{} at k = {k}", i.0))
}

/// Closed formula for `r(k, L_i)`, `k ≥ 1`.
pub fn r_closed_form(i: SpinorPairIndex, k: i64) -> Result<u64> {
    if k <= 0 {
        return Err(Error::NonPositive(k));
    }
    closed_form_from(i, k, rep_count(&i.reference_form(), k)?)
}

/// Predicted `r(k, L_i) − r(k, L_i')`.
///
/// For `L_3` this is the explicit case split on the parity of `k`; for the
/// others it is twice the square-class correction of the closed formula.
pub fn spinor_difference(i: SpinorPairIndex, k: i64) -> Result<i128> {
    if k <= 0 {
        return Err(Error::NonPositive(k));
    }
    if i.0 == 3 {
        if k % 2 == 0 {
            return Ok(0);
        }
        return Ok(match exact_sqrt(k) {
            Some(root) => sign((root - 1) / 2) * sign((k - 1) / 8) * 2 * root as i128,
            None => 0,
        });
    }
    Ok(2 * correction(i, k))
}

/// `r(k, gen(L_i))`, the mass-weighted average over the two classes of the genus.
pub fn genus_average(i: SpinorPairIndex, k: i64) -> Result<Rational> {
    let (l, lp) = (i.lattice(), i.companion());
    let (o, op) = (aut_order(&l)? as i128, aut_order(&lp)? as i128);
    let (rl, rlp) = (rep_count(&l, k)? as i128, rep_count(&lp, k)? as i128);
    let mass = r(1, o) + r(1, op);
    Ok((r(rl, o) + r(rlp, op)) / mass)
}

/// Theta series of `⟨1,1,1⟩` and `⟨1,1,2⟩` up to a bound, for bulk evaluation
/// of the closed formulas.
pub struct SquareSums {
    three: ThetaSeries,
    two_one: ThetaSeries,
}

impl SquareSums {
    pub fn new(upper: u64) -> Result<Self> {
        Ok(SquareSums {
            three: theta_series(&QuadForm::diagonal(&[1, 1, 1])?, upper)?,
            two_one: theta_series(&QuadForm::diagonal(&[1, 1, 2])?, upper)?,
        })
    }

    pub fn upper(&self) -> u64 {
        self.three.upper()
    }

    /// `𝔯₁(k) = r(k, ⟨1,1,1⟩)`.
    pub fn r1(&self, k: i64) -> u64 {
        self.three.at(k)
    }

    /// `𝔯₂(k) = r(k, ⟨1,1,2⟩)`.
    pub fn r2(&self, k: i64) -> u64 {
        self.two_one.at(k)
    }

    pub fn r_j(&self, i: SpinorPairIndex, k: i64) -> u64 {
        if i.uses_r2() {
            self.r2(k)
        } else {
            self.r1(k)
        }
    }

    pub fn closed_form(&self, i: SpinorPairIndex, k: i64) -> Result<u64> {
        closed_form_from(i, k, self.r_j(i, k))
    }

    /// `c_i(a, α)·𝔯_j(k)`, the predicted genus average (`k = 0` gives 1).
    pub fn genus_prediction(&self, i: SpinorPairIndex, k: i64) -> Result<Rational> {
        if k == 0 {
            return Ok(Rational::from(1));
        }
        let s = two_adic_split(k)?;
        Ok(c_table(i, s.a, s.alpha_res) * Rational::from(self.r_j(i, k) as i128))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalvingFailure {
    /// `r(2k, ⟨1,1,2⟩) ≠ r(k, ⟨1,1,1⟩)`
    Even { k: u64, lhs: u64, rhs: u64 },
    /// `3·r(2k+1, ⟨1,1,2⟩) ≠ r(4k+2, ⟨1,1,1⟩)`
    Odd { k: u64, lhs: u64, rhs: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingReport {
    pub upper: u64,
    pub first_failure: Option<HalvingFailure>,
}

impl HalvingReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `r(2k, ⟨1,1,2⟩) = r(k, ⟨1,1,1⟩)` and `r(2k+1, ⟨1,1,2⟩) = ⅓ r(4k+2, ⟨1,1,1⟩)`
/// for `1 ≤ k ≤ upper`.
pub fn halving_identities_check(upper: u64) -> Result<HalvingReport> {
    if upper == 0 {
        return Ok(HalvingReport { upper, first_failure: None });
    }
    let three = theta_series(&QuadForm::diagonal(&[1, 1, 1])?, 4 * upper + 2)?;
    let two_one = theta_series(&QuadForm::diagonal(&[1, 1, 2])?, 2 * upper + 1)?;
    for k in 1..=upper as i64 {
        let (lhs, rhs) = (two_one.at(2 * k), three.at(k));
        if lhs != rhs {
            return Ok(HalvingReport { upper, first_failure: Some(HalvingFailure::Even { k: k as u64, lhs, rhs }) });
        }
        let (lhs, rhs) = (3 * two_one.at(2 * k + 1), three.at(4 * k + 2));
        if lhs != rhs {
            return Ok(HalvingReport { upper, first_failure: Some(HalvingFailure::Odd { k: k as u64, lhs, rhs }) });
        }
    }
    Ok(HalvingReport { upper, first_failure: None })
}
