//! Built-in congruence instances and the arithmetic criteria for when their
//! counts vanish, together with the closed formulas they inherit from the
//! Bell lattices.
//!
//! Every check returns a [`CheckReport`] carrying the first failure, if any.

use std::fmt;

use crate::bell::{correction, Rational, SpinorPairIndex, SquareSums};
use crate::congruence::{congruence_theta, CongruenceCondition, CongruenceLattices};
use crate::enumerate::theta_series;
use crate::error::{Error, Result};
use crate::form::QuadForm;
use crate::isometry::is_isometric;
use crate::matrix::IntMatrix;
use crate::normal_form::span_basis;

/// Outcome of a range check: how many cases were compared and the first mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Counts one comparison; records `detail()` if it is the first failure.
    pub fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        if self.failure.is_none() {
            self.failure = other.failure.map(|f| format!("{}: {f}", other.name));
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.name, self.checked),
            Some(why) => write!(f, "FAIL {} ({} checks): {why}", self.name, self.checked),
        }
    }
}

/// `{k ≥ 1 : k ≡ residue (mod modulus)}`, indexed by `n` as `modulus·n + residue`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub modulus: i64,
    pub residue: i64,
}

impl Progression {
    pub const fn new(modulus: i64, residue: i64) -> Self {
        Progression { modulus, residue }
    }

    pub fn term(&self, n: u64) -> i64 {
        self.modulus * n as i64 + self.residue
    }

    pub fn contains(&self, k: i64) -> bool {
        k > 0 && k.rem_euclid(self.modulus) == self.residue
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}n+{}", self.modulus, self.residue)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceId {
    One,
    Two,
    /// The rewritten form of instance two: `⟨1,16,8⟩` with `x ≡ (1,1,0) mod (2,2,1)`.
    TwoPrime,
    Three,
    Four,
    Five,
    Six,
}

impl InstanceId {
    pub const ALL: [InstanceId; 7] = [
        InstanceId::One,
        InstanceId::Two,
        InstanceId::TwoPrime,
        InstanceId::Three,
        InstanceId::Four,
        InstanceId::Five,
        InstanceId::Six,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            InstanceId::One => "M1",
            InstanceId::Two => "M2",
            InstanceId::TwoPrime => "M2'",
            InstanceId::Three => "M3",
            InstanceId::Four => "M4",
            InstanceId::Five => "M5",
            InstanceId::Six => "M6",
        }
    }
}

/// A form, a congruence condition, and the structure asserted for it.
#[derive(Clone, Debug)]
pub struct WorkedInstance {
    pub id: InstanceId,
    pub form: QuadForm,
    pub cond: CongruenceCondition,
    /// The form the extended lattice is isometric to, when one is asserted.
    pub auxiliary: Option<QuadForm>,
    pub progression: Progression,
    pub index_d: i64,
    /// Printed generators of the homogeneous lattice, when given.
    pub kernel_generators: Option<Vec<[i64; 3]>>,
    /// Printed generators of the extended lattice, when given.
    pub extended_generators: Option<Vec<[i64; 3]>>,
    /// Printed Gram matrix of the homogeneous lattice in the printed generators.
    pub kernel_gram: Option<IntMatrix>,
}

fn diag(d: [i64; 3]) -> QuadForm {
    QuadForm::diagonal(&d).expect("built-in form")
}

fn rows(r: [[i64; 3]; 3]) -> IntMatrix {
    IntMatrix::from_rows(&r).expect("built-in matrix")
}

pub fn k1() -> QuadForm {
    QuadForm::new(rows([[9, 4, 2], [4, 16, 8], [2, 8, 36]])).expect("built-in form")
}

pub fn k2() -> QuadForm {
    QuadForm::new(rows([[4, 0, 2], [0, 8, 0], [2, 0, 17]])).expect("built-in form")
}

pub fn k3() -> QuadForm {
    QuadForm::new(rows([[9, 0, 0], [0, 16, 8], [0, 8, 112]])).expect("built-in form")
}

fn cond(b: IntMatrix, w: [i64; 3], s: [i64; 3]) -> CongruenceCondition {
    CongruenceCondition::new(b, w.to_vec(), s.to_vec()).expect("built-in condition")
}

pub fn instance(id: InstanceId) -> WorkedInstance {
    let id3 = IntMatrix::identity(3);
    let lp = |i: u8| SpinorPairIndex::new(i).expect("valid index").companion();
    let base = |form, c, aux, prog, d| WorkedInstance {
        id,
        form,
        cond: c,
        auxiliary: aux,
        progression: prog,
        index_d: d,
        kernel_generators: None,
        extended_generators: None,
        kernel_gram: None,
    };
    match id {
        InstanceId::One => WorkedInstance {
            kernel_generators: Some(vec![[4, 0, 0], [0, 8, 0], [0, 0, 8]]),
            extended_generators: Some(vec![[1, 2, 2], [4, 0, 0], [0, 8, 0]]),
            kernel_gram: Some(IntMatrix::diagonal(&[16, 64, 64])),
            ..base(diag([1, 1, 1]), cond(id3, [1, 2, 2], [4, 8, 8]), Some(k1()), Progression::new(8, 1), 4)
        },
        InstanceId::Two => base(diag([1, 1, 2]), cond(id3, [1, 4, 0], [4, 16, 2]), None, Progression::new(8, 1), 4),
        InstanceId::TwoPrime => WorkedInstance {
            kernel_gram: Some(IntMatrix::diagonal(&[4, 64, 8])),
            kernel_generators: Some(vec![[2, 0, 0], [0, 2, 0], [0, 0, 1]]),
            ..base(diag([1, 16, 8]), cond(id3, [1, 1, 0], [2, 2, 1]), Some(k2()), Progression::new(8, 1), 2)
        },
        InstanceId::Three => WorkedInstance {
            kernel_generators: Some(vec![[12, 0, 0], [0, 3, -3], [0, 3, 3]]),
            extended_generators: Some(vec![[3, 0, 0], [0, 3, -3], [0, 1, 1]]),
            kernel_gram: Some(rows([[144, 0, 0], [0, 144, -72], [0, -72, 144]])),
            ..base(
                diag([1, 4, 12]),
                cond(rows([[1, 0, 0], [0, 1, -1], [0, 1, 1]]), [3, 0, 2], [12, 6, 6]),
                Some(k3()),
                Progression::new(24, 1),
                12,
            )
        },
        InstanceId::Four => WorkedInstance {
            kernel_generators: Some(vec![[2, 0, 0], [0, 2, 0], [0, 0, 4]]),
            extended_generators: Some(vec![[1, 0, 2], [2, 0, 0], [0, 2, 0]]),
            kernel_gram: Some(IntMatrix::diagonal(&[4, 4, 16])),
            ..base(diag([1, 1, 1]), cond(id3, [1, 0, 2], [2, 2, 4]), Some(lp(2)), Progression::new(8, 1), 2)
        },
        InstanceId::Five => base(diag([1, 1, 1]), cond(id3, [1, 2, 2], [2, 4, 4]), Some(lp(4)), Progression::new(8, 1), 2),
        InstanceId::Six => base(
            diag([1, 1, 2]),
            cond(id3, [1, 1, 2], [2, 2, 4]),
            Some(lp(1).scaled(2).expect("small form")),
            Progression::new(16, 2),
            2,
        ),
    }
}

pub fn instances() -> Vec<WorkedInstance> {
    InstanceId::ALL.iter().map(|&id| instance(id)).collect()
}

/// Recomputes the lattices of every instance and compares them with the
/// stored data: index `d`, printed generators up to Hermite form, printed
/// Gram matrices, and isometry of the extended form with the auxiliary form
/// (with the witness checked by congruence).
pub fn structure_check() -> Result<CheckReport> {
    let mut report = CheckReport::new("structure");
    let same_span = |a: &IntMatrix, gens: &[[i64; 3]]| -> Result<bool> {
        Ok(*a == span_basis(&IntMatrix::from_columns(gens)?)?)
    };
    for inst in instances() {
        let tag = inst.id.label();
        let lat = CongruenceLattices::new(&inst.cond)?;
        report.expect(inst.cond.contains(&lat.residue_y)?, || format!("{tag}: residue fails the condition"));
        report.expect(lat.index_d == inst.index_d, || format!("{tag}: d = {}, expected {}", lat.index_d, inst.index_d));
        let dk = lat.kernel_basis.determinant()?.abs();
        let de = lat.extended_basis.determinant()?.abs();
        report.expect(dk == lat.index_d as i128 * de, || format!("{tag}: index relation {dk} ≠ {}·{de}", lat.index_d));
        if let Some(gens) = &inst.kernel_generators {
            report.expect(same_span(&lat.kernel_basis, gens)?, || format!("{tag}: kernel lattice differs"));
            if let Some(g) = &inst.kernel_gram {
                let printed = inst.form.gram().congruent(&IntMatrix::from_columns(gens)?)?;
                report.expect(printed == *g, || format!("{tag}: kernel Gram {printed}, expected {g}"));
            }
        }
        if let Some(gens) = &inst.extended_generators {
            report.expect(same_span(&lat.extended_basis, gens)?, || format!("{tag}: extended lattice differs"));
        }
        if let Some(aux) = &inst.auxiliary {
            let ext = lat.extended_form(&inst.form)?;
            let witness = is_isometric(&ext, aux)?;
            let ok = match &witness {
                Some(t) => ext.gram().congruent(t.matrix())? == *aux.gram() && t.determinant().abs() == 1,
                None => false,
            };
            report.expect(ok, || format!("{tag}: extended form {ext} is not isometric to {aux}"));
        }
    }
    // K₂ is printed with exactly the entries of L₃′
    let l3p = SpinorPairIndex::new(3)?.companion();
    report.expect(k2() == l3p, || "K2 differs from L3'".into());
    Ok(report)
}

/// Prime factorization by trial division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// The vanishing statements: a congruence count is zero exactly on a
/// set of squares described by the prime divisors of the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// `M1` on `8n+1`: root primes `≡ 1 (mod 4)`.
    SumOfThreeSquares,
    /// `M2` on `8n+1`: root primes `≡ 1, 3 (mod 8)`.
    TwoSquaresPlusDouble,
    /// `M3` on `24n+1`: root primes `≡ 1 (mod 3)`.
    OneFourTwelve,
    /// `M4` on `8n+1`, with `8n+5` always represented.
    CosetFour,
    /// `M5` on `8n+1`.
    CosetFive,
    /// `M6` on `16n+2 = 2M²`, with `16n+10` always represented.
    CosetSix,
}

impl Case {
    pub const ALL: [Case; 6] =
        [Case::SumOfThreeSquares, Case::TwoSquaresPlusDouble, Case::OneFourTwelve, Case::CosetFour, Case::CosetFive, Case::CosetSix];

    pub fn name(&self) -> &'static str {
        match self {
            Case::SumOfThreeSquares => "M1 on 8n+1",
            Case::TwoSquaresPlusDouble => "M2 on 8n+1",
            Case::OneFourTwelve => "M3 on 24n+1",
            Case::CosetFour => "M4 on 8n+1",
            Case::CosetFive => "M5 on 8n+1",
            Case::CosetSix => "M6 on 16n+2",
        }
    }

    pub fn instance(&self) -> InstanceId {
        match self {
            Case::SumOfThreeSquares => InstanceId::One,
            Case::TwoSquaresPlusDouble => InstanceId::Two,
            Case::OneFourTwelve => InstanceId::Three,
            Case::CosetFour => InstanceId::Four,
            Case::CosetFive => InstanceId::Five,
            Case::CosetSix => InstanceId::Six,
        }
    }

    pub fn progression(&self) -> Progression {
        instance(self.instance()).progression
    }

    /// The progression asserted to be always represented, if any.
    pub fn positive_progression(&self) -> Option<Progression> {
        match self {
            Case::CosetFour => Some(Progression::new(8, 5)),
            Case::CosetSix => Some(Progression::new(16, 10)),
            _ => None,
        }
    }

    /// `(modulus, allowed residues)` for the prime divisors of the root.
    fn root_primes(&self) -> (u64, &'static [u64]) {
        match self {
            Case::TwoSquaresPlusDouble => (8, &[1, 3]),
            Case::OneFourTwelve => (3, &[1]),
            _ => (4, &[1]),
        }
    }
}

/// Whether `k` is in the set where the case's count is asserted to vanish.
pub fn vanishing_predicate(case: Case, k: i64) -> Result<bool> {
    let prog = case.progression();
    if !prog.contains(k) {
        return Err(Error::WrongProgression {
            case: case.name(),
            value: k,
            modulus: prog.modulus,
            residue: prog.residue,
        });
    }
    let square = if case == Case::CosetSix { k / 2 } else { k };
    let Some(root) = crate::bell::exact_sqrt(square) else {
        return Ok(false);
    };
    let (m, allowed) = case.root_primes();
    let f = factorize(root as u64)?;
    let all_allowed = f.primes().all(|p| allowed.contains(&(p % m)));
    Ok(all_allowed)
}

/// `r_{B,w}^s(k, M)` for `k ≤ upper`, by one enumeration pass.
fn counts_for(id: InstanceId, upper: u64) -> Result<Vec<u64>> {
    let inst = instance(id);
    congruence_theta(&inst.form, upper, &inst.cond)
}

/// For `1 ≤ n ≤ n_max`: count `= 0` iff the predicate holds, and the
/// positivity progression (if any) is always represented.
pub fn check_vanishing_iff(case: Case, n_max: u64) -> Result<CheckReport> {
    let prog = case.progression();
    let upper = prog.term(n_max).max(case.positive_progression().map_or(0, |p| p.term(n_max)));
    let counts = counts_for(case.instance(), upper as u64)?;
    let mut report = CheckReport::new(format!("vanishing {}", case.name()));
    for n in 1..=n_max {
        let k = prog.term(n);
        let count = counts[k as usize];
        let predicted = vanishing_predicate(case, k)?;
        report.expect((count == 0) == predicted, || {
            format!("n = {n}, k = {k}: count {count}, predicate {predicted}")
        });
        if let Some(pos) = case.positive_progression() {
            let k = pos.term(n);
            let count = counts[k as usize];
            report.expect(count > 0, || format!("n = {n}, k = {k}: count 0 on {pos}"));
        }
    }
    Ok(report)
}

/// Closed formulas for congruence counts, in terms of `𝔯₁` or `𝔯₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormCase {
    /// `M2` on `8n+1`: `𝔯₂/16 − ¼ δ (−1)^{(√k−1)/2} (−1)ⁿ √k`.
    TwoOnOneMod8,
    /// `M4` on `8n+1`: `𝔯₁/6 − δ (−1)^{(√k−1)/2} √k`.
    FourOnOneMod8,
    /// `M4` on `8n+5`: `𝔯₁/6`.
    FourOnFiveMod8,
    /// `M5` on `8n+1`: `𝔯₁/6 − δ (−1)^{(√k−1)/2} √k`.
    FiveOnOneMod8,
    /// `M6` on `16n+2`: `𝔯₁(8n+1)/3 − δ (−1)^{(√k−1)/2} 2√k` with `k = 8n+1`.
    SixOnTwoMod16,
    /// `M6` on `16n+10`: `𝔯₁(8n+5)/3`.
    SixOnTenMod16,
}

impl ClosedFormCase {
    pub const ALL: [ClosedFormCase; 6] = [
        ClosedFormCase::TwoOnOneMod8,
        ClosedFormCase::FourOnOneMod8,
        ClosedFormCase::FourOnFiveMod8,
        ClosedFormCase::FiveOnOneMod8,
        ClosedFormCase::SixOnTwoMod16,
        ClosedFormCase::SixOnTenMod16,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClosedFormCase::TwoOnOneMod8 => "M2 on 8n+1",
            ClosedFormCase::FourOnOneMod8 => "M4 on 8n+1",
            ClosedFormCase::FourOnFiveMod8 => "M4 on 8n+5",
            ClosedFormCase::FiveOnOneMod8 => "M5 on 8n+1",
            ClosedFormCase::SixOnTwoMod16 => "M6 on 16n+2",
            ClosedFormCase::SixOnTenMod16 => "M6 on 16n+10",
        }
    }

    pub fn instance(&self) -> InstanceId {
        match self {
            ClosedFormCase::TwoOnOneMod8 => InstanceId::Two,
            ClosedFormCase::FourOnOneMod8 | ClosedFormCase::FourOnFiveMod8 => InstanceId::Four,
            ClosedFormCase::FiveOnOneMod8 => InstanceId::Five,
            ClosedFormCase::SixOnTwoMod16 | ClosedFormCase::SixOnTenMod16 => InstanceId::Six,
        }
    }

    /// Where the count is taken.
    pub fn progression(&self) -> Progression {
        match self {
            ClosedFormCase::FourOnFiveMod8 => Progression::new(8, 5),
            ClosedFormCase::SixOnTwoMod16 => Progression::new(16, 2),
            ClosedFormCase::SixOnTenMod16 => Progression::new(16, 10),
            _ => Progression::new(8, 1),
        }
    }

    /// Where the sum-of-squares count is evaluated.
    pub fn argument(&self) -> Progression {
        match self {
            ClosedFormCase::SixOnTwoMod16 => Progression::new(8, 1),
            ClosedFormCase::SixOnTenMod16 | ClosedFormCase::FourOnFiveMod8 => Progression::new(8, 5),
            _ => Progression::new(8, 1),
        }
    }
}

/// The formula at `n`, given the sum-of-squares tables.
pub fn closed_form_rational(case: ClosedFormCase, n: u64, sums: &SquareSums) -> Rational {
    let k = case.argument().term(n);
    let r = |a: i128, b: i128| Rational::new(a, b);
    let one_mod_8 = |i: u8| Rational::from(correction(SpinorPairIndex::new(i).expect("valid index"), k));
    match case {
        // the L3 correction already carries the (−1)ⁿ factor
        ClosedFormCase::TwoOnOneMod8 => r(sums.r2(k) as i128, 16) - one_mod_8(3) / r(4, 1),
        ClosedFormCase::FourOnOneMod8 | ClosedFormCase::FiveOnOneMod8 => r(sums.r1(k) as i128, 6) - one_mod_8(2),
        ClosedFormCase::FourOnFiveMod8 => r(sums.r1(k) as i128, 6),
        // the L1 correction carries the factor 2
        ClosedFormCase::SixOnTwoMod16 => r(sums.r1(k) as i128, 3) - one_mod_8(1),
        ClosedFormCase::SixOnTenMod16 => r(sums.r1(k) as i128, 3),
    }
}

pub fn closed_form_value(case: ClosedFormCase, n: u64) -> Result<u64> {
    let sums = SquareSums::new(case.argument().term(n) as u64)?;
    crate::bell::to_count(closed_form_rational(case, n, &sums), case.name())
}

/// Closed formula against direct congruence counts for `0 ≤ n ≤ n_max`.
pub fn check_closed_form(case: ClosedFormCase, n_max: u64) -> Result<CheckReport> {
    let upper = case.progression().term(n_max) as u64;
    let counts = counts_for(case.instance(), upper)?;
    let sums = SquareSums::new(case.argument().term(n_max) as u64)?;
    let mut report = CheckReport::new(format!("closed form {}", case.name()));
    for n in 0..=n_max {
        let k = case.progression().term(n);
        let formula = closed_form_rational(case, n, &sums);
        let count = counts[k as usize];
        report.expect(formula == Rational::from(count as i128), || {
            format!("n = {n}, k = {k}: formula {formula}, count {count}")
        });
    }
    Ok(report)
}

/// One side of a multiplicative identity.
#[derive(Clone, Debug)]
pub enum Side {
    /// `r_{B,w}^s(k, M)` for an instance.
    Congruence(InstanceId),
    /// `r(k, f)`.
    Form(QuadForm),
}

/// `lhs_factor · lhs(p(n)) = rhs_factor · rhs(q(n))`.
#[derive(Clone, Debug)]
pub struct FactorIdentity {
    pub name: &'static str,
    pub lhs_factor: u64,
    pub lhs: Side,
    pub lhs_at: Progression,
    pub rhs_factor: u64,
    pub rhs: Side,
    pub rhs_at: Progression,
}

pub fn factor_identities() -> Vec<FactorIdentity> {
    let p = Progression::new;
    let lp = |i: u8| Side::Form(SpinorPairIndex::new(i).expect("valid index").companion());
    let id = |name, lf, lhs, la, rf, rhs, ra| FactorIdentity {
        name,
        lhs_factor: lf,
        lhs,
        lhs_at: la,
        rhs_factor: rf,
        rhs,
        rhs_at: ra,
    };
    use InstanceId::*;
    use Side::Congruence as C;
    vec![
        id("2 r(M1) = r(K1)", 2, C(One), p(8, 1), 1, Side::Form(k1()), p(8, 1)),
        id("4 r(M2) = r(K2)", 4, C(Two), p(8, 1), 1, Side::Form(k2()), p(8, 1)),
        id("4 r(M2) = r(M2')", 4, C(Two), p(8, 1), 1, C(TwoPrime), p(8, 1)),
        id("4 r(M3) = r(K3)", 4, C(Three), p(24, 1), 1, Side::Form(k3()), p(24, 1)),
        id("r(M4) = r(L2') on 8n+1", 1, C(Four), p(8, 1), 1, lp(2), p(8, 1)),
        id("r(M4) = r(L2') on 8n+5", 1, C(Four), p(8, 5), 1, lp(2), p(8, 5)),
        id("r(M5) = r(L4')", 1, C(Five), p(8, 1), 1, lp(4), p(8, 1)),
        id("r(M6, 16n+2) = r(L1', 8n+1)", 1, C(Six), p(16, 2), 1, lp(1), p(8, 1)),
        id("r(M6, 16n+10) = r(L1', 8n+5)", 1, C(Six), p(16, 10), 1, lp(1), p(8, 5)),
    ]
}

fn side_counts(side: &Side, upper: u64) -> Result<Vec<u64>> {
    match side {
        Side::Congruence(id) => counts_for(*id, upper),
        Side::Form(f) => Ok(theta_series(f, upper)?.counts().to_vec()),
    }
}

/// Every built-in identity for `1 ≤ n ≤ n_max`.
pub fn factor_identities_check(n_max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("factor identities");
    for ident in factor_identities() {
        let mut sub = CheckReport::new(ident.name);
        let left = side_counts(&ident.lhs, ident.lhs_at.term(n_max) as u64)?;
        let right = side_counts(&ident.rhs, ident.rhs_at.term(n_max) as u64)?;
        for n in 1..=n_max {
            let (kl, kr) = (ident.lhs_at.term(n), ident.rhs_at.term(n));
            let l = ident.lhs_factor * left[kl as usize];
            let r = ident.rhs_factor * right[kr as usize];
            sub.expect(l == r, || format!("n = {n}: {l} ≠ {r}"));
        }
        report.absorb(sub);
    }
    Ok(report)
}
