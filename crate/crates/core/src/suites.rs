//! Named verification suites. Each compares a formula or structural claim
//! against direct enumeration over a range controlled by one `max` parameter.
//! Randomized suites use fixed seeds, so every run is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{halving_identities_check, spinor_difference, two_adic_split, c_table, Rational, SpinorPairIndex, SquareSums};
use crate::congruence::{
    congruence_rep_count, congruence_rep_list, coset_theta, find_residue, from_shifted, to_shifted, to_shifted_with,
    CongruenceCondition, CongruenceLattices,
};
use crate::criteria::{
    check_closed_form, check_vanishing_iff, factor_identities_check, instances, structure_check, Case, CheckReport,
    ClosedFormCase,
};
use crate::enumerate::{box_scan_theta, shifted_rep_count, shifted_rep_list, theta_series, ShiftedTarget};
use crate::error::Result;
use crate::form::QuadForm;
use crate::isometry::{aut_order, is_isometric};
use crate::matrix::{BigMatrix, IntMatrix};
use crate::normal_form::{hnf, snf};
use crate::watson::{chain_reaches, watson_chain, watson_transform};

pub struct Suite {
    pub name: &'static str,
    pub summary: &'static str,
    /// What `max` bounds, for help text.
    pub max_meaning: &'static str,
    pub default_max: u64,
    run: fn(u64) -> Result<CheckReport>,
}

impl Suite {
    pub fn run(&self, max: u64) -> Result<CheckReport> {
        let mut report = (self.run)(max)?;
        report.name = self.name.to_string();
        Ok(report)
    }
}

static SUITES: &[Suite] = &[
    Suite {
        name: "bell-formulas",
        summary: "closed formulas for r(k, L_i) against enumeration",
        max_meaning: "largest k",
        default_max: 10_000,
        run: bell_formulas,
    },
    Suite {
        name: "genus-average",
        summary: "(r(k, L_i) + r(k, L_i')) / 2 = c_i(a, alpha) r_j(k)",
        max_meaning: "largest k",
        default_max: 10_000,
        run: genus_average_suite,
    },
    Suite {
        name: "spinor-difference",
        summary: "r(k, L_3) - r(k, L_3') on odd squares and elsewhere",
        max_meaning: "largest k",
        default_max: 10_000,
        run: spinor_difference_suite,
    },
    Suite {
        name: "halving",
        summary: "r(2k, <1,1,2>) = r(k, <1,1,1>) and 3 r(2k+1, <1,1,2>) = r(4k+2, <1,1,1>)",
        max_meaning: "largest k",
        default_max: 5_000,
        run: halving,
    },
    Suite {
        name: "bijection",
        summary: "congruence counts equal shifted counts, both directions, on random and built-in instances",
        max_meaning: "number of random instances (half as many converse instances)",
        default_max: 200,
        run: bijection,
    },
    Suite {
        name: "structure",
        summary: "kernel and extended lattices, indices and isometries of the built-in instances",
        max_meaning: "unused",
        default_max: 0,
        run: structure,
    },
    Suite {
        name: "coset-sums",
        summary: "coset decomposition, negation symmetry and gcd vanishing on built-in instances",
        max_meaning: "largest represented value a",
        default_max: 500,
        run: coset_sums,
    },
    Suite {
        name: "vanishing-low",
        summary: "vanishing criteria for M1, M2, M3",
        max_meaning: "largest n",
        default_max: 2_000,
        run: vanishing_low,
    },
    Suite {
        name: "vanishing-high",
        summary: "vanishing criteria for M4, M5, M6 and positivity on 8n+5, 16n+10",
        max_meaning: "largest n",
        default_max: 2_000,
        run: vanishing_high,
    },
    Suite {
        name: "closed-forms",
        summary: "closed formulas for the M2, M4, M5, M6 congruence counts",
        max_meaning: "largest n",
        default_max: 2_000,
        run: closed_forms,
    },
    Suite {
        name: "factor-identities",
        summary: "multiplicative identities between congruence counts and auxiliary forms",
        max_meaning: "largest n",
        default_max: 500,
        run: factor_identities,
    },
    Suite {
        name: "properties",
        summary: "automorphism orders, Watson fixed points and chains, normal form identities",
        max_meaning: "number of random matrices for the normal form checks",
        default_max: 500,
        run: properties,
    },
    Suite {
        name: "oracle",
        summary: "elimination-bounded enumeration against a naive box scan on built-in forms",
        max_meaning: "largest k",
        default_max: 200,
        run: oracle,
    },
];

pub fn suites() -> &'static [Suite] {
    SUITES
}

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random positive-definite form with diagonal in `1..=6` and off-diagonal in `-2..=2`.
pub fn random_form<R: Rng>(rng: &mut R, n: usize) -> QuadForm {
    loop {
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g.set(i, i, rng.gen_range(1..=6));
            for j in 0..i {
                let v = rng.gen_range(-2..=2);
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        if let Ok(f) = QuadForm::new(g) {
            return f;
        }
    }
}

fn all_pairs() -> impl Iterator<Item = SpinorPairIndex> {
    SpinorPairIndex::ALL.into_iter()
}

fn bell_formulas(max: u64) -> Result<CheckReport> {
    let sums = SquareSums::new(max)?;
    let mut report = CheckReport::new("bell-formulas");
    for i in all_pairs() {
        let theta = theta_series(&i.lattice(), max)?;
        for k in 1..=max as i64 {
            let formula = sums.closed_form(i, k);
            let count = theta.at(k);
            report.expect(formula.as_ref() == Ok(&count), || format!("L{} k = {k}: formula {formula:?}, count {count}", i.get()));
        }
    }
    Ok(report)
}

fn genus_average_suite(max: u64) -> Result<CheckReport> {
    let sums = SquareSums::new(max)?;
    let mut report = CheckReport::new("genus-average");
    for i in all_pairs() {
        let l = theta_series(&i.lattice(), max)?;
        let lp = theta_series(&i.companion(), max)?;
        for k in 1..=max as i64 {
            let avg = Rational::new(l.at(k) as i128 + lp.at(k) as i128, 2);
            let split = two_adic_split(k)?;
            let predicted = c_table(i, split.a, split.alpha_res) * Rational::from(sums.r_j(i, k) as i128);
            report.expect(avg == predicted, || format!("L{} k = {k}: average {avg}, table {predicted}", i.get()));
        }
    }
    Ok(report)
}

fn spinor_difference_suite(max: u64) -> Result<CheckReport> {
    let i = SpinorPairIndex::new(3)?;
    let l = theta_series(&i.lattice(), max)?;
    let lp = theta_series(&i.companion(), max)?;
    let mut report = CheckReport::new("spinor-difference");
    for k in 1..=max as i64 {
        let diff = l.at(k) as i128 - lp.at(k) as i128;
        let predicted = spinor_difference(i, k)?;
        report.expect(diff == predicted, || format!("k = {k}: difference {diff}, formula {predicted}"));
        if k % 2 == 0 {
            report.expect(diff == 0, || format!("k = {k}: even k with difference {diff}"));
        }
    }
    Ok(report)
}

fn halving(max: u64) -> Result<CheckReport> {
    let h = halving_identities_check(max)?;
    let mut report = CheckReport::new("halving");
    report.checked = 2 * max;
    report.failure = h.first_failure.map(|f| format!("{f:?}"));
    Ok(report)
}

fn random_condition<R: Rng>(rng: &mut R, n: usize) -> CongruenceCondition {
    const MODULI: [i64; 6] = [1, 2, 3, 4, 6, 8];
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, rng.gen_range(-3..=3));
        }
    }
    let s: Vec<i64> = (0..n).map(|_| MODULI[rng.gen_range(0..MODULI.len())]).collect();
    let w: Vec<i64> = s.iter().map(|&m| rng.gen_range(0..m)).collect();
    CongruenceCondition::new(b, w, s).expect("well-formed condition")
}

/// Forward direction on one instance, with the canonical residue and with a shifted one.
fn check_forward<R: Rng>(report: &mut CheckReport, rng: &mut R, f: &QuadForm, a: i64, cond: &CongruenceCondition) -> Result<()> {
    let direct = congruence_rep_list(f, a, cond)?;
    let Some(y) = find_residue(cond)? else {
        report.expect(direct.is_empty(), || format!("{f} a = {a}: unsolvable condition but {} solutions", direct.len()));
        return Ok(());
    };
    let problem = to_shifted(f, a, cond)?;
    let shifted = shifted_rep_count(&problem.target, problem.value)?;
    report.expect(shifted == direct.len() as u64, || {
        format!("{f} a = {a} cond {cond:?}: direct {}, shifted {shifted}", direct.len())
    });
    for x in &direct {
        let c = problem.phi(x)?;
        let back = problem.psi(&c)?;
        report.expect(&back == x && problem.target.evaluate(&c)? == problem.value, || format!("round trip fails at {x:?}"));
    }
    for c in shifted_rep_list(&problem.target, problem.value)? {
        let x = problem.psi(&c)?;
        report.expect(problem.phi(&x)? == c, || format!("round trip fails at {c:?}"));
    }
    // any other residue gives the same count
    let lat = CongruenceLattices::new(cond)?;
    let shift: Vec<i64> = (0..cond.dim()).map(|_| rng.gen_range(-2..=2)).collect();
    let moved = lat.kernel_basis.mul_vec(&shift)?;
    let y2: Vec<i64> = y.iter().zip(&moved).map(|(a, b)| a + b).collect();
    let other = to_shifted_with(f, a, &CongruenceLattices::with_residue(cond, y2)?)?;
    let count2 = shifted_rep_count(&other.target, other.value)?;
    report.expect(count2 == direct.len() as u64, || format!("{f} a = {a}: second residue gives {count2}"));
    Ok(())
}

fn bijection(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("bijection");
    let mut rng = rng(0x7131);
    for _ in 0..max {
        let n = rng.gen_range(1..=3);
        let f = random_form(&mut rng, n);
        let cond = random_condition(&mut rng, n);
        let a = rng.gen_range(0..=200);
        check_forward(&mut report, &mut rng, &f, a, &cond)?;
    }
    for inst in instances() {
        for a in (0..=200).step_by(7) {
            check_forward(&mut report, &mut rng, &inst.form, a, &inst.cond)?;
        }
    }
    // converse
    for _ in 0..max.div_ceil(2) {
        let n = rng.gen_range(1..=3);
        let inner = random_form(&mut rng, n);
        let shift: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let target = ShiftedTarget::new(inner, shift)?;
        let value = rng.gen_range(target.value_floor()?..=60);
        let expected = shifted_rep_count(&target, value)?;
        let problem = from_shifted(&target, value)?;
        report.expect(problem.cond.contains(&problem.residue_y)?, || "converse residue fails its condition".into());
        let count = congruence_rep_count(&problem.form, problem.value, &problem.cond)?;
        report.expect(count == expected, || format!("converse of {target:?} at {value}: {count} vs {expected}"));
    }
    Ok(report)
}

fn structure(_max: u64) -> Result<CheckReport> {
    structure_check()
}

/// A synthetic instance with coset index 3, for the halving consequence of negation symmetry.
fn index_three_instance() -> (QuadForm, CongruenceCondition) {
    (
        QuadForm::diagonal(&[1, 2, 3]).expect("diagonal form"),
        CongruenceCondition::coordinatewise(vec![1, 2, 0], vec![3, 3, 3]).expect("condition"),
    )
}

fn coset_sums(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("coset-sums");
    let mut cases: Vec<(String, QuadForm, CongruenceCondition)> =
        instances().into_iter().map(|i| (i.id.label().to_string(), i.form, i.cond)).collect();
    let (f3, c3) = index_three_instance();
    cases.push(("d=3".into(), f3, c3));
    for (tag, f, cond) in cases {
        let lat = CongruenceLattices::new(&cond)?;
        let d = lat.index_d as usize;
        // rows k = 0..d of r_{B,kw}, then r_{B,-w} separately
        let rows = coset_theta(&f, max, &cond, d)?;
        let minus = crate::congruence::congruence_theta(&f, max, &cond.with_multiple(-1))?;
        let ext = theta_series(&lat.extended_form(&f)?, max)?;
        let ker = theta_series(&lat.kernel_form(&f)?, max)?;
        let s = cond.s().iter().fold(0i64, |g, &v| num_integer::Integer::gcd(&g, &v));
        let det_b = cond.b().determinant()?;
        let coprime = |v: i128| num_integer::Integer::gcd(&v, &(s as i128)) == 1;
        for a in 0..=max as i64 {
            let at = a as usize;
            let total: u64 = rows.iter().map(|r| r[at]).sum();
            report.expect(total == ext.at(a), || format!("{tag} a = {a}: cosets sum to {total}, extended {}", ext.at(a)));
            report.expect(rows[0][at] == ker.at(a), || format!("{tag} a = {a}: homogeneous count differs from kernel form"));
            let w_count = if d > 1 { rows[1][at] } else { rows[0][at] };
            report.expect(minus[at] == w_count, || format!("{tag} a = {a}: r(w) = {w_count}, r(-w) = {}", minus[at]));
            let diff = ext.at(a) as i128 - ker.at(a) as i128;
            match d {
                2 => report.expect(w_count as i128 == diff, || format!("{tag} a = {a}: d = 2 identity fails")),
                3 => report.expect(2 * w_count as i128 == diff, || format!("{tag} a = {a}: d = 3 identity fails")),
                _ => {}
            }
            if s > 1 && coprime(det_b) && coprime(a as i128) {
                for (k, row) in rows.iter().enumerate() {
                    if num_integer::Integer::gcd(&(k as i64), &s) > 1 {
                        report.expect(row[at] == 0, || format!("{tag} a = {a}: r(kw) = {} for k = {k}", row[at]));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn vanishing_low(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("vanishing-low");
    for case in [Case::SumOfThreeSquares, Case::TwoSquaresPlusDouble, Case::OneFourTwelve] {
        report.absorb(check_vanishing_iff(case, max)?);
    }
    Ok(report)
}

fn vanishing_high(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("vanishing-high");
    for case in [Case::CosetFour, Case::CosetFive, Case::CosetSix] {
        report.absorb(check_vanishing_iff(case, max)?);
    }
    Ok(report)
}

fn closed_forms(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("closed-forms");
    for case in ClosedFormCase::ALL {
        report.absorb(check_closed_form(case, max)?);
    }
    Ok(report)
}

fn factor_identities(max: u64) -> Result<CheckReport> {
    factor_identities_check(max)
}

const ODD_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn properties(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("properties");
    let diag = |d: &[i64]| QuadForm::diagonal(d);
    let l3 = SpinorPairIndex::new(3)?;
    for (f, expected) in [(diag(&[1, 1, 1])?, 48), (l3.lattice(), 8), (l3.companion(), 8)] {
        let o = aut_order(&f)?;
        report.expect(o == expected, || format!("o({f}) = {o}, expected {expected}"));
    }

    let mut rng = rng(0x3a7);
    for _ in 0..50 {
        let f = random_form(&mut rng, 3);
        let det = f.determinant();
        let p = ODD_PRIMES.into_iter().find(|&p| det % p as i128 != 0).expect("some small prime is coprime");
        let out = watson_transform(&f, p)?.output;
        report.expect(is_isometric(&out, &f)?.is_some(), || format!("lambda_{p}({f}) = {out} is not isometric"));
    }

    let start = diag(&[1, 2, 1 << 17])?;
    let chain = watson_chain(&start, 2, 40)?;
    let targets = [diag(&[1, 1, 32])?, diag(&[1, 2, 32])?];
    let reached = chain_reaches(&start, &chain, &targets)?;
    report.expect(reached.is_some(), || "chain from <1,2,2^17> misses <1,1,32> and <1,2,32>".into());

    for _ in 0..max {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let mut a = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a.set(i, j, rng.gen_range(-50..=50));
            }
        }
        check_normal_forms(&mut report, &a)?;
    }
    Ok(report)
}

fn check_normal_forms(report: &mut CheckReport, a: &IntMatrix) -> Result<()> {
    let h = hnf(a)?;
    report.expect(a.mul(&h.transform)? == h.h, || format!("A·T ≠ H for {a}"));
    report.expect(h.transform.determinant()?.abs() == 1, || format!("HNF transform not unimodular for {a}"));
    let mut row = 0;
    for j in 0..h.rank {
        while h.h.get(row, j) == 0 {
            row += 1;
        }
        let pivot = h.h.get(row, j);
        let above_zero = (0..row).all(|i| h.h.get(i, j) == 0);
        let reduced = (0..j).all(|k| (0..pivot).contains(&h.h.get(row, k)));
        report.expect(pivot > 0 && above_zero && reduced, || format!("HNF shape fails for {a}"));
        row += 1;
    }
    let zero_tail = (h.rank..a.cols()).all(|j| h.h.col(j).iter().all(|&v| v == 0));
    report.expect(zero_tail, || format!("HNF zero columns not last for {a}"));

    let s = snf(a)?;
    let product = s.left.mul(&BigMatrix::from(a))?.mul(&s.right)?;
    report.expect(product == BigMatrix::from(&s.d), || format!("U·A·V ≠ D for {a}"));
    report.expect(s.left.is_unimodular() && s.right.is_unimodular(), || format!("SNF transforms not unimodular for {a}"));
    let f = s.invariant_factors();
    let diagonal = (0..s.d.rows()).all(|i| (0..s.d.cols()).all(|j| i == j || s.d.get(i, j) == 0));
    let divides = f.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 });
    let nonneg = f.iter().all(|&v| v >= 0);
    report.expect(diagonal && divides && nonneg, || format!("SNF shape fails for {a}: {:?}", f));
    report.expect(s.rank == h.rank, || format!("rank mismatch for {a}"));
    Ok(())
}

/// Every built-in form: Bell lattices and their companions, the auxiliary
/// forms and the congruence instance forms.
pub fn builtin_forms() -> Vec<QuadForm> {
    let mut out = Vec::new();
    for i in all_pairs() {
        out.push(i.lattice());
        out.push(i.companion());
    }
    out.extend([crate::criteria::k1(), crate::criteria::k2(), crate::criteria::k3()]);
    for inst in instances() {
        out.push(inst.form.clone());
        if let Some(aux) = inst.auxiliary {
            out.push(aux);
        }
    }
    out.dedup();
    out
}

fn oracle(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("oracle");
    for f in builtin_forms() {
        let fast = theta_series(&f, max)?;
        let slow = box_scan_theta(&f, max)?;
        for (k, (a, b)) in fast.counts().iter().zip(&slow).enumerate() {
            report.expect(a == b, || format!("{f} k = {k}: enumeration {a}, box scan {b}"));
        }
    }
    Ok(report)
}
