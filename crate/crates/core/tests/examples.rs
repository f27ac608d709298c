//! Worked examples for each module, checked against brute force where the
//! value is not immediate.

use tqf::bell::{
    bell_form, c_table, genus_average, r_closed_form, reduced_companion, spinor_difference, two_adic_split, BellIndex,
    Rational, SpinorPairIndex, TwoAdicSplit,
};
use tqf::congruence::{
    congruence_rep_count, coset_index, coset_sum_check, extended_lattice, find_residue, from_shifted, kernel_lattice,
    negation_symmetry_check, to_shifted, CongruenceCondition, CongruenceLattices,
};
use tqf::criteria::{instance, k1, InstanceId};
use tqf::enumerate::{box_scan_theta, rep_list};
use tqf::normal_form::span_basis;
use tqf::watson::{chain_reaches, lambda_sublattice, watson_chain, watson_transform};
use tqf::*;

fn diag(d: &[i64]) -> QuadForm {
    QuadForm::diagonal(d).unwrap()
}

fn idx(i: u8) -> SpinorPairIndex {
    SpinorPairIndex::new(i).unwrap()
}

fn gram(rows: &[[i64; 3]]) -> QuadForm {
    QuadForm::from_rows(rows).unwrap()
}

/// `r(k, f)` by scanning a box large enough to hold the ellipsoid.
fn brute(f: &QuadForm, k: i64) -> u64 {
    box_scan_theta(f, k as u64).unwrap()[k as usize]
}

#[test]
fn forms_and_evaluation() {
    assert_eq!(QuadForm::new(IntMatrix::identity(3)).unwrap(), diag(&[1, 1, 1]));
    let l3p = gram(&[[4, 0, 2], [0, 8, 0], [2, 0, 17]]);
    assert_eq!(l3p, idx(3).companion());
    assert!(matches!(QuadForm::from_rows(&[[1, 2], [2, 1]]), Err(Error::NotPositiveDefinite { .. })));
    let f = diag(&[1, 8, 64]);
    assert_eq!(f.evaluate(&[1, 0, 0]).unwrap(), 1);
    assert_eq!(f.evaluate(&[1, 1, 1]).unwrap(), 73);
    assert_eq!(l3p.evaluate(&[1, 0, 0]).unwrap(), 4);
}

#[test]
fn normal_forms() {
    let a = IntMatrix::from_rows(&[[2, 1], [0, 1]]).unwrap();
    let h = hnf(&a).unwrap();
    assert_eq!(h.h, IntMatrix::from_rows(&[[1, 0], [1, 2]]).unwrap());
    assert_eq!(hnf(&IntMatrix::identity(3)).unwrap().h, IntMatrix::identity(3));
    let u = IntMatrix::from_rows(&[[1, 3], [0, 1]]).unwrap();
    assert_eq!(hnf(&a.mul(&u).unwrap()).unwrap().h, h.h);

    let s = snf(&IntMatrix::diagonal(&[4, 16, 2])).unwrap();
    assert_eq!(s.invariant_factors(), vec![2, 4, 16]);
    assert_eq!(snf(&IntMatrix::identity(2)).unwrap().d, IntMatrix::identity(2));
    assert_eq!(snf(&IntMatrix::from_rows(&[[2, 4], [6, 8]]).unwrap()).unwrap().invariant_factors(), vec![2, 4]);
}

#[test]
fn short_vector_lists() {
    assert_eq!(short_vectors(&diag(&[1, 1, 1]), 1).unwrap().len(), 3);
    let mut v: Vec<Vec<i64>> = short_vectors(&diag(&[1, 1, 16]), 2).unwrap().into_iter().map(|(x, _)| x).collect();
    v.sort();
    let mut expected = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, -1, 0]];
    expected.sort();
    assert_eq!(v, expected);
    assert!(short_vectors(&diag(&[2, 3]), 0).unwrap().is_empty());
}

#[test]
fn automorphisms_and_isometries() {
    assert_eq!(aut_order(&diag(&[1, 1, 1])).unwrap(), 48);
    assert_eq!(aut_order(&diag(&[1, 8, 64])).unwrap(), 8);
    assert_eq!(aut_order(&idx(3).companion()).unwrap(), 8);
    let f = idx(4).companion();
    let t = is_isometric(&f, &f).unwrap().unwrap();
    assert_eq!(f.gram().congruent(t.matrix()).unwrap(), *f.gram());
    assert!(is_isometric(&diag(&[1, 1, 16]), &idx(1).companion()).unwrap().is_none());
    let m1 = instance(InstanceId::One);
    let ext = CongruenceLattices::new(&m1.cond).unwrap().extended_form(&m1.form).unwrap();
    let t = is_isometric(&ext, &k1()).unwrap().unwrap();
    assert_eq!(ext.gram().congruent(t.matrix()).unwrap(), *k1().gram());
}

#[test]
fn counting() {
    assert_eq!(rep_count(&diag(&[1, 1, 1]), 1).unwrap(), 6);
    assert_eq!(rep_count(&diag(&[1, 1, 1]), 9).unwrap(), 30);
    assert_eq!(rep_count(&diag(&[1, 1, 2]), 1).unwrap(), 4);
    assert_eq!(theta_series(&diag(&[1, 1, 1]), 2).unwrap().counts(), &[1, 6, 12]);
    assert_eq!(theta_series(&diag(&[1, 1, 16]), 1).unwrap().counts(), &[1, 4]);
    assert_eq!(theta_series(&diag(&[3, 5]), 0).unwrap().counts(), &[1]);

    let one = diag(&[1]);
    assert_eq!(shifted_rep_count(&ShiftedTarget::new(one.clone(), vec![0]).unwrap(), 4).unwrap(), 2);
    assert_eq!(shifted_rep_count(&ShiftedTarget::new(one.clone(), vec![1]).unwrap(), 3).unwrap(), 2);
    // minimum of x² + 2x is −1
    assert_eq!(shifted_rep_count(&ShiftedTarget::new(one, vec![1]).unwrap(), -2).unwrap(), 0);

    assert_eq!(rep_list(&diag(&[1, 1, 1]), 1).unwrap().len(), 6);
    let l = rep_list(&diag(&[1, 1, 16]), 16).unwrap();
    for v in [[0, 0, 1], [0, 0, -1], [0, 4, 0], [0, -4, 0], [4, 0, 0], [-4, 0, 0]] {
        assert!(l.contains(&v.to_vec()));
    }
    assert!(rep_list(&diag(&[1, 1, 1]), 7).unwrap().is_empty());
    assert_eq!(brute(&diag(&[1, 1, 1]), 9), 30);
}

#[test]
fn bell_constructions() {
    assert_eq!(bell_form(BellIndex::new(0, 0).unwrap()).unwrap(), diag(&[1, 1, 1]));
    assert_eq!(bell_form(BellIndex::new(1, 16).unwrap()).unwrap(), diag(&[1, 2, 65536]));
    assert!(matches!(bell_form(BellIndex::new(3, 64).unwrap()), Err(Error::Overflow(_))));
    assert_eq!(reduced_companion(BellIndex::new(0, 0).unwrap()), diag(&[1, 1, 1]));
    assert_eq!(reduced_companion(BellIndex::new(1, 16).unwrap()), diag(&[1, 1, 2]));
    assert_eq!(reduced_companion(BellIndex::new(8, 16).unwrap()), diag(&[1, 1, 1]));
    assert_eq!(two_adic_split(1).unwrap(), TwoAdicSplit { a: 0, alpha_res: 1, t: 0 });
    assert_eq!(two_adic_split(40).unwrap(), TwoAdicSplit { a: 3, alpha_res: 5, t: 0 });
    assert_eq!(two_adic_split(12).unwrap(), TwoAdicSplit { a: 2, alpha_res: 3, t: 0 });
    assert_eq!(c_table(idx(1), 0, 1), Rational::new(1, 3));
    assert_eq!(c_table(idx(3), 5, 3), Rational::from(1));
    assert_eq!(c_table(idx(2), 1, 3), Rational::from(0));
}

#[test]
fn bell_formulas_against_brute_force() {
    assert_eq!(r_closed_form(idx(1), 1).unwrap(), 4);
    assert_eq!(brute(&idx(1).lattice(), 1), 4);
    assert_eq!(r_closed_form(idx(3), 1).unwrap(), 2);
    assert_eq!(brute(&idx(3).lattice(), 1), 2);
    assert_eq!(r_closed_form(idx(1), 9).unwrap(), 4);
    assert_eq!(brute(&idx(1).lattice(), 9), 4);

    assert_eq!(spinor_difference(idx(3), 2).unwrap(), 0);
    assert_eq!(spinor_difference(idx(3), 1).unwrap(), 2);
    let d9 = brute(&idx(3).lattice(), 9) as i128 - brute(&idx(3).companion(), 9) as i128;
    assert_eq!(spinor_difference(idx(3), 9).unwrap(), d9);

    assert_eq!(genus_average(idx(1), 0).unwrap(), Rational::from(1));
    assert_eq!(genus_average(idx(2), 25).unwrap(), Rational::from(5));
}

#[test]
fn closed_form_is_average_plus_half_difference() {
    for i in SpinorPairIndex::ALL {
        for k in 1..=1000 {
            let lhs = Rational::from(r_closed_form(i, k).unwrap() as i128);
            let rhs = genus_average(i, k).unwrap() + Rational::new(spinor_difference(i, k).unwrap(), 2);
            assert_eq!(lhs, rhs, "L{} k = {k}", i.get());
        }
    }
}

#[test]
fn zero_table_entries_force_zero_counts() {
    for i in SpinorPairIndex::ALL {
        let theta = theta_series(&i.lattice(), 10_000).unwrap();
        for k in 1..=10_000i64 {
            let s = two_adic_split(k).unwrap();
            if c_table(i, s.a, s.alpha_res) == Rational::from(0) && (s.a, s.alpha_res) != (0, 1) {
                assert_eq!(theta.at(k), 0, "L{} k = {k}", i.get());
            }
        }
    }
}

#[test]
fn watson_examples() {
    assert_eq!(lambda_sublattice(&diag(&[1, 1, 1]), 3).unwrap(), IntMatrix::diagonal(&[3, 3, 3]));
    let step = watson_transform(&diag(&[1, 1, 1]), 3).unwrap();
    assert_eq!(step.scale_divisor, 9);
    assert!(is_isometric(&step.output, &diag(&[1, 1, 1])).unwrap().is_some());

    let start = diag(&[1, 2, 65536]);
    let chain = watson_chain(&start, 2, 30).unwrap();
    assert!(chain_reaches(&start, &chain, &[diag(&[1, 1, 32]), diag(&[1, 2, 32])]).unwrap().is_some());

    let f = diag(&[1, 4, 16]);
    assert!(watson_transform(&f, 2).unwrap().output.determinant() < f.determinant());

    let chain = watson_chain(&diag(&[1, 1, 1]), 2, 10).unwrap();
    let last = chain.last().unwrap();
    assert!(chain.len() <= 10 && is_isometric(&last.input, &last.output).unwrap().is_some());

    // p ∤ 2·det: one step, output isometric to the input
    let g = gram(&[[2, 1, 0], [1, 2, 1], [0, 1, 3]]);
    let chain = watson_chain(&g, 5, 1).unwrap();
    assert_eq!(chain.len(), 1);
    assert!(is_isometric(&chain[0].output, &g).unwrap().is_some());
}

#[test]
fn watson_candidate_lists() {
    // ⟨1,2^α,2^β⟩ with α ≥ 2 drops both exponents by two
    let cands = |lo: u32, hi: u32, a: u32| -> Vec<QuadForm> { (lo..=hi).map(|e| diag(&[1, 1 << a, 1 << e])).collect() };
    let mut targets = cands(5, 8, 5);
    targets.extend(cands(6, 10, 6));
    for start in [diag(&[1, 1 << 7, 1 << 10]), diag(&[1, 1 << 8, 1 << 12])] {
        let chain = watson_chain(&start, 2, 20).unwrap();
        assert!(chain_reaches(&start, &chain, &targets).unwrap().is_some(), "{start}");
    }
    // with β far above α the middle exponent is consumed first
    let start = diag(&[1, 1 << 5, 1 << 9]);
    let chain = watson_chain(&start, 2, 20).unwrap();
    assert!(chain_reaches(&start, &chain, &[diag(&[1, 2, 32])]).unwrap().is_some());
}

#[test]
fn congruence_examples() {
    let b3 = IntMatrix::from_rows(&[[1, 0, 0], [0, 1, -1], [0, 1, 1]]).unwrap();
    let c1 = CongruenceCondition::coordinatewise(vec![1, 2, 2], vec![4, 8, 8]).unwrap();
    let c3 = CongruenceCondition::new(b3.clone(), vec![3, 0, 2], vec![12, 6, 6]).unwrap();
    let w = vec![3, 1, 5];
    let id = CongruenceCondition::coordinatewise(w.clone(), vec![4, 4, 8]).unwrap();
    assert_eq!(find_residue(&id).unwrap(), Some(w));
    let y3 = find_residue(&c3).unwrap().unwrap();
    let by = b3.mul_vec(&y3).unwrap();
    assert_eq!((by[0] - 3) % 12, 0);
    assert_eq!(by[1] % 6, 0);
    assert_eq!((by[2] - 2) % 6, 0);

    assert_eq!(kernel_lattice(&c1).unwrap(), IntMatrix::diagonal(&[4, 8, 8]));
    let k3 = kernel_lattice(&c3).unwrap();
    assert_eq!(k3, span_basis(&IntMatrix::from_columns(&[[12, 0, 0], [0, 3, -3], [0, 3, 3]]).unwrap()).unwrap());

    assert_eq!(coset_index(&[1, 2, 2], &IntMatrix::diagonal(&[4, 8, 8])).unwrap(), 4);
    assert_eq!(coset_index(&y3, &k3).unwrap(), 12);
    assert_eq!(coset_index(&[0, 0, 0], &k3).unwrap(), 1);
    let ext = extended_lattice(&y3, &k3).unwrap();
    assert_eq!(ext, span_basis(&IntMatrix::from_columns(&[[3, 0, 0], [0, 3, -3], [0, 1, 1]]).unwrap()).unwrap());
    assert_eq!(extended_lattice(&[0, 0, 0], &k3).unwrap(), k3);

    let m1 = diag(&[1, 1, 1]);
    assert_eq!(congruence_rep_count(&m1, 9, &c1).unwrap(), 1);
    assert_eq!(congruence_rep_count(&m1, 25, &c1).unwrap(), 0);
    for a in [9, 7] {
        let p = to_shifted(&m1, a, &c1).unwrap();
        assert_eq!(shifted_rep_count(&p.target, p.value).unwrap(), congruence_rep_count(&m1, a, &c1).unwrap());
    }
    assert_eq!(congruence_rep_count(&m1, 7, &c1).unwrap(), 0);

    let t = ShiftedTarget::new(diag(&[2, 3]), vec![1, 1]).unwrap();
    let back = from_shifted(&t, 5).unwrap();
    assert_eq!(congruence_rep_count(&back.form, back.value, &back.cond).unwrap(), shifted_rep_count(&t, 5).unwrap());

    for a in 0..=100 {
        assert!(coset_sum_check(&m1, a, &c1).unwrap().holds(), "a = {a}");
    }
    let m3 = diag(&[1, 4, 12]);
    let r = coset_sum_check(&m3, 25, &c3).unwrap();
    assert!(r.holds() && r.d == 12);

    // d = 2 and the gcd filter
    let m4 = instance(InstanceId::Four);
    for a in [1, 5, 9, 17, 25] {
        let r = negation_symmetry_check(&m4.form, a, &m4.cond).unwrap();
        assert!(r.holds(), "{r:?}");
    }
    for a in [1, 25, 49, 73] {
        let r = negation_symmetry_check(&m3, a, &c3).unwrap();
        // det B = 2 shares a factor with gcd(s) = 6, so no gcd filter applies
        assert!(r.gcd_vanishing.is_none() && r.holds(), "{r:?}");
    }
}

#[test]
fn converse_round_trip_on_rewritten_instance() {
    // the ⟨1,16,8⟩ instance run forward, then back through the converse
    let inst = instance(InstanceId::TwoPrime);
    for a in [1, 9, 17, 25, 33, 41, 81] {
        let p = to_shifted(&inst.form, a, &inst.cond).unwrap();
        let forward = shifted_rep_count(&p.target, p.value).unwrap();
        let back = from_shifted(&p.target, p.value).unwrap();
        assert_eq!(congruence_rep_count(&back.form, back.value, &back.cond).unwrap(), forward);
        assert_eq!(forward, congruence_rep_count(&inst.form, a, &inst.cond).unwrap());
    }
}
