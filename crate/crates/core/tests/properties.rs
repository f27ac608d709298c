//! Invariants over random forms, matrices and congruence conditions.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use tqf::congruence::{congruence_rep_count, from_shifted, to_shifted, CongruenceCondition};
use tqf::enumerate::{box_scan_theta, shifted_rep_count};
use tqf::normal_form::span_basis;
use tqf::watson::{in_lambda, lambda_sublattice};
use tqf::*;

/// Diagonally dominant Gram matrices: always positive definite.
fn form(max_dim: usize) -> impl Strategy<Value = QuadForm> {
    (1..=max_dim).prop_flat_map(|n| {
        (proptest::collection::vec(-2i64..=2, n * (n - 1) / 2), proptest::collection::vec(1i64..=5, n)).prop_map(
            move |(off, extra)| {
                let mut g = vec![vec![0i64; n]; n];
                let mut it = off.into_iter();
                for i in 0..n {
                    for j in 0..i {
                        let v = it.next().unwrap();
                        g[i][j] = v;
                        g[j][i] = v;
                    }
                }
                for i in 0..n {
                    g[i][i] = g[i].iter().map(|v| v.abs()).sum::<i64>() + extra[i];
                }
                QuadForm::from_rows(&g).unwrap()
            },
        )
    })
}

fn matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-50i64..=50, r * c).prop_map(move |v| IntMatrix::from_row_major(r, c, v).unwrap())
    })
}

/// Unimodular matrix built from elementary column operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for r in 0..n {
            u.set(r, j, u.get(r, j) + c * u.get(r, i));
        }
    }
    u
}

fn is_diagonal_chain(d: &IntMatrix) -> bool {
    let m = d.rows().min(d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && d.get(i, j) != 0 {
                return false;
            }
        }
    }
    (0..m).all(|i| d.get(i, i) >= 0)
        && (1..m).all(|i| {
            let (a, b) = (d.get(i - 1, i - 1), d.get(i, i));
            if a == 0 {
                b == 0
            } else {
                b % a == 0
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluation_is_even(f in form(4), x in proptest::collection::vec(-20i64..=20, 4)) {
        let x = &x[..f.dim()];
        let neg: Vec<i64> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(f.evaluate(x).unwrap(), f.evaluate(&neg).unwrap());
    }

    #[test]
    fn theta_matches_box_scan(f in form(3)) {
        let upper = 60;
        prop_assert_eq!(theta_series(&f, upper).unwrap().counts().to_vec(), box_scan_theta(&f, upper).unwrap());
    }

    #[test]
    fn counts_come_in_pairs(f in form(4), k in 1i64..80) {
        prop_assert_eq!(rep_count(&f, k).unwrap() % 2, 0);
    }

    #[test]
    fn scaling(f in form(3), c in 2i64..=4, k in 0i64..40) {
        let g = f.scaled(c).unwrap();
        prop_assert_eq!(rep_count(&g, c * k).unwrap(), rep_count(&f, k).unwrap());
        prop_assert_eq!(rep_count(&g, c * k + 1).unwrap(), 0);
    }

    #[test]
    fn unimodular_change_of_basis(f in form(3), ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6)) {
        let u = unimodular(f.dim(), &ops);
        let g = QuadForm::new(f.gram().congruent(&u).unwrap()).unwrap();
        prop_assert_eq!(theta_series(&g, 40).unwrap().counts().to_vec(), theta_series(&f, 40).unwrap().counts().to_vec());
        prop_assert!(is_isometric(&f, &g).unwrap().is_some());
        let (r, t) = f.reduce().unwrap();
        prop_assert_eq!(f.gram().congruent(t.matrix()).unwrap(), r.gram().clone());
    }

    #[test]
    fn automorphism_group_contains_minus_one(f in form(3)) {
        let o = aut_order(&f).unwrap();
        prop_assert!(o >= 2 && o.is_multiple_of(2));
    }

    #[test]
    fn zero_shift_is_plain_count(f in form(3), k in -3i64..50) {
        let t = ShiftedTarget::unshifted(f.clone());
        prop_assert_eq!(shifted_rep_count(&t, k).unwrap(), rep_count(&f, k).unwrap());
    }

    #[test]
    fn shifted_count_matches_scan(f in form(2), z in proptest::collection::vec(-6i64..=6, 2), v in -10i64..60) {
        let z = z[..f.dim()].to_vec();
        let t = ShiftedTarget::new(f.clone(), z).unwrap();
        let mut n = 0u64;
        // Q(x) + 2zᵀMx ≤ 60 keeps |x_i| ≤ 40 for these forms
        let coords: Vec<i64> = (-40..=40).collect();
        if f.dim() == 1 {
            for &a in &coords { if t.evaluate(&[a]).unwrap() == v { n += 1; } }
        } else {
            for &a in &coords { for &b in &coords { if t.evaluate(&[a, b]).unwrap() == v { n += 1; } } }
        }
        prop_assert_eq!(shifted_rep_count(&t, v).unwrap(), n);
    }

    #[test]
    fn smith_reconstructs(a in matrix(6)) {
        let s = snf(&a).unwrap();
        let product = s.left.mul(&BigMatrix::from(&a)).unwrap().mul(&s.right).unwrap();
        prop_assert_eq!(product, BigMatrix::from(&s.d));
        prop_assert!(s.left.is_unimodular() && s.right.is_unimodular());
        prop_assert!(is_diagonal_chain(&s.d));
    }

    #[test]
    fn hermite_reconstructs(a in matrix(6), ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..8)) {
        let h = hnf(&a).unwrap();
        prop_assert_eq!(a.mul(&h.transform).unwrap(), h.h.clone());
        prop_assert_eq!(h.transform.determinant().unwrap().abs(), 1);
        for j in h.rank..h.h.cols() {
            prop_assert!(h.h.col(j).iter().all(|&v| v == 0));
        }
        let u = unimodular(a.cols(), &ops);
        prop_assert_eq!(hnf(&a.mul(&u).unwrap()).unwrap().h, h.h);
    }

    #[test]
    fn congruence_bijection(
        f in form(3),
        w in proptest::collection::vec(-4i64..=4, 3),
        s in proptest::collection::vec(1i64..=4, 3),
        a in 0i64..60,
    ) {
        let n = f.dim();
        let cond = CongruenceCondition::coordinatewise(w[..n].to_vec(), s[..n].to_vec()).unwrap();
        let direct = congruence_rep_count(&f, a, &cond).unwrap();
        let oracle = tqf::enumerate::rep_list(&f, a).unwrap().into_iter().filter(|x| cond.contains(x).unwrap()).count() as u64;
        prop_assert_eq!(direct, oracle);
        let p = to_shifted(&f, a, &cond).unwrap();
        prop_assert_eq!(shifted_rep_count(&p.target, p.value).unwrap(), direct);
        let back = from_shifted(&p.target, p.value).unwrap();
        prop_assert_eq!(congruence_rep_count(&back.form, back.value, &back.cond).unwrap(), direct);
    }

    #[test]
    fn watson_sublattice_is_exactly_the_admissible_set(f in form(3), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let n = f.dim();
        let basis = lambda_sublattice(&f, p).unwrap();
        let pi = p as i64;
        // p·Zⁿ ⊆ Λ_p
        let scaled = IntMatrix::identity(n).scale(pi).unwrap();
        prop_assert_eq!(span_basis(&basis.hstack(&scaled).unwrap()).unwrap(), basis.clone());
        for col in basis.columns() {
            prop_assert!(in_lambda(&f, pi, &col).unwrap());
        }
        // index equals the number of admissible residues mod p
        let mut admissible = 0i128;
        let mut x = vec![0i64; n];
        'outer: loop {
            if in_lambda(&f, pi, &x).unwrap() {
                admissible += 1;
            }
            for i in 0..n {
                x[i] += 1;
                if x[i] < pi {
                    continue 'outer;
                }
                x[i] = 0;
            }
            break;
        }
        let index = basis.determinant().unwrap().abs();
        prop_assert_eq!(index * admissible, (pi as i128).pow(n as u32));
    }
}
