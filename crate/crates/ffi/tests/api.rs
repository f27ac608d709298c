//! The exported functions called the way a foreign caller would.

use std::ffi::CStr;
use std::ptr;

use tqf_ffi::*;

fn diagonal(d: &[i64]) -> *mut TqfForm {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tqf_form_diagonal(d.as_ptr(), d.len(), &mut f) }, TqfStatus::Ok);
    f
}

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { tqf_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn counting_through_handles() {
    let f = diagonal(&[1, 1, 1]);
    unsafe {
        assert_eq!(tqf_form_dim(f), 3);
        let mut r = 0u64;
        assert_eq!(tqf_rep_count(f, 9, &mut r), TqfStatus::Ok);
        assert_eq!(r, 30);
        let mut theta = [0u64; 3];
        assert_eq!(tqf_theta_series(f, 2, theta.as_mut_ptr(), theta.len()), TqfStatus::Ok);
        assert_eq!(theta, [1, 6, 12]);
        assert_eq!(tqf_theta_series(f, 5, theta.as_mut_ptr(), theta.len()), TqfStatus::BufferTooSmall);
        let mut o = 0u64;
        assert_eq!(tqf_aut_order(f, &mut o), TqfStatus::Ok);
        assert_eq!(o, 48);
        let x = [1i64, 2, 2];
        let mut q = 0i64;
        assert_eq!(tqf_form_evaluate(f, x.as_ptr(), 3, &mut q), TqfStatus::Ok);
        assert_eq!(q, 9);
        tqf_form_free(f);
    }
}

#[test]
fn gram_round_trip_and_isometry() {
    let gram = [4i64, 0, 2, 0, 8, 0, 2, 0, 17];
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(tqf_form_new(gram.as_ptr(), 3, &mut f), TqfStatus::Ok);
        let mut back = [0i64; 9];
        assert_eq!(tqf_form_gram(f, back.as_mut_ptr(), 9), TqfStatus::Ok);
        assert_eq!(back, gram);
        let swapped = [17i64, 0, 2, 0, 8, 0, 2, 0, 4];
        let mut g = ptr::null_mut();
        assert_eq!(tqf_form_new(swapped.as_ptr(), 3, &mut g), TqfStatus::Ok);
        let mut iso = false;
        let mut t = [0i64; 9];
        assert_eq!(tqf_is_isometric(f, g, &mut iso, t.as_mut_ptr()), TqfStatus::Ok);
        assert!(iso);
        // Tᵀ M_f T = M_g
        let m = |a: &[i64], i: usize, j: usize| a[3 * i + j];
        for i in 0..3 {
            for j in 0..3 {
                let v: i64 = (0..3).flat_map(|k| (0..3).map(move |l| (k, l))).map(|(k, l)| m(&t, k, i) * m(&gram, k, l) * m(&t, l, j)).sum();
                assert_eq!(v, m(&swapped, i, j));
            }
        }
        let h = diagonal(&[1, 1, 16]);
        assert_eq!(tqf_is_isometric(f, h, &mut iso, ptr::null_mut()), TqfStatus::Ok);
        assert!(!iso);
        for p in [f, g, h] {
            tqf_form_free(p);
        }
    }
}

#[test]
fn shifted_and_congruence_counts() {
    unsafe {
        let one = diagonal(&[1]);
        let mut r = 0u64;
        assert_eq!(tqf_shifted_rep_count(one, [1i64].as_ptr(), 1, 3, &mut r), TqfStatus::Ok);
        assert_eq!(r, 2);
        tqf_form_free(one);

        let f = diagonal(&[1, 4, 12]);
        let b = [1i64, 0, 0, 0, 1, -1, 0, 1, 1];
        let (w, s) = ([3i64, 0, 2], [12i64, 6, 6]);
        assert_eq!(tqf_congruence_rep_count(f, 25, b.as_ptr(), w.as_ptr(), s.as_ptr(), 3, &mut r), TqfStatus::Ok);
        assert_eq!(r, 1);
        let g = diagonal(&[1, 1, 1]);
        let (w, s) = ([1i64, 2, 2], [4i64, 8, 8]);
        assert_eq!(tqf_congruence_rep_count(g, 9, ptr::null(), w.as_ptr(), s.as_ptr(), 3, &mut r), TqfStatus::Ok);
        assert_eq!(r, 1);
        tqf_form_free(f);
        tqf_form_free(g);
    }
}

#[test]
fn bell_and_watson() {
    unsafe {
        let mut r = 0u64;
        assert_eq!(tqf_bell_closed_form(1, 9, &mut r), TqfStatus::Ok);
        assert_eq!(r, 4);
        assert_eq!(tqf_bell_closed_form(7, 9, &mut r), TqfStatus::InvalidArgument);

        let f = diagonal(&[1, 4, 16]);
        let mut out = ptr::null_mut();
        let mut divisor = 0i64;
        assert_eq!(tqf_watson_transform(f, 2, &mut out, &mut divisor), TqfStatus::Ok);
        let mut gram = [0i64; 9];
        assert_eq!(tqf_form_gram(out, gram.as_mut_ptr(), 9), TqfStatus::Ok);
        assert_eq!(gram, [1, 0, 0, 0, 1, 0, 0, 0, 4]);
        assert_eq!(divisor, 4);
        assert_eq!(tqf_watson_transform(f, 9, &mut out, ptr::null_mut()), TqfStatus::NotPrime);
        tqf_form_free(out);
        tqf_form_free(f);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = [1i64, 2, 2, 1];
        let mut f = ptr::null_mut();
        assert_eq!(tqf_form_new(bad.as_ptr(), 2, &mut f), TqfStatus::NotPositiveDefinite);
        assert!(f.is_null());
        assert!(last_error().contains("positive definite"));
        assert_eq!(tqf_form_new(ptr::null(), 2, &mut f), TqfStatus::NullPointer);
        assert_eq!(tqf_rep_count(ptr::null(), 1, &mut 0), TqfStatus::NullPointer);
        let g = diagonal(&[1, 1]);
        assert_eq!(tqf_rep_count(g, 1, ptr::null_mut()), TqfStatus::NullPointer);
        let x = [1i64, 2, 3];
        assert_eq!(tqf_form_evaluate(g, x.as_ptr(), 3, &mut 0), TqfStatus::InvalidArgument);
        tqf_form_free(g);
        tqf_form_free(ptr::null_mut());
        assert_eq!(tqf_form_dim(ptr::null()), 0);
        let v = CStr::from_ptr(tqf_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
