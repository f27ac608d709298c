//! Exact representation counts for positive-definite integral quadratic forms.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`], [`normal_form`], [`form`], [`isometry`]: integer linear
//!   algebra, Hermite/Smith normal forms, forms, automorphisms and isometries.
//! * [`enumerate`] and [`cache`]: exact lattice-point counting and theta series.
//! * [`bell`]: generalized Bell forms `x² + 2^α y² + 2^β z²` whose spinor genus
//!   has one class, with closed formulas in terms of sums of three squares.
//! * [`watson`]: the `Λ_p` sublattice and its primitive rescaling `λ_p`.
//! * [`congruence`]: counting under `Bx ≡ w (mod s)` and its bijection with
//!   shifted quadratic polynomials.
//! * [`criteria`]: worked instances with vanishing criteria and closed forms.
//! * [`suites`]: named verification suites shared by the CLI and the tests.

// Index loops read more naturally than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

pub mod bell;
pub mod cache;
pub mod congruence;
pub mod criteria;
pub mod enumerate;
pub mod error;
pub mod form;
pub mod isometry;
pub mod matrix;
pub mod normal_form;
pub mod suites;
pub mod watson;

pub use enumerate::{rep_count, rep_list, shifted_rep_count, short_vectors, theta_series, Budget, ShiftedTarget, ThetaSeries};
pub use error::{Error, Result};
pub use form::{QuadForm, UnimodularMap};
pub use isometry::{aut_order, is_isometric};
pub use matrix::{BigMatrix, IntMatrix};
pub use normal_form::{hnf, snf};
