//! Sparse recovery under a joint sparsity and ℓ1 budget.
//!
//! Given `f = Φα* + n`, the solvers look for `α` with `‖α‖₀ ≤ k` and
//! `‖α‖₁ ≤ τ` that explains `f`:
//!
//! * [`game`]: a zero-sum game between a sparse player and an adversary on the
//!   dual norm ball, solved by mirror descent. Outputs are `T`-sparse after
//!   `T` rounds and come with a regret certificate.
//! * [`pursuit`]: Subspace Pursuit, CLASH (Subspace Pursuit with an ℓ1
//!   budget), IHT and a projected-gradient Lasso.
//! * [`synth`] draws seeded Gaussian test problems and probes restricted
//!   isometry constants; [`bench`] runs Monte Carlo experiments over them.
//!
//! ```
//! use normsparse::numerics::Matrix;
//! use normsparse::pursuit::{clash_solve, PursuitConfig};
//!
//! let phi = Matrix::identity(4);
//! let f = [0.0, 3.0, 0.0, -1.0];
//! let out = clash_solve(&phi, &f, &PursuitConfig::new(2, 4.0)).unwrap();
//! assert!((out.result.alpha[1] - 3.0).abs() < 1e-6);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod bregman;
pub mod error;
pub mod game;
pub mod numerics;
pub mod projections;
pub mod pursuit;
pub mod result;
pub mod synth;

pub use error::{Error, Result};
pub use result::{SolverResult, Termination};
