//! Deterministic Grover search with fixed-axis rotations.
//!
//! A Grover step `G(α, β) = S_r(β)·S_o(α)` acts on the two-dimensional subspace
//! spanned by the unmarked and marked superpositions as an SU(2) rotation.
//! Pairing two steps with one phase held fixed gives a block `F` whose rotation
//! axis can be steered so that `F^k` sends `|ψ₀⟩` exactly onto the marked
//! states, for any `k` above a computable lower bound.
//!
//! ```
//! use fxr::{solve_free_pair, Mode, SearchSpec};
//! use std::f64::consts::PI;
//!
//! let spec = SearchSpec::new(0.25).unwrap();
//! let sol = solve_free_pair(Mode::Alpha, PI, &spec, 4).unwrap();
//! assert!(sol.certified_success_prob > 1.0 - 1e-8);
//! ```

pub mod classic;
pub mod cli;
pub mod curve;
pub mod error;
pub mod hamming;
pub mod phase_ops;
pub mod rotation;
pub mod simulator;
pub mod solver;

pub use curve::{trace_curve, CurveF, Mode};
pub use error::{FxrError, Result};
pub use phase_ops::SearchSpec;
pub use rotation::{compose, decompose_unitary, Rotation, Unitary2};
pub use simulator::{run_2d, run_full, Schedule, Step};
pub use solver::{k_lower, min_feasible_k, solve_free_pair, ParamSolution};
