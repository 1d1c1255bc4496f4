//! Exact computation engine for Tsirelson-type norms.
//!
//! Given a compact family `M` of finite subsets of the positive integers and a
//! constant `0 < θ < 1`, the Tsirelson-type space `T_M^θ` is the completion of
//! the finitely supported sequences under the unique norm satisfying
//!
//! ```text
//! ‖x‖ = max( ‖x‖_∞ , θ · sup Σᵢ ‖Eᵢ x‖ )
//! ```
//!
//! where the supremum runs over all `M`-admissible tuples of successive sets
//! `E₁ < E₂ < … < E_d`. This crate computes that norm exactly on finitely
//! supported vectors, extracts norming-functional certificates from the dual
//! ball, decides admissibility with witnesses, computes ordinal tree ranks of
//! families, and machine-checks the quantitative inequalities that make
//! `T_M^θ` isomorphic to `ℓ^p` when `M = {A : |A| ≤ n}` and `1/n < θ < 1`.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line front end live in the companion `tsirelson-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod caps;
pub mod equivalence;
pub mod error;
pub mod family;
pub mod functional;
pub mod literal;
pub mod norm;
pub mod ordinal;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod theta;
pub mod vector;

pub use analysis::{analyze, split_initial_final, validate_analysis, Analysis};
pub use caps::Caps;
pub use error::Error;
pub use family::{FamilyExpr, FiniteSet, SuccessiveBlocks};
pub use functional::{validate_functional, Functional, Sign};
pub use norm::{
    dual_ball_enumerate, norm_exact, norm_oracle, norm_with_theta, NormOutcome, NormResult,
    NormStats,
};
pub use ordinal::OrdinalRank;
pub use scalar::Scalar;
pub use theta::ThetaSpec;
pub use vector::SparseVector;

/// Exact rational scalar used by the engine when `θ` is rational.
pub type Rational = num_rational::BigRational;
