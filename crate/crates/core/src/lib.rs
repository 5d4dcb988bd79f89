//! Numerical laboratory for mixed-exponent Hardy–Littlewood inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`exponent`]: closed-form exponent calculators, admissibility checks and
//!   the constructive exponent lift.
//! - [`tensor`]: dense coefficient tensors, nested (mixed) ℓ_r norms and a
//!   numerical check of the mixed Hölder inequality.
//! - [`forms`]: multilinear forms, including the random-sign (KSZ), diagonal,
//!   row and product-extension families.
//! - [`norm`]: operator norms on products of ℓ_p balls (exact sign
//!   enumeration, alternating ascent, closed forms).
//! - [`growth`]: growth-rate experiments and log-log fits against predicted
//!   exponents.
//!
//! Exponents live in (0, +∞]; every formula is evaluated through reciprocals
//! so that +∞ never enters arithmetic.

pub mod error;
pub mod exponent;
pub mod forms;
pub mod growth;
pub mod norm;
pub mod rng;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use exponent::{Exponent, ExponentReport, ExponentVector, IndexSet, RegimeFlags};
pub use forms::{FormKind, KszCertificate, MultilinearForm};
pub use growth::{ExperimentConfig, FitResult, GrowthRow, GrowthSeries, Verdict};
pub use norm::{NormEstimate, NormKind};
pub use scalar::Scalar;
pub use tensor::{MixedNormResult, Tensor};
