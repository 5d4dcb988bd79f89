//! Operator norms `‖T‖ = sup |T(x^(1), …, x^(m))|` over products of ℓ_p
//! unit balls.
//!
//! Three estimators: exact sign enumeration (all `p_j = ∞`, real
//! coefficients), alternating ascent (a lower bound for any `p ≥ 1`), and
//! closed forms for the diagonal and row families.

mod analytic;
mod ascent;
mod brute;
mod dual;

use serde::{Deserialize, Serialize};

use crate::exponent::Exponent;
use crate::scalar::Scalar;
use crate::tensor::lp_norm;

pub use analytic::{analytic_norm, paper_bound_norm};
pub use ascent::{alternating_ascent, ascent_from, ascent_starts, AscentOptions, AscentRun};
pub use brute::{brute_force_log2_count, brute_force_norm, brute_force_norm_with_budget, DEFAULT_BRUTE_BUDGET};
pub use dual::dual_maximizer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// The true norm.
    Exact,
    /// Attained by the witness, so a lower bound on the norm.
    LowerBound,
    /// Closed-form upper bound.
    Analytic,
    /// Closed-form growth `n^s` with unit constant; not a certified bound.
    PaperBound,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Exact => "exact",
            NormKind::LowerBound => "lower_bound",
            NormKind::Analytic => "analytic",
            NormKind::PaperBound => "paper_bound",
        }
    }
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `witness` is empty for [`NormKind::PaperBound`]; otherwise
/// `|T(witness)| = value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate<T = f64> {
    pub value: f64,
    pub kind: NormKind,
    pub witness: Vec<Vec<T>>,
    pub restarts_used: usize,
    pub converged: bool,
}

/// ℓ_p norm of a scalar vector.
pub fn vector_norm<T: Scalar>(x: &[T], p: Exponent) -> f64 {
    let m: Vec<f64> = x.iter().map(|v| v.modulus()).collect();
    lp_norm(&m, p)
}
