use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Tensor;
use crate::error::Result;
use crate::exponent::{Exponent, ExponentVector};
use crate::scalar::{Neumaier, Scalar};

/// Layers at least this long are reduced in parallel, one block per task.
const PAR_THRESHOLD: usize = 1 << 15;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedNormResult {
    pub value: f64,
    pub exponents_used: ExponentVector,
}

/// ℓ_r (quasi-)norm of nonnegative values, scaled by the block maximum so
/// that large `r` neither overflows nor flushes to zero.
pub fn lp_norm(values: &[f64], r: Exponent) -> f64 {
    let max = values.iter().copied().fold(0.0, f64::max);
    if r.is_infinite() || max == 0.0 {
        return max;
    }
    let r = r.value();
    if r == 1.0 {
        let mut acc = Neumaier::default();
        values.iter().for_each(|&v| acc.add(v));
        return acc.total();
    }
    let mut acc = Neumaier::default();
    if r == 2.0 {
        values.iter().for_each(|&v| {
            let t = v / max;
            acc.add(t * t)
        });
        return max * acc.total().sqrt();
    }
    values.iter().for_each(|&v| acc.add((v / max).powf(r)));
    max * acc.total().powf(1.0 / r)
}

/// Iterated ℓ_{r_j} norms, innermost (last axis) first.
pub fn mixed_norm<T: Scalar>(a: &Tensor<T>, r: &ExponentVector) -> Result<MixedNormResult> {
    r.expect_arity(a.rank())?;
    let mut layer = a.moduli();
    for (&n, &rj) in a.shape().iter().zip(r.iter()).rev() {
        layer = if layer.len() >= PAR_THRESHOLD {
            layer.par_chunks(n).map(|b| lp_norm(b, rj)).collect()
        } else {
            layer.chunks(n).map(|b| lp_norm(b, rj)).collect()
        };
    }
    debug_assert_eq!(layer.len(), 1);
    Ok(MixedNormResult { value: layer[0], exponents_used: r.clone() })
}

pub fn mixed_norm_value<T: Scalar>(a: &Tensor<T>, r: &ExponentVector) -> Result<f64> {
    mixed_norm(a, r).map(|res| res.value)
}
