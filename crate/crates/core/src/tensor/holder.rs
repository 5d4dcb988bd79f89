use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{mixed_norm_value, Tensor};
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::rng::stream;
use crate::scalar::Scalar;

/// Tolerance for the reciprocal splitting identity.
pub const SPLIT_TOL: f64 = 1e-9;
/// Relative slack allowed before an instance counts as a violation.
pub const HOLDER_REL_TOL: f64 = 1e-9;

/// Entrywise product of equally shaped tensors.
pub fn coordinate_product<T: Scalar>(tensors: &[Tensor<T>]) -> Result<Tensor<T>> {
    let (first, rest) = tensors
        .split_first()
        .ok_or_else(|| Error::InvalidTensor("empty tensor list".into()))?;
    let mut data = first.data().to_vec();
    for t in rest {
        if t.shape() != first.shape() {
            return Err(Error::ShapeMismatch { left: first.shape().to_vec(), right: t.shape().to_vec() });
        }
        data.iter_mut().zip(t.data()).for_each(|(d, &v)| *d = *d * v);
    }
    Tensor::new(first.shape().to_vec(), data)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
}

/// Evaluate both sides of the mixed Hölder inequality.
///
/// `splitting[k]` holds the exponents of factor `k`, one per axis, and must
/// satisfy `1/r_j = Σ_k 1/splitting[k][j]` for every axis `j`.
pub fn holder_verify<T: Scalar>(
    tensors: &[Tensor<T>],
    r: &ExponentVector,
    splitting: &[ExponentVector],
) -> Result<HolderCheck> {
    if splitting.len() != tensors.len() {
        return Err(Error::ArityMismatch { expected: tensors.len(), found: splitting.len() });
    }
    let product = coordinate_product(tensors)?;
    let m = product.rank();
    r.expect_arity(m)?;
    for q in splitting {
        q.expect_arity(m)?;
    }
    for j in 0..m {
        let found: f64 = splitting.iter().map(|q| q[j].recip()).sum();
        let expected = r[j].recip();
        if (found - expected).abs() > SPLIT_TOL {
            return Err(Error::InvalidSplitting { axis: j, expected, found });
        }
    }
    let lhs = mixed_norm_value(&product, r)?;
    let mut rhs = 1.0;
    for (t, q) in tensors.iter().zip(splitting) {
        rhs *= mixed_norm_value(t, q)?;
    }
    Ok(HolderCheck { lhs, rhs, holds: lhs <= rhs * (1.0 + HOLDER_REL_TOL), slack: rhs - lhs })
}

/// `factors` Gaussian tensors of one random shape, each axis length drawn
/// from `1..=n_max`.
pub fn random_tensors<R: Rng + ?Sized>(rng: &mut R, m: usize, n_max: usize, factors: usize) -> Result<Vec<Tensor>> {
    if m == 0 || n_max == 0 {
        return Err(Error::InvalidTensor("m and n must be positive".into()));
    }
    let shape: Vec<usize> = (0..m).map(|_| rng.random_range(1..=n_max)).collect();
    let len: usize = shape.iter().product();
    (0..factors)
        .map(|_| Tensor::new(shape.clone(), (0..len).map(|_| f64::gaussian(rng)).collect()))
        .collect()
}

/// A random Hölder configuration.
#[derive(Clone, Debug)]
pub struct HolderInstance {
    pub tensors: Vec<Tensor>,
    pub r: ExponentVector,
    pub splitting: Vec<ExponentVector>,
}

/// Draw `factors` Gaussian tensors of a common random shape (each axis length
/// in `1..=n_max`) and a random valid splitting with `r_j ∈ [1/2, ∞]`.
pub fn random_holder_instance<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    n_max: usize,
    factors: usize,
) -> Result<HolderInstance> {
    if m == 0 || n_max == 0 || factors == 0 {
        return Err(Error::InvalidTensor("m, n and N must be positive".into()));
    }
    let tensors = random_tensors(rng, m, n_max, factors)?;

    let mut r_recip = Vec::with_capacity(m);
    let mut parts = vec![Vec::with_capacity(m); factors];
    for _ in 0..m {
        let total = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..=2.0) };
        let mut w: Vec<f64> = (0..factors)
            .map(|_| if rng.random_bool(0.2) { 0.0 } else { rng.random::<f64>() })
            .collect();
        let sum: f64 = w.iter().sum();
        if sum == 0.0 {
            w[0] = 1.0;
        }
        let sum: f64 = w.iter().sum();
        for (k, wk) in w.iter().enumerate() {
            parts[k].push(total * wk / sum);
        }
        r_recip.push(total);
    }
    let r = ExponentVector::from_recips(&r_recip)?;
    let splitting = parts.iter().map(|p| ExponentVector::from_recips(p)).collect::<Result<Vec<_>>>()?;
    Ok(HolderInstance { tensors, r, splitting })
}

impl HolderInstance {
    pub fn check(&self) -> Result<HolderCheck> {
        holder_verify(&self.tensors, &self.r, &self.splitting)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderFuzzSummary {
    pub trials: usize,
    pub passed: usize,
    /// Smallest `(rhs - lhs) / rhs` seen; `None` for an empty run.
    pub worst_relative_slack: Option<f64>,
}

impl HolderFuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Run `trials` random instances; trial `t` draws from the stream `(seed, t)`.
pub fn holder_fuzz(m: usize, n_max: usize, factors: usize, trials: usize, seed: u64) -> Result<HolderFuzzSummary> {
    let checks = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, &[t as u64]);
            random_holder_instance(&mut rng, m, n_max, factors)?.check()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(trials, &checks))
}

/// As [`holder_fuzz`], with random tensors but a fixed splitting. The
/// splitting is validated even when `trials` is 0.
pub fn holder_fuzz_with_splitting(
    r: &ExponentVector,
    splitting: &[ExponentVector],
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<HolderFuzzSummary> {
    let m = r.len();
    let ones = Tensor::filled(vec![1; m], 1.0)?;
    holder_verify(&vec![ones; splitting.len()], r, splitting)?;
    let checks = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, &[t as u64]);
            holder_verify(&random_tensors(&mut rng, m, n_max, splitting.len())?, r, splitting)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(trials, &checks))
}

fn summarize(trials: usize, checks: &[HolderCheck]) -> HolderFuzzSummary {
    let passed = checks.iter().filter(|c| c.holds).count();
    let worst = checks
        .iter()
        .map(|c| if c.rhs > 0.0 { c.slack / c.rhs } else { c.slack })
        .reduce(f64::min);
    HolderFuzzSummary { trials, passed, worst_relative_slack: worst }
}
