use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dual_maximizer, vector_norm, NormEstimate, NormKind};
use crate::error::{Error, Result};
use crate::forms::MultilinearForm;
use crate::rng::stream;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AscentOptions {
    /// Random starts, in addition to the two deterministic ones.
    pub restarts: usize,
    pub seed: u64,
    /// Stop once a sweep improves the objective by less than this fraction.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions { restarts: 16, seed: 0, tol: 1e-10, max_iters: 200 }
    }
}

/// One ascent run. `trace[0]` is the starting objective and `trace[k]` the
/// objective after sweep `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AscentRun<T = f64> {
    pub value: f64,
    pub witness: Vec<Vec<T>>,
    pub sweeps: usize,
    pub converged: bool,
    pub trace: Vec<f64>,
}

/// Cyclically replace each argument by the dual maximizer of the functional
/// it induces. A slot whose functional vanishes keeps its argument, as does
/// one whose update would not improve the objective.
pub fn ascent_from<T: Scalar>(form: &MultilinearForm<T>, start: Vec<Vec<T>>, tol: f64, max_iters: usize) -> Result<AscentRun<T>> {
    let mut x = start;
    let mut current = form.evaluate(&x)?.modulus();
    let mut trace = vec![current];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_iters {
        let prev = current;
        for j in 0..form.arity() {
            let c = form.functional(&x, j)?;
            let (y, v) = dual_maximizer(&c, form.p()[j])?;
            if v > current {
                x[j] = y;
                current = v;
            }
        }
        sweeps += 1;
        trace.push(current);
        if current - prev <= tol * current {
            converged = true;
            break;
        }
    }
    let value = form.evaluate(&x)?.modulus();
    Ok(AscentRun { value, witness: x, sweeps, converged, trace })
}

/// Start `index`: 0 is the normalized all-ones tuple, 1 is `e_1` in every
/// slot, and `k ≥ 2` draws Gaussian vectors from the stream `(seed, k)`,
/// normalized in each ℓ_{p_j}.
pub fn ascent_starts<T: Scalar>(form: &MultilinearForm<T>, seed: u64, index: usize) -> Vec<Vec<T>> {
    let ones = |n: usize, p: crate::exponent::Exponent| vec![T::from_real((n as f64).powf(-p.recip())); n];
    let dims = form.dims();
    let p = form.p();
    match index {
        0 => dims.iter().zip(p.iter()).map(|(&n, &pj)| ones(n, pj)).collect(),
        1 => dims
            .iter()
            .map(|&n| {
                let mut e = vec![T::zero(); n];
                e[0] = T::one();
                e
            })
            .collect(),
        k => {
            let mut rng = stream(seed, &[k as u64]);
            dims.iter()
                .zip(p.iter())
                .map(|(&n, &pj)| {
                    let g: Vec<T> = (0..n).map(|_| T::gaussian(&mut rng)).collect();
                    let norm = vector_norm(&g, pj);
                    if norm > 0.0 {
                        g.into_iter().map(|v| v.scale(1.0 / norm)).collect()
                    } else {
                        ones(n, pj)
                    }
                })
                .collect()
        }
    }
}

/// Best of `restarts + 2` ascent runs. Runs are independent and reduced by
/// largest value, ties going to the lowest start index.
pub fn alternating_ascent<T: Scalar>(form: &MultilinearForm<T>, opts: &AscentOptions) -> Result<NormEstimate<T>> {
    if !(opts.tol > 0.0) {
        return Err(Error::Hypothesis(format!("ascent tolerance must be positive, got {}", opts.tol)));
    }
    let total = opts.restarts + 2;
    let runs = (0..total)
        .into_par_iter()
        .map(|k| ascent_from(form, ascent_starts(form, opts.seed, k), opts.tol, opts.max_iters))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (k, run) in runs.iter().enumerate() {
        if run.value > runs[best].value {
            best = k;
        }
    }
    let run = runs.into_iter().nth(best).expect("at least two runs");
    Ok(NormEstimate {
        value: run.value,
        kind: NormKind::LowerBound,
        witness: run.witness,
        restarts_used: total,
        converged: run.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentVector;
    use crate::forms::{diagonal_form, ksz_random_form, row_form};

    fn ev(s: &str) -> ExponentVector {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_euclidean() {
        let d = diagonal_form(2, 4, &ev("2,2")).unwrap();
        let est = alternating_ascent(&d, &AscentOptions::default()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
        assert_eq!(est.kind, NormKind::LowerBound);
    }

    #[test]
    fn diagonal_l4() {
        let d = diagonal_form(2, 4, &ev("4,4")).unwrap();
        let est = alternating_ascent(&d, &AscentOptions::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn row_form_value() {
        let r = row_form(2, 4, &ev("inf,2")).unwrap();
        let est = alternating_ascent(&r, &AscentOptions::default()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_is_monotone_and_seeded() {
        let (a, _) = ksz_random_form(3, 4, &ev("3,inf,1.5"), 21).unwrap();
        for k in 0..6 {
            let run = ascent_from(&a, ascent_starts(&a, 5, k), 1e-12, 50).unwrap();
            assert!(run.trace.windows(2).all(|w| w[1] >= w[0]));
        }
        let opts = AscentOptions { restarts: 4, seed: 5, ..Default::default() };
        assert_eq!(alternating_ascent(&a, &opts).unwrap(), alternating_ascent(&a, &opts).unwrap());
    }

    #[test]
    fn witness_lies_in_unit_balls() {
        let (a, _) = ksz_random_form(2, 5, &ev("4/3,6"), 2).unwrap();
        let est = alternating_ascent(&a, &AscentOptions::default()).unwrap();
        for (x, &p) in est.witness.iter().zip(a.p().iter()) {
            assert!(vector_norm(x, p) <= 1.0 + 1e-12);
        }
        let v = a.evaluate(&est.witness).unwrap().abs();
        assert!((v - est.value).abs() <= 1e-9 * est.value);
    }

    #[test]
    fn zero_tolerance_rejected() {
        let d = diagonal_form(2, 2, &ev("2,2")).unwrap();
        assert!(alternating_ascent(&d, &AscentOptions { tol: 0.0, ..Default::default() }).is_err());
    }
}
