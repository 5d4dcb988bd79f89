//! Exact norms on products of ℓ_∞ balls.
//!
//! A multilinear form attains its sup-ball maximum at sign vectors, and for
//! fixed leading arguments the best last argument is `sign(c)`, giving
//! `Σ |c_k|`. The sign of the very first entry is fixed by symmetry. The
//! leading slots are enumerated naively, the second-to-last slot by Gray
//! code with the functional updated one row at a time.

use rayon::prelude::*;

use super::{NormEstimate, NormKind};
use crate::error::{Error, Result};
use crate::forms::MultilinearForm;
use crate::scalar::Scalar;

/// Default bound on the number of enumerated sign patterns.
pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 24;

/// Full functional recomputation interval during the Gray walk, bounding the
/// drift of incremental updates for non-integer coefficients.
const RECOMPUTE_EVERY: u64 = 256;

/// `log2` of the number of sign patterns enumerated for dimensions `dims`.
pub fn brute_force_log2_count(dims: &[usize]) -> u32 {
    match dims.len() {
        0 | 1 => 0,
        m => (dims[..m - 1].iter().sum::<usize>() - 1) as u32,
    }
}

pub fn brute_force_norm(form: &MultilinearForm) -> Result<NormEstimate> {
    brute_force_norm_with_budget(form, DEFAULT_BRUTE_BUDGET)
}

pub fn brute_force_norm_with_budget(form: &MultilinearForm, budget: u64) -> Result<NormEstimate> {
    if let Some(p) = form.p().iter().find(|p| !p.is_infinite()) {
        return Err(Error::Incompatible(format!("exact enumeration needs every p_j = inf, found {p}")));
    }
    let dims = form.dims().to_vec();
    let m = dims.len();
    let log2 = brute_force_log2_count(&dims);
    if log2 >= 64 || (1u64 << log2) > budget {
        return Err(Error::BudgetExceeded { log2_required: log2, budget });
    }
    let data = form.coefficients().data();

    if m == 1 {
        let witness = vec![data.iter().map(|v| v.align_phase()).collect::<Vec<f64>>()];
        return finish(form, witness);
    }

    // Slot `g` is walked by Gray code; slots before it form the outer
    // enumeration. Slot 0 always has its first sign fixed to +1.
    let g = m - 2;
    let outer_bits: usize = if g == 0 { 0 } else { dims[..g].iter().sum::<usize>() - 1 };
    let gray_bits = if g == 0 { dims[0] - 1 } else { dims[g] };
    let gray_offset = dims[g] - gray_bits;
    let (rows, cols) = (dims[g], dims[m - 1]);
    let block = rows * cols;

    let best = (0..1u64 << outer_bits)
        .into_par_iter()
        .map(|pattern| {
            let outer = outer_signs(&dims[..g], pattern);
            let mat = contract_leading(data, &dims[..g], &outer, block);
            let (value, code) = gray_walk(&mat, rows, cols, gray_offset, gray_bits);
            (value, pattern, code)
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("non-empty enumeration");

    let (_, pattern, code) = best;
    let mut witness = outer_signs(&dims[..g], pattern);
    let mut xg = vec![1.0; rows];
    for (b, s) in xg[gray_offset..].iter_mut().enumerate() {
        if gray_to_bit(code, b) {
            *s = -1.0;
        }
    }
    witness.push(xg);
    let mut probe = witness.clone();
    probe.push(vec![0.0; cols]);
    let c = form.functional(&probe, m - 1)?;
    witness.push(c.iter().map(|v| v.align_phase()).collect());
    finish(form, witness)
}

fn finish(form: &MultilinearForm, witness: Vec<Vec<f64>>) -> Result<NormEstimate> {
    let value = form.evaluate(&witness)?.abs();
    Ok(NormEstimate { value, kind: NormKind::Exact, witness, restarts_used: 0, converged: true })
}

fn gray_to_bit(code: u64, b: usize) -> bool {
    (code >> b) & 1 == 1
}

/// Sign vectors of the outer slots; bit `k` of `pattern` (in slot order,
/// skipping the fixed first entry) set means `−1`.
fn outer_signs(dims: &[usize], pattern: u64) -> Vec<Vec<f64>> {
    let mut bit = 0;
    dims.iter()
        .enumerate()
        .map(|(j, &n)| {
            (0..n)
                .map(|i| {
                    if j == 0 && i == 0 {
                        return 1.0;
                    }
                    let s = if (pattern >> bit) & 1 == 1 { -1.0 } else { 1.0 };
                    bit += 1;
                    s
                })
                .collect()
        })
        .collect()
}

/// Contract the outer slots, leaving the trailing `rows × cols` matrix.
fn contract_leading(data: &[f64], dims: &[usize], signs: &[Vec<f64>], block: usize) -> Vec<f64> {
    if dims.is_empty() {
        return data.to_vec();
    }
    let mut mat = vec![0.0; block];
    let mut idx = vec![0usize; dims.len()];
    for chunk in data.chunks(block) {
        let w: f64 = idx.iter().zip(signs).map(|(&i, s)| s[i]).product();
        mat.iter_mut().zip(chunk).for_each(|(m, &a)| *m += w * a);
        crate::tensor::advance(&mut idx, dims);
    }
    mat
}

/// Maximize `Σ_k |Σ_i x_i M[i,k]|` over sign vectors `x` with
/// `x_i = +1` for `i < offset`. Returns the best value and its Gray code.
fn gray_walk(mat: &[f64], rows: usize, cols: usize, offset: usize, bits: usize) -> (f64, u64) {
    let mut x = vec![1.0; rows];
    let recompute = |x: &[f64], c: &mut [f64]| {
        c.iter_mut().for_each(|v| *v = 0.0);
        for (i, &s) in x.iter().enumerate() {
            c.iter_mut().zip(&mat[i * cols..(i + 1) * cols]).for_each(|(v, &a)| *v += s * a);
        }
    };
    let mut c = vec![0.0; cols];
    recompute(&x, &mut c);
    let score = |c: &[f64]| c.iter().map(|v| v.abs()).sum::<f64>();
    let mut best = (score(&c), 0u64);
    for t in 1..1u64 << bits {
        let b = t.trailing_zeros() as usize;
        let i = offset + b;
        let old = x[i];
        x[i] = -old;
        if t % RECOMPUTE_EVERY == 0 {
            recompute(&x, &mut c);
        } else {
            c.iter_mut().zip(&mat[i * cols..(i + 1) * cols]).for_each(|(v, &a)| *v -= 2.0 * old * a);
        }
        let v = score(&c);
        if v > best.0 {
            best = (v, t ^ (t >> 1));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentVector;
    use crate::forms::{diagonal_form, FormKind};
    use crate::tensor::Tensor;

    fn ev(s: &str) -> ExponentVector {
        s.parse().unwrap()
    }

    fn form(shape: &[usize], data: &[f64], p: &str) -> MultilinearForm {
        MultilinearForm::new(Tensor::new(shape.to_vec(), data.to_vec()).unwrap(), ev(p), FormKind::Custom).unwrap()
    }

    #[test]
    fn hadamard_2x2() {
        let f = form(&[2, 2], &[1.0, 1.0, 1.0, -1.0], "inf,inf");
        let est = brute_force_norm(&f).unwrap();
        assert_eq!(est.value, 2.0);
        assert_eq!(est.kind, NormKind::Exact);
    }

    #[test]
    fn diagonal_all_ones() {
        let d = diagonal_form(2, 3, &ev("inf,inf")).unwrap();
        assert_eq!(brute_force_norm(&d).unwrap().value, 3.0);
        let d3 = diagonal_form(3, 3, &ev("inf,inf,inf")).unwrap();
        assert_eq!(brute_force_norm(&d3).unwrap().value, 3.0);
    }

    #[test]
    fn linear_functional() {
        let f = form(&[3], &[1.0, -2.0, 0.5], "inf");
        assert_eq!(brute_force_norm(&f).unwrap().value, 3.5);
    }

    #[test]
    fn finite_exponent_rejected() {
        let f = form(&[2, 2], &[1.0; 4], "inf,2");
        assert!(matches!(brute_force_norm(&f), Err(Error::Incompatible(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let f = form(&[8, 2], &[1.0; 16], "inf,inf");
        assert_eq!(brute_force_log2_count(f.dims()), 7);
        assert!(brute_force_norm_with_budget(&f, 128).is_ok());
        assert!(matches!(brute_force_norm_with_budget(&f, 127), Err(Error::BudgetExceeded { log2_required: 7, .. })));
    }

    #[test]
    fn outer_patterns_skip_fixed_sign() {
        let s = outer_signs(&[2, 2], 0b101);
        assert_eq!(s, vec![vec![1.0, -1.0], vec![1.0, -1.0]]);
    }
}
