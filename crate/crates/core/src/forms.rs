//! Multilinear forms with materialized coefficient tensors.
//!
//! `T(x^(1), …, x^(m)) = Σ_i a_i x^(1)_{i_1} ⋯ x^(m)_{i_m}`, with slot `j`
//! carrying the domain ℓ_{p_j}^{n_j}.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentVector};
use crate::rng::{sign_from_top_bit, stream};
use crate::scalar::Scalar;
use crate::tensor::Tensor;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Ksz,
    Diagonal,
    Row,
    ProductExtension,
    #[default]
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearForm<T = f64> {
    coefficients: Tensor<T>,
    p: ExponentVector,
    kind: FormKind,
    seed: Option<u64>,
    base_arity: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KszCertificate {
    pub seed: u64,
    pub alpha_sum: f64,
    /// Exponent of `n` in the norm bound; the constant is not known.
    pub bound_exponent: f64,
}

impl KszCertificate {
    pub fn new(p: &ExponentVector, seed: u64) -> Self {
        let alpha_sum = p.iter().map(|&pj| ksz_alpha(pj)).sum();
        KszCertificate { seed, alpha_sum, bound_exponent: 0.5 + alpha_sum }
    }
}

/// `1/2 − 1/p` for `p ≥ 2`, else 0.
pub fn ksz_alpha(p: Exponent) -> f64 {
    if p.value() >= 2.0 {
        0.5 - p.recip()
    } else {
        0.0
    }
}

impl<T: Scalar> MultilinearForm<T> {
    pub fn new(coefficients: Tensor<T>, p: ExponentVector, kind: FormKind) -> Result<Self> {
        p.expect_arity(coefficients.rank())?;
        if let Some(pj) = p.iter().find(|pj| pj.value() < 1.0) {
            return Err(Error::ExponentBelowOne(pj.value()));
        }
        Ok(MultilinearForm { coefficients, p, kind, seed: None, base_arity: None })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn coefficients(&self) -> &Tensor<T> {
        &self.coefficients
    }

    pub fn p(&self) -> &ExponentVector {
        &self.p
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Arity of the underlying form for product extensions.
    pub fn base_arity(&self) -> Option<usize> {
        self.base_arity
    }

    pub fn arity(&self) -> usize {
        self.coefficients.rank()
    }

    pub fn dims(&self) -> &[usize] {
        self.coefficients.shape()
    }

    pub fn scaled(&self, c: T) -> Self {
        MultilinearForm { coefficients: self.coefficients.scaled(c), ..self.clone() }
    }

    fn check_vectors(&self, vectors: &[Vec<T>], skip: Option<usize>) -> Result<()> {
        if vectors.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: vectors.len() });
        }
        for (slot, (v, &n)) in vectors.iter().zip(self.dims()).enumerate() {
            if Some(slot) != skip && v.len() != n {
                return Err(Error::DimensionMismatch { slot, expected: n, found: v.len() });
            }
        }
        Ok(())
    }

    /// Full contraction against one vector per slot.
    pub fn evaluate(&self, vectors: &[Vec<T>]) -> Result<T> {
        self.check_vectors(vectors, None)?;
        let layer = contract_trailing(self.coefficients.data(), self.dims(), vectors, 0);
        Ok(dot(&layer, &vectors[0]))
    }

    /// The linear functional induced on `slot` by fixing every other
    /// argument. `vectors[slot]` is ignored.
    pub fn functional(&self, vectors: &[Vec<T>], slot: usize) -> Result<Vec<T>> {
        if slot >= self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: slot + 1 });
        }
        self.check_vectors(vectors, Some(slot))?;
        let dims = self.dims();
        // Shape after the trailing contraction: dims[..=slot].
        let mut layer = contract_trailing(self.coefficients.data(), dims, vectors, slot);
        for j in 0..slot {
            let rest = layer.len() / dims[j];
            let x = &vectors[j];
            layer = (0..rest)
                .map(|k| T::sum_compensated((0..dims[j]).map(|i| x[i] * layer[i * rest + k])))
                .collect();
        }
        Ok(layer)
    }
}

/// Contract axes `m−1, …, keep+1` (last first), leaving shape `dims[..=keep]`.
fn contract_trailing<T: Scalar>(data: &[T], dims: &[usize], vectors: &[Vec<T>], keep: usize) -> Vec<T> {
    let mut layer = data.to_vec();
    for j in (keep + 1..dims.len()).rev() {
        layer = layer.chunks(dims[j]).map(|b| dot(b, &vectors[j])).collect();
    }
    layer
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    T::sum_compensated(a.iter().zip(b).map(|(&x, &y)| x * y))
}

/// Random ±1 form; signs come from the top bits of the `seed` stream in
/// row-major order.
pub fn ksz_random_form(m: usize, n: usize, p: &ExponentVector, seed: u64) -> Result<(MultilinearForm, KszCertificate)> {
    check_mn(m, n)?;
    p.expect_arity(m)?;
    let mut rng = stream(seed, &[]);
    let len = n.checked_pow(m as u32).ok_or_else(|| Error::InvalidTensor("n^m overflows".into()))?;
    let data = (0..len).map(|_| sign_from_top_bit(&mut rng)).collect();
    let t = Tensor::new(vec![n; m], data)?;
    let form = MultilinearForm::new(t, p.clone(), FormKind::Ksz)?.with_seed(seed);
    Ok((form, KszCertificate::new(p, seed)))
}

/// Complex variant with independent uniform unimodular coefficients.
pub fn ksz_random_form_complex(
    m: usize,
    n: usize,
    p: &ExponentVector,
    seed: u64,
) -> Result<(MultilinearForm<Complex64>, KszCertificate)> {
    check_mn(m, n)?;
    p.expect_arity(m)?;
    let mut rng = stream(seed, &[]);
    let len = n.checked_pow(m as u32).ok_or_else(|| Error::InvalidTensor("n^m overflows".into()))?;
    let data = (0..len)
        .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let t = Tensor::new(vec![n; m], data)?;
    let form = MultilinearForm::new(t, p.clone(), FormKind::Ksz)?.with_seed(seed);
    Ok((form, KszCertificate::new(p, seed)))
}

/// `B(z^(1), …, z^(m)) = A(z^(1), …, z^(k)) · z^(k+1)_1 ⋯ z^(m)_1` with each
/// extra slot of length `n_extra` and exponent `extra_p[j − k]`.
pub fn product_extension<T: Scalar>(
    base: &MultilinearForm<T>,
    m: usize,
    extra_p: &[Exponent],
    n_extra: usize,
) -> Result<MultilinearForm<T>> {
    let k = base.arity();
    if k > m {
        return Err(Error::ArityMismatch { expected: m, found: k });
    }
    if extra_p.len() != m - k {
        return Err(Error::ArityMismatch { expected: m - k, found: extra_p.len() });
    }
    if k == m {
        return Ok(base.clone());
    }
    if n_extra == 0 {
        return Err(Error::InvalidTensor("extra slots need length at least 1".into()));
    }
    let stride = n_extra
        .checked_pow((m - k) as u32)
        .ok_or_else(|| Error::InvalidTensor("extension size overflows".into()))?;
    let mut data = vec![T::zero(); base.coefficients.len() * stride];
    for (f, &v) in base.coefficients.data().iter().enumerate() {
        data[f * stride] = v;
    }
    let mut shape = base.dims().to_vec();
    shape.extend(std::iter::repeat_n(n_extra, m - k));
    let mut p = base.p.to_vec();
    p.extend_from_slice(extra_p);
    let mut form = MultilinearForm::new(Tensor::new(shape, data)?, ExponentVector::new(p)?, FormKind::ProductExtension)?;
    form.seed = base.seed;
    form.base_arity = Some(base.base_arity.unwrap_or(k));
    Ok(form)
}

/// `D(x^(1), …, x^(m)) = Σ_j x^(1)_j ⋯ x^(m)_j`.
pub fn diagonal_form(m: usize, n: usize, p: &ExponentVector) -> Result<MultilinearForm> {
    check_mn(m, n)?;
    p.expect_arity(m)?;
    let t = Tensor::from_fn(vec![n; m], |i| if i.iter().all(|&v| v == i[0]) { 1.0 } else { 0.0 })?;
    MultilinearForm::new(t, p.clone(), FormKind::Diagonal)
}

/// `T(x, y) = x_1 Σ_j y_j` on `ℓ_{p_1}^{n1} × ℓ_{p_2}^{n2}`.
pub fn row_form(n1: usize, n2: usize, p: &ExponentVector) -> Result<MultilinearForm> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidTensor("row form needs n1, n2 >= 1".into()));
    }
    p.expect_arity(2)?;
    let t = Tensor::from_fn(vec![n1, n2], |i| if i[0] == 0 { 1.0 } else { 0.0 })?;
    MultilinearForm::new(t, p.clone(), FormKind::Row)
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidTensor("m and n must be at least 1".into()));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct FormFile {
    #[serde(default)]
    kind: FormKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_arity: Option<usize>,
    shape: Vec<usize>,
    data: Vec<f64>,
    p: ExponentVector,
}

impl Serialize for MultilinearForm<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormFile {
            kind: self.kind,
            seed: self.seed,
            base_arity: self.base_arity,
            shape: self.dims().to_vec(),
            data: self.coefficients.data().to_vec(),
            p: self.p.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultilinearForm<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = FormFile::deserialize(d)?;
        let t = Tensor::new(f.shape, f.data).map_err(serde::de::Error::custom)?;
        let mut form = MultilinearForm::new(t, f.p, f.kind).map_err(serde::de::Error::custom)?;
        form.seed = f.seed;
        form.base_arity = f.base_arity;
        Ok(form)
    }
}

impl MultilinearForm<f64> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
