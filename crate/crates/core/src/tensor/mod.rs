//! Dense coefficient tensors and nested ℓ_r norms.
//!
//! Data is row-major with the last index fastest, so the innermost sum of a
//! mixed norm runs over contiguous blocks.

mod holder;
mod mixed;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use holder::{
    coordinate_product, holder_fuzz, holder_fuzz_with_splitting, holder_verify, random_holder_instance, random_tensors, HolderCheck, HolderFuzzSummary,
    HolderInstance, HOLDER_REL_TOL, SPLIT_TOL,
};
pub use mixed::{lp_norm, mixed_norm, mixed_norm_value, MixedNormResult};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T = f64> {
    shape: Vec<usize>,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn new(shape: Vec<usize>, data: Vec<T>) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::InvalidTensor("rank must be at least 1".into()));
        }
        if let Some(j) = shape.iter().position(|&n| n == 0) {
            return Err(Error::InvalidTensor(format!("axis {j} has length 0")));
        }
        let len = checked_len(&shape)?;
        if data.len() != len {
            return Err(Error::InvalidTensor(format!(
                "shape {shape:?} needs {len} entries, got {}",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidTensor(format!("entry {i} is not finite")));
        }
        Ok(Tensor { shape, data })
    }

    pub fn filled(shape: Vec<usize>, value: T) -> Result<Self> {
        let len = checked_len(&shape)?;
        Self::new(shape, vec![value; len])
    }

    pub fn zeros(shape: Vec<usize>) -> Result<Self> {
        Self::filled(shape, T::zero())
    }

    /// Build from a function of the multi-index.
    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> T) -> Result<Self> {
        let len = checked_len(&shape)?;
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..len {
            data.push(f(&idx));
            advance(&mut idx, &shape);
        }
        Self::new(shape, data)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn offset(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.shape.len() {
            return None;
        }
        let mut off = 0;
        for (&i, &n) in index.iter().zip(&self.shape) {
            if i >= n {
                return None;
            }
            off = off * n + i;
        }
        Some(off)
    }

    pub fn get(&self, index: &[usize]) -> Option<T> {
        self.offset(index).map(|o| self.data[o])
    }

    pub fn scaled(&self, c: T) -> Tensor<T> {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|&v| c * v).collect() }
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.data.iter().map(|v| v.modulus()).collect()
    }
}

fn checked_len(shape: &[usize]) -> Result<usize> {
    shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::InvalidTensor(format!("shape {shape:?} overflows")))
}

/// Row-major increment of a multi-index.
pub(crate) fn advance(idx: &mut [usize], shape: &[usize]) {
    for j in (0..shape.len()).rev() {
        idx[j] += 1;
        if idx[j] < shape[j] {
            return;
        }
        idx[j] = 0;
    }
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Serialize for Tensor<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorFile { shape: self.shape.clone(), data: self.data.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = TensorFile::deserialize(d)?;
        Tensor::new(f.shape, f.data).map_err(serde::de::Error::custom)
    }
}

impl Tensor<f64> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
