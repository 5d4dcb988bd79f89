//! Scalar field abstraction: real `f64` and `Complex64`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub trait Scalar:
    Copy
    + Send
    + Sync
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
    fn scale(self, k: f64) -> Self;
    fn is_finite(self) -> bool;

    /// Unimodular `u` with `u * self = |self|`; `+1` at zero.
    fn align_phase(self) -> Self;

    /// Neumaier-compensated sum, accumulated in iteration order.
    fn sum_compensated<I: IntoIterator<Item = Self>>(iter: I) -> Self;

    /// Standard Gaussian sample (circular for complex scalars).
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

/// Neumaier running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn align_phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
    fn sum_compensated<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Neumaier::default();
        for v in iter {
            acc.add(v);
        }
        acc.total()
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn align_phase(self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            Self::one()
        } else {
            self.conj() / r
        }
    }
    fn sum_compensated<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
        for v in iter {
            re.add(v.re);
            im.add(v.im);
        }
        Complex64::new(re.total(), im.total())
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    }
}
