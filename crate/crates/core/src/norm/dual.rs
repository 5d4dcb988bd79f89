use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::scalar::Scalar;
use crate::tensor::lp_norm;

/// Maximize `Re Σ c_i x_i` over the unit ball of ℓ_p; returns the maximizer
/// and `‖c‖_{p'}`.
///
/// `p = ∞` gives phase-aligned signs (`+1` at zero entries), `p = 1` puts all
/// mass on the first index of largest modulus, and `c = 0` returns the zero
/// vector.
pub fn dual_maximizer<T: Scalar>(c: &[T], p: Exponent) -> Result<(Vec<T>, f64)> {
    if p.value() < 1.0 {
        return Err(Error::ExponentBelowOne(p.value()));
    }
    let moduli: Vec<f64> = c.iter().map(|v| v.modulus()).collect();
    let max = moduli.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok((vec![T::zero(); c.len()], 0.0));
    }
    if p.is_infinite() {
        let x = c.iter().map(|v| v.align_phase()).collect();
        return Ok((x, lp_norm(&moduli, Exponent::ONE)));
    }
    if p.value() == 1.0 {
        let k = moduli.iter().position(|&v| v == max).unwrap_or(0);
        let mut x = vec![T::zero(); c.len()];
        x[k] = c[k].align_phase();
        return Ok((x, max));
    }
    let q = p.conjugate()?;
    let norm = lp_norm(&moduli, q);
    let e = q.value() - 1.0;
    let x = c
        .iter()
        .zip(&moduli)
        .map(|(&v, &a)| v.align_phase().scale((a / norm).powf(e)))
        .collect();
    Ok((x, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::vector_norm;
    use num_complex::Complex64;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn euclidean() {
        let (x, v) = dual_maximizer(&[3.0, 4.0], e("2")).unwrap();
        assert!((x[0] - 0.6).abs() < 1e-15 && (x[1] - 0.8).abs() < 1e-15);
        assert!((v - 5.0).abs() < 1e-15);
    }

    #[test]
    fn sup_ball_signs() {
        assert_eq!(dual_maximizer(&[3.0, 4.0], e("inf")).unwrap(), (vec![1.0, 1.0], 7.0));
        assert_eq!(dual_maximizer(&[-3.0, 0.0], e("inf")).unwrap(), (vec![-1.0, 1.0], 3.0));
    }

    #[test]
    fn l1_ball_argmax() {
        assert_eq!(dual_maximizer(&[3.0, 4.0], e("1")).unwrap(), (vec![0.0, 1.0], 4.0));
        assert_eq!(dual_maximizer(&[-4.0, 4.0], e("1")).unwrap(), (vec![-1.0, 0.0], 4.0));
    }

    #[test]
    fn zero_functional() {
        assert_eq!(dual_maximizer(&[0.0, 0.0, 0.0], e("3")).unwrap(), (vec![0.0; 3], 0.0));
    }

    #[test]
    fn below_one_rejected() {
        assert!(dual_maximizer(&[1.0], e("0.5")).is_err());
    }

    #[test]
    fn general_p_attains_dual_norm() {
        let c = [1.5, -0.2, 3.0, 0.0, -2.25];
        for p in ["1.1", "4/3", "3", "17"] {
            let p = e(p);
            let (x, v) = dual_maximizer(&c, p).unwrap();
            let attained: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert!((attained - v).abs() < 1e-12 * v);
            assert!((vector_norm(&x, p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_phase_alignment() {
        let c = [Complex64::new(0.0, 2.0), Complex64::new(-1.0, 1.0)];
        let (x, v) = dual_maximizer(&c, e("2")).unwrap();
        let s = c[0] * x[0] + c[1] * x[1];
        assert!((s.re - v).abs() < 1e-12 && s.im.abs() < 1e-12);
        assert!((v - 6f64.sqrt()).abs() < 1e-12);
    }
}
