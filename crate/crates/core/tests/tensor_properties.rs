use mixed_hl::exponent::{Exponent, ExponentVector};
use mixed_hl::rng::stream;
use mixed_hl::tensor::{holder_verify, mixed_norm_value, random_holder_instance, Tensor};
use proptest::prelude::*;

/// Direct recursion over the first axis, straight from the nested-sum
/// definition.
fn naive_mixed(data: &[f64], shape: &[usize], r: &[f64]) -> f64 {
    if shape.is_empty() {
        return data[0].abs();
    }
    let block = data.len() / shape[0];
    let inner: Vec<f64> = data.chunks(block).map(|b| naive_mixed(b, &shape[1..], &r[1..])).collect();
    if r[0].is_infinite() {
        inner.iter().copied().fold(0.0, f64::max)
    } else {
        inner.iter().map(|v| v.powf(r[0])).sum::<f64>().powf(1.0 / r[0])
    }
}

fn tensor_strategy(max_rank: usize, max_n: usize) -> impl Strategy<Value = Tensor> {
    proptest::collection::vec(1..=max_n, 1..=max_rank).prop_flat_map(|shape| {
        let len: usize = shape.iter().product();
        proptest::collection::vec(-10.0f64..10.0, len).prop_map(move |data| Tensor::new(shape.clone(), data).unwrap())
    })
}

fn exponent_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![4 => 0.5f64..6.0, 1 => Just(f64::INFINITY), 1 => Just(1.0), 1 => Just(2.0)]
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

proptest! {
    #[test]
    fn matches_naive_definition(
        (t, r) in tensor_strategy(4, 5).prop_flat_map(|t| {
            let m = t.rank();
            (Just(t), proptest::collection::vec(exponent_strategy(), m))
        })
    ) {
        let got = mixed_norm_value(&t, &ExponentVector::from_values(&r).unwrap()).unwrap();
        let want = naive_mixed(t.data(), t.shape(), &r);
        prop_assert!(rel(got, want) <= 1e-12, "got {got}, want {want}");
    }

    #[test]
    fn flat_consistency(t in tensor_strategy(4, 5), rho in 0.5f64..8.0) {
        let r = ExponentVector::uniform(t.rank(), Exponent::new(rho).unwrap()).unwrap();
        let got = mixed_norm_value(&t, &r).unwrap();
        let flat = Tensor::new(vec![t.len()], t.data().to_vec()).unwrap();
        let want = mixed_norm_value(&flat, &ExponentVector::from_values(&[rho]).unwrap()).unwrap();
        let naive = t.data().iter().map(|v| v.abs().powf(rho)).sum::<f64>().powf(1.0 / rho);
        prop_assert!(rel(got, want) <= 1e-12);
        prop_assert!(rel(got, naive) <= 1e-12);
    }

    #[test]
    fn homogeneity(
        (t, r) in tensor_strategy(3, 5).prop_flat_map(|t| {
            let m = t.rank();
            (Just(t), proptest::collection::vec(exponent_strategy(), m))
        }),
        c in -1e3f64..1e3,
    ) {
        let r = ExponentVector::from_values(&r).unwrap();
        let base = mixed_norm_value(&t, &r).unwrap();
        let scaled = mixed_norm_value(&t.scaled(c), &r).unwrap();
        prop_assert!(rel(scaled, c.abs() * base) <= 1e-12);
    }

    #[test]
    fn inclusion_monotonicity(
        (t, r, bump) in tensor_strategy(3, 5).prop_flat_map(|t| {
            let m = t.rank();
            (Just(t), proptest::collection::vec(0.5f64..4.0, m), proptest::collection::vec(0.0f64..4.0, m))
        })
    ) {
        let rv = ExponentVector::from_values(&r).unwrap();
        let bigger: Vec<f64> = r.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let small = mixed_norm_value(&t, &rv).unwrap();
        let large = mixed_norm_value(&t, &ExponentVector::from_values(&bigger).unwrap()).unwrap();
        let sup = mixed_norm_value(&t, &ExponentVector::uniform(t.rank(), Exponent::INFINITY).unwrap()).unwrap();
        prop_assert!(small >= large * (1.0 - 1e-12));
        prop_assert!(large >= sup * (1.0 - 1e-12));
    }

    #[test]
    fn zero_iff_zero_tensor(t in tensor_strategy(3, 4), which in 0usize..1000) {
        let r = ExponentVector::uniform(t.rank(), Exponent::ONE).unwrap();
        let mut data = vec![0.0; t.len()];
        prop_assert_eq!(mixed_norm_value(&Tensor::new(t.shape().to_vec(), data.clone()).unwrap(), &r).unwrap(), 0.0);
        data[which % t.len()] = 1e-300;
        prop_assert!(mixed_norm_value(&Tensor::new(t.shape().to_vec(), data).unwrap(), &r).unwrap() > 0.0);
    }

    #[test]
    fn holder_fuzz(seed in any::<u64>(), m in 1usize..=3, factors in 1usize..=3) {
        let mut rng = stream(seed, &[]);
        let inst = random_holder_instance(&mut rng, m, 6, factors).unwrap();
        let check = holder_verify(&inst.tensors, &inst.r, &inst.splitting).unwrap();
        prop_assert!(check.holds, "{:?}", check);
    }
}

#[test]
fn parallel_reduction_is_thread_independent() {
    let mut rng = stream(8, &[]);
    let shape = vec![40, 30, 50];
    let len: usize = shape.iter().product();
    let data: Vec<f64> = (0..len).map(|_| <f64 as mixed_hl::Scalar>::gaussian(&mut rng)).collect();
    let t = Tensor::new(shape, data).unwrap();
    let r: ExponentVector = "3,1,5/2".parse().unwrap();
    let values: Vec<u64> = [1, 2, 7]
        .iter()
        .map(|&n| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
            pool.install(|| mixed_norm_value(&t, &r).unwrap().to_bits())
        })
        .collect();
    assert!(values.windows(2).all(|w| w[0] == w[1]));
}
