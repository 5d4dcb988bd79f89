use mixed_hl::exponent::{
    alt_exponent, anisotropic_exponents, archiv_exponent, classical_exponents, delta_regime, holder_split, lemma_lift,
    linear_exponent, m_less_set, predict, rho_hl, unified_exponent, Exponent, ExponentReport, ExponentVector,
};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn recips(v: Vec<f64>) -> ExponentVector {
    ExponentVector::from_recips(&v).unwrap()
}

/// Every formula value of a report, keyed by name.
fn values(rep: &ExponentReport) -> Vec<(&'static str, Option<f64>)> {
    let delta = (!rep.per_index_delta_exponents.is_empty()).then(|| rep.per_index_delta_exponents.iter().sum());
    vec![
        ("case1", rep.s_case1),
        ("case2", rep.s_case2),
        ("alt", rep.s_alt),
        ("archiv_a", rep.s_archiv_a),
        ("archiv_b", rep.s_archiv_b),
        ("linear", rep.s_linear),
        ("delta", delta),
    ]
}

/// Reciprocals of p and r for m in 1..=4; 1/p_j ∈ [0, 1), 1/r_j ∈ [0, 2].
fn inputs() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>)> {
    (1usize..=4).prop_flat_map(|m| {
        let p = proptest::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0f64..0.75], m);
        let r = proptest::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.0f64..=2.0], m);
        (Just(m), p, r)
    })
}

proptest! {
    #[test]
    fn monotone_in_r((m, p, r) in inputs(), j in 0usize..4, step in 0.0f64..0.5) {
        let j = j % m;
        let mut r2 = r.clone();
        // Larger r_j means smaller 1/r_j.
        r2[j] = (r[j] - step).max(0.0);
        let pv = recips(p);
        let a = predict(m, &pv, &recips(r)).unwrap();
        let b = predict(m, &pv, &recips(r2)).unwrap();
        for ((name, x), (_, y)) in values(&a).into_iter().zip(values(&b)) {
            if let (Some(x), Some(y)) = (x, y) {
                prop_assert!(y <= x + TOL, "{name}: {x} -> {y}");
            }
        }
    }

    #[test]
    fn monotone_in_p((m, p, r) in inputs(), j in 0usize..4, step in 0.0f64..0.2) {
        let j = j % m;
        let mut p2 = p.clone();
        p2[j] = (p[j] + step).min(0.99);
        let rv = recips(r);
        let a = predict(m, &recips(p), &rv).unwrap();
        let b = predict(m, &recips(p2), &rv).unwrap();
        for ((name, x), (_, y)) in values(&a).into_iter().zip(values(&b)) {
            if let (Some(x), Some(y)) = (x, y) {
                prop_assert!(y >= x - TOL, "{name}: {x} -> {y}");
            }
        }
    }

    #[test]
    fn exponents_are_nonnegative_and_deterministic((m, p, r) in inputs()) {
        let (pv, rv) = (recips(p), recips(r));
        let a = predict(m, &pv, &rv).unwrap();
        prop_assert_eq!(&a, &predict(m, &pv, &rv).unwrap());
        for (name, v) in values(&a) {
            if let Some(v) = v {
                prop_assert!(v >= 0.0, "{name} = {v}");
            }
        }
        if let Some(pred) = a.prediction() {
            prop_assert!(values(&a).iter().filter_map(|(_, v)| *v).all(|v| pred.s <= v + TOL));
        }
    }

    #[test]
    fn m_sets_partition((m, _p, r) in inputs(), rho in 0.5f64..4.0) {
        let rv = recips(r);
        let less = m_less_set(Exponent::new(rho).unwrap(), &rv);
        let rest = less.complement(m);
        let mut all: Vec<usize> = less.indices().iter().chain(rest.indices()).copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..m).collect::<Vec<_>>());
        prop_assert!(less.indices().iter().all(|&j| rv[j].value() < rho));
        prop_assert!(rest.indices().iter().all(|&j| rv[j].value() >= rho));
    }

    #[test]
    fn coincidence_at_p_equal_2m(m in 2usize..=6, r in proptest::collection::vec(0.05f64..=2.0, 6)) {
        let p = ExponentVector::uniform(m, Exponent::new(2.0 * m as f64).unwrap()).unwrap();
        let u = unified_exponent(m, &p, &recips(r[..m].to_vec())).unwrap();
        prop_assert!((u.s_case1.unwrap() - u.s_case2.unwrap()).abs() <= TOL);
    }

    #[test]
    fn boundary_coincidence(m in 2usize..=6, w in proptest::collection::vec(0.01f64..1.0, 6)) {
        let w = &w[..m];
        let s: f64 = w.iter().sum();
        let p = recips(w.iter().map(|x| 0.5 * x / s).collect());
        let c = classical_exponents(m, &p).unwrap();
        prop_assert_eq!(c.hlpp, Some(2.0));
        prop_assert_eq!(c.dsp, Some(2.0));
    }

    #[test]
    fn alt_dominates_case2(
        m in 2usize..=5,
        w in proptest::collection::vec(0.01f64..1.0, 5),
        h in 0.0f64..=0.5,
        r in proptest::collection::vec(1.0f64..=2.0, 5),
    ) {
        let s: f64 = w[..m].iter().sum();
        let p = recips(w[..m].iter().map(|x| h * x / s).collect());
        let r = ExponentVector::from_values(&r[..m]).unwrap();
        let alt = alt_exponent(m, &p, &r).unwrap();
        let case2 = unified_exponent(m, &p, &r).unwrap().s_case2.unwrap();
        prop_assert!(alt <= case2 + TOL);
    }

    #[test]
    fn lemma_lift_postconditions(
        m in 2usize..=6,
        w in proptest::collection::vec(0.01f64..1.0, 6),
        h in 0.0f64..=0.5,
        r in proptest::collection::vec(0.5f64..=1.6, 6),
    ) {
        let s: f64 = w[..m].iter().sum();
        let p = recips(w[..m].iter().map(|x| h * x / s).collect());
        let h = p.harmonic_sum();
        let target = (m as f64 + 1.0) / 2.0 - h;
        prop_assume!(r[..m].iter().sum::<f64>() > target + 1e-9);
        let r = recips(r[..m].to_vec());
        let lifted = lemma_lift(&r, &p).unwrap();
        let lo = 1.0 / (1.0 - h);
        for (sj, rj) in lifted.iter().zip(r.iter()) {
            prop_assert!(sj.value() >= rj.value() * (1.0 - TOL));
            prop_assert!(sj.value() >= lo * (1.0 - TOL) && sj.value() <= 2.0 * (1.0 + TOL));
        }
        prop_assert!((lifted.harmonic_sum() - target).abs() <= TOL);
        // The split exponents then satisfy the Hölder identity.
        let x = holder_split(&r, &lifted).unwrap();
        for j in 0..m {
            prop_assert!((r[j].recip() - lifted[j].recip() - x[j].recip()).abs() <= TOL);
        }
    }

    #[test]
    fn archiv_equal_p_identity(m in 2usize..=6, t in 0.0f64..1.0, r in 0.05f64..=2.0) {
        let pj = 2.0 + t * (2.0 * m as f64 - 2.0);
        let p = ExponentVector::uniform(m, Exponent::new(pj).unwrap()).unwrap();
        let a = archiv_exponent(m, Exponent::new(r).unwrap(), &p).unwrap().s_a.unwrap();
        let mf = m as f64;
        let want = ((2.0 * mf * r + 2.0 * mf * pj - mf * pj * r - pj * r) / (2.0 * pj * r)).max(0.0);
        prop_assert!((a - want).abs() <= 1e-12 * want.max(1.0));
    }
}

#[test]
fn rho_hl_threshold() {
    assert_eq!(rho_hl(2, 0.0).unwrap().value(), 4.0 / 3.0);
    assert_eq!(rho_hl(2, 0.5).unwrap().value(), 2.0);
}

#[test]
fn linear_examples() {
    let e = |s: &str| s.parse::<Exponent>().unwrap();
    assert_eq!(linear_exponent(e("2"), e("2")).unwrap(), 0.0);
    assert_eq!(linear_exponent(e("1"), e("2")).unwrap(), 0.5);
    assert_eq!(linear_exponent(e("1"), e("inf")).unwrap(), 0.0);
}

#[test]
fn delta_regime_examples() {
    let ev = |s: &str| s.parse::<ExponentVector>().unwrap();
    assert!(delta_regime(&ev("4,2")));
    assert!(!delta_regime(&ev("2,2")));
    assert!(!delta_regime(&ev("inf,1")));
    assert_eq!(anisotropic_exponents(&ev("4,2"), &ev("2,1")).unwrap(), vec![0.25, 0.5]);
}
