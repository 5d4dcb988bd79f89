use serde::{Deserialize, Serialize};

use super::{Exponent, ExponentVector, IndexSet, BOUNDARY_TOL};
use crate::error::{Error, Result};

/// `|1/p| = 1/p_1 + … + 1/p_m`.
pub fn harmonic_sum(p: &ExponentVector) -> f64 {
    p.harmonic_sum()
}

/// Conjugate exponent `p'`; `1' = ∞` and `∞' = 1`.
pub fn conjugate(p: Exponent) -> Result<Exponent> {
    if p.value() < 1.0 {
        return Err(Error::ExponentBelowOne(p.value()));
    }
    Exponent::from_recip(1.0 - p.recip())
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn require_arity(m: usize, v: &ExponentVector) -> Result<()> {
    v.expect_arity(m)
}

fn require_multilinear(m: usize) -> Result<()> {
    if m < 2 {
        return Err(hypothesis(format!("m >= 2 required, got m = {m}")));
    }
    Ok(())
}

/// `ρ_HL = 2m / (m + 1 - 2|1/p|)`, defined while the denominator is positive.
pub fn rho_hl(m: usize, harmonic: f64) -> Option<Exponent> {
    let denom = m as f64 + 1.0 - 2.0 * harmonic;
    (denom > 0.0).then(|| Exponent::new(2.0 * m as f64 / denom).expect("positive"))
}

/// Exponents of the three classical inequalities for m-linear forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalExponents {
    /// Bohnenblust–Hille: `2m/(m+1)`.
    pub bh: f64,
    /// Hardy–Littlewood / Praciano-Pereira, when `|1/p| ≤ 1/2`.
    pub hlpp: Option<f64>,
    /// Hardy–Littlewood / Dimant–Sevilla-Peris, when `1/2 ≤ |1/p| < 1`.
    pub dsp: Option<f64>,
}

pub fn classical_exponents(m: usize, p: &ExponentVector) -> Result<ClassicalExponents> {
    if m == 0 {
        return Err(hypothesis("m >= 1 required"));
    }
    require_arity(m, p)?;
    let h = p.harmonic_sum();
    let mf = m as f64;
    let hlpp = (h <= 0.5 + BOUNDARY_TOL).then(|| {
        // snap to the boundary so that hlpp = dsp = 2 there
        let h = if (h - 0.5).abs() <= BOUNDARY_TOL { 0.5 } else { h };
        2.0 * mf / (mf + 1.0 - 2.0 * h)
    });
    let dsp = (h >= 0.5 - BOUNDARY_TOL && h < 1.0 - BOUNDARY_TOL).then(|| {
        let h = if (h - 0.5).abs() <= BOUNDARY_TOL { 0.5 } else { h };
        1.0 / (1.0 - h)
    });
    Ok(ClassicalExponents { bh: 2.0 * mf / (mf + 1.0), hlpp, dsp })
}

/// Admissibility of a mixed exponent `s` in the generalized Hardy–Littlewood
/// inequality: every `s_j ∈ [(1-|1/p|)^{-1}, 2]` and
/// `Σ 1/s_j ≤ (m+1)/2 - |1/p|`.
///
/// Errors when `|1/p| > 1/2`, where the characterization does not apply.
pub fn ghl_admissible(s: &ExponentVector, p: &ExponentVector) -> Result<bool> {
    let m = p.len();
    require_arity(m, s)?;
    let h = p.harmonic_sum();
    if h > 0.5 + BOUNDARY_TOL {
        return Err(hypothesis(format!("|1/p| <= 1/2 required, got {h}")));
    }
    // interval test in reciprocal space: 1/2 <= 1/s_j <= 1 - |1/p|
    let upper_recip = 1.0 - h;
    let in_range = s
        .iter()
        .all(|e| e.recip() >= 0.5 - BOUNDARY_TOL && e.recip() <= upper_recip + BOUNDARY_TOL);
    let budget = (m as f64 + 1.0) / 2.0 - h;
    Ok(in_range && s.harmonic_sum() <= budget + BOUNDARY_TOL)
}

/// `M_<^ρ = { j : r_j < ρ }` (strict).
pub fn m_less_set(rho: Exponent, r: &ExponentVector) -> IndexSet {
    IndexSet::from_indices(
        r.iter()
            .enumerate()
            .filter(|(_, rj)| rj.value() < rho.value())
            .map(|(j, _)| j)
            .collect(),
    )
}

/// Exponents of the unified mixed-sum inequality, both cases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnifiedExponents {
    pub m_less_2: IndexSet,
    pub rho_hl: Option<Exponent>,
    pub m_less_hl: Option<IndexSet>,
    /// Case `p ∈ [2, 2m]^m`.
    pub s_case1: Option<f64>,
    /// Case `|1/p| ≤ 1/2`.
    pub s_case2: Option<f64>,
    /// KSZ lower bound for case 1; equals `s_case1` when `M_<^2` is full.
    pub case1_lower_bound: Option<f64>,
    pub case1_optimal: bool,
    pub case2_optimal: bool,
}

pub fn unified_exponent(m: usize, p: &ExponentVector, r: &ExponentVector) -> Result<UnifiedExponents> {
    require_multilinear(m)?;
    require_arity(m, p)?;
    require_arity(m, r)?;
    let h = p.harmonic_sum();
    let mf = m as f64;

    let m_less_2 = m_less_set(Exponent::TWO, r);
    let case1 = p.iter().all(|pj| pj.value() >= 2.0 && pj.value() <= 2.0 * mf);
    let (s_case1, case1_lower_bound) = if case1 {
        let k = m_less_2.len() as f64;
        let sum_r: f64 = m_less_2.indices().iter().map(|&j| r[j].recip()).sum();
        let s = (sum_r + h - (k + 1.0) / 2.0).max(0.0);
        let lower = (!m_less_2.is_empty()).then(|| {
            let sum_p: f64 = m_less_2.indices().iter().map(|&j| p[j].recip()).sum();
            (sum_r + sum_p - (k + 1.0) / 2.0).max(0.0)
        });
        (Some(s), lower)
    } else {
        (None, None)
    };

    let rho = rho_hl(m, h);
    let case2 = h <= 0.5 + BOUNDARY_TOL;
    let (m_less_hl, s_case2) = match rho {
        Some(rho) => {
            let set = m_less_set(rho, r);
            let s = case2.then(|| {
                let sum_r: f64 = set.indices().iter().map(|&j| r[j].recip()).sum();
                (sum_r - rho.recip() * set.len() as f64).max(0.0)
            });
            (Some(set), s)
        }
        None => (None, None),
    };

    let case1_optimal = s_case1.is_some() && m_less_2.is_full(m);
    let case2_optimal = s_case2.is_some()
        && m_less_hl.as_ref().is_some_and(|set| set.is_empty() || set.is_full(m));
    Ok(UnifiedExponents {
        m_less_2,
        rho_hl: rho,
        m_less_hl,
        s_case1,
        s_case2,
        case1_lower_bound,
        case1_optimal,
        case2_optimal,
    })
}

/// Exponents for a single summation exponent `r` over all slots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchivExponents {
    /// `max{m/r - (m+1)/2 + |1/p|, 0}` on `(0,2]×[2,2m)^m ∪ (0,∞)×[2m,∞]^m`.
    pub s_a: Option<f64>,
    /// `max{(p + m r - r p)/(p r), 0}` for equal `p_j = p`, `(r,p) ∈ [2,∞)×(m,2m]`.
    pub s_b: Option<f64>,
}

pub fn archiv_exponent(m: usize, r: Exponent, p: &ExponentVector) -> Result<ArchivExponents> {
    require_multilinear(m)?;
    require_arity(m, p)?;
    let mf = m as f64;
    let rv = r.value();
    let h = p.harmonic_sum();

    let low_band = rv <= 2.0 && p.iter().all(|pj| pj.value() >= 2.0 && pj.value() < 2.0 * mf);
    let high_band = rv.is_finite() && p.iter().all(|pj| pj.value() >= 2.0 * mf);
    let s_a = (low_band || high_band).then(|| (mf * r.recip() - (mf + 1.0) / 2.0 + h).max(0.0));

    let first = p[0];
    let equal = p.iter().all(|pj| *pj == first);
    let s_b = (equal && rv >= 2.0 && rv.is_finite() && first.value() > mf && first.value() <= 2.0 * mf)
        .then(|| {
            let pv = first.value();
            ((pv + mf * rv - rv * pv) / (pv * rv)).max(0.0)
        });
    Ok(ArchivExponents { s_a, s_b })
}

/// The equal-exponent form `max{(2mr + 2mp - mpr - pr)/(2pr), 0}`, finite `p`.
///
/// Kept as a separate algebraic route so that it can be checked against the
/// mixed-`p` expression used by [`archiv_exponent`].
pub fn archiv_equal_p_formula(m: usize, r: f64, p: f64) -> f64 {
    let mf = m as f64;
    ((2.0 * mf * r + 2.0 * mf * p - mf * p * r - p * r) / (2.0 * p * r)).max(0.0)
}

/// `max{|1/r| - (m+1)/2 + |1/p|, 0}` for `|1/p| ≤ 1/2` and `r ∈ [1,2]^m`.
pub fn alt_exponent(m: usize, p: &ExponentVector, r: &ExponentVector) -> Result<f64> {
    require_multilinear(m)?;
    require_arity(m, p)?;
    require_arity(m, r)?;
    let h = p.harmonic_sum();
    if h > 0.5 + BOUNDARY_TOL {
        return Err(hypothesis(format!("|1/p| <= 1/2 required, got {h}")));
    }
    if let Some((j, rj)) = r.iter().enumerate().find(|(_, rj)| rj.value() < 1.0 || rj.value() > 2.0) {
        return Err(hypothesis(format!("r_{} = {rj} outside [1, 2]", j + 1)));
    }
    Ok((r.harmonic_sum() - (m as f64 + 1.0) / 2.0 + h).max(0.0))
}

/// Tail sums `1/p_k + … + 1/p_m` for `k = 1..m`.
fn tail_sums(p: &ExponentVector) -> Vec<f64> {
    let mut tails = vec![0.0; p.len()];
    let mut acc = 0.0;
    for k in (0..p.len()).rev() {
        acc += p[k].recip();
        tails[k] = acc;
    }
    tails
}

/// `(δ_m^{p_1..p_m}, δ_{m-1}^{p_2..p_m}, …, δ_1^{p_m})` with
/// `δ = 1 / (1 - tail sum)`.
pub fn delta_chain(p: &ExponentVector) -> Result<Vec<Exponent>> {
    tail_sums(p)
        .into_iter()
        .enumerate()
        .map(|(k, tail)| {
            if tail >= 1.0 - BOUNDARY_TOL {
                Err(hypothesis(format!(
                    "tail sum 1/p_{} + ... + 1/p_m = {tail} must be < 1",
                    k + 1
                )))
            } else {
                Exponent::from_recip(1.0 - tail)
            }
        })
        .collect()
}

/// Whether `1 < p_m ≤ 2 < p_1, …, p_{m-1}` and `|1/p| < 1`.
pub fn delta_regime(p: &ExponentVector) -> bool {
    let m = p.len();
    if m < 2 {
        return false;
    }
    let last = p[m - 1].value();
    last > 1.0
        && last <= 2.0
        && p[..m - 1].iter().all(|pj| pj.value() > 2.0)
        && p.harmonic_sum() < 1.0 - BOUNDARY_TOL
}

/// `max{1/r_k - 1/δ_{m-k+1}^{p_k..p_m}, 0}` for each slot, in the regime
/// `1 < p_m ≤ 2 < p_1, …, p_{m-1}`, `|1/p| < 1`.
pub fn anisotropic_exponents(p: &ExponentVector, r: &ExponentVector) -> Result<Vec<f64>> {
    let m = p.len();
    require_arity(m, r)?;
    if !delta_regime(p) {
        return Err(hypothesis(format!(
            "1 < p_m <= 2 < p_1..p_(m-1) with |1/p| < 1 and m >= 2 required, got p = ({p})"
        )));
    }
    let chain = delta_chain(p)?;
    Ok(chain
        .iter()
        .zip(r.iter())
        .map(|(d, rk)| (rk.recip() - d.recip()).max(0.0))
        .collect())
}

/// Raise each `r_j` to some `s_j ≥ r_j` with `s_j ∈ [(1-|1/p|)^{-1}, 2]` and
/// `Σ 1/s_j = (m+1)/2 - |1/p|`.
///
/// Requires `r ∈ (0,2]^m`, `|1/p| ≤ 1/2` and `Σ 1/r_j > (m+1)/2 - |1/p|`.
/// If some `r_j ≤ (1-|1/p|)^{-1}`, the smallest such `j` gets the lower
/// endpoint and every other slot gets 2. Otherwise the slots with `r_j < 2`
/// are raised to 2 in index order until the next one can absorb the
/// remainder exactly.
pub fn lemma_lift(r: &ExponentVector, p: &ExponentVector) -> Result<ExponentVector> {
    let m = p.len();
    require_multilinear(m)?;
    require_arity(m, r)?;
    let h = p.harmonic_sum();
    if h > 0.5 + BOUNDARY_TOL {
        return Err(hypothesis(format!("|1/p| <= 1/2 required, got {h}")));
    }
    if let Some((j, rj)) = r.iter().enumerate().find(|(_, rj)| rj.value() > 2.0) {
        return Err(hypothesis(format!("r_{} = {rj} outside (0, 2]", j + 1)));
    }
    let target = (m as f64 + 1.0) / 2.0 - h;
    let recips = r.recips();
    let total: f64 = recips.iter().sum();
    if total <= target + BOUNDARY_TOL {
        return Err(hypothesis(format!(
            "sum of 1/r_j = {total} must exceed (m+1)/2 - |1/p| = {target}"
        )));
    }
    let floor_recip = 1.0 - h; // reciprocal of the lower endpoint (1-|1/p|)^{-1}

    // entries with r_j <= (1-|1/p|)^{-1}, i.e. 1/r_j >= 1 - |1/p|
    if let Some(j0) = recips.iter().position(|&q| q >= floor_recip) {
        let mut s = vec![0.5; m];
        s[j0] = floor_recip;
        return ExponentVector::from_recips(&s);
    }

    let below_two: Vec<usize> = (0..m).filter(|&j| recips[j] > 0.5).collect();
    let mut current = recips.clone();
    for &j0 in &below_two {
        // sum with slot j0 replaced by 1/2, earlier slots of N already at 1/2
        let others: f64 = current.iter().enumerate().filter(|&(k, _)| k != j0).map(|(_, &q)| q).sum();
        if others + 0.5 <= target + BOUNDARY_TOL {
            let needed = target - others;
            debug_assert!(needed >= 0.5 - BOUNDARY_TOL && needed <= recips[j0] + BOUNDARY_TOL);
            current[j0] = needed.clamp(0.5, floor_recip);
            return ExponentVector::from_recips(&current);
        }
        current[j0] = 0.5;
    }
    // Unreachable: with every slot at 2 the sum is m/2 <= target.
    Err(hypothesis("no admissible lift exists (internal invariant broken)"))
}

/// Splitting exponents `x` with `1/r_i = 1/s_i + 1/x_i`; `x_i = ∞` when the
/// reciprocals agree.
pub fn holder_split(r: &ExponentVector, s: &ExponentVector) -> Result<ExponentVector> {
    require_arity(r.len(), s)?;
    let recips = r
        .iter()
        .zip(s.iter())
        .enumerate()
        .map(|(i, (ri, si))| {
            let gap = ri.recip() - si.recip();
            if gap < -BOUNDARY_TOL {
                Err(hypothesis(format!("1/r_{0} < 1/s_{0} ({ri} vs {si})", i + 1)))
            } else {
                Ok(gap.max(0.0))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ExponentVector::from_recips(&recips)
}

/// Linear case: `max{1/r - 1/p', 0}`.
pub fn linear_exponent(r: Exponent, p: Exponent) -> Result<f64> {
    let pc = conjugate(p)?;
    Ok((r.recip() - pc.recip()).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> ExponentVector {
        s.parse().unwrap()
    }

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    const TOL: f64 = 1e-12;

    #[test]
    fn harmonic_sum_examples() {
        assert_eq!(harmonic_sum(&ev("inf,inf")), 0.0);
        assert_eq!(harmonic_sum(&ev("4,4")), 0.5);
        assert_eq!(harmonic_sum(&ev("4,2")), 0.75);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(e("2")).unwrap().value(), 2.0);
        assert!(conjugate(e("1")).unwrap().is_infinite());
        assert_eq!(conjugate(Exponent::INFINITY).unwrap().value(), 1.0);
        assert!((conjugate(e("4")).unwrap().value() - 4.0 / 3.0).abs() < TOL);
        assert!(matches!(conjugate(e("0.5")), Err(Error::ExponentBelowOne(_))));
    }

    #[test]
    fn classical_examples() {
        let c = classical_exponents(2, &ev("inf,inf")).unwrap();
        assert!((c.bh - 4.0 / 3.0).abs() < TOL);
        assert!((c.hlpp.unwrap() - 4.0 / 3.0).abs() < TOL);
        assert!(c.dsp.is_none());

        let c = classical_exponents(2, &ev("4,4")).unwrap();
        assert_eq!(c.hlpp, Some(2.0));
        assert_eq!(c.dsp, Some(2.0));

        // |1/p| = 1/2 here too, so 2m/(m + 1 - 2|1/p|) = 6/3.
        let c = classical_exponents(3, &ev("6,6,6")).unwrap();
        assert_eq!(c.hlpp, Some(2.0));
        assert_eq!(c.dsp, Some(2.0));

        let c = classical_exponents(2, &ev("2,2")).unwrap();
        assert!(c.hlpp.is_none() && c.dsp.is_none());
        assert!(classical_exponents(3, &ev("2,2")).is_err());
    }

    #[test]
    fn ghl_admissible_examples() {
        assert!(ghl_admissible(&ev("4/3,4/3"), &ev("inf,inf")).unwrap());
        // 1 ∈ [1, 2] and 1/1 + 1/2 = 3/2 = (m+1)/2: boundary admissible
        assert!(ghl_admissible(&ev("1,2"), &ev("inf,inf")).unwrap());
        assert!(!ghl_admissible(&ev("1,1"), &ev("inf,inf")).unwrap());
        // s_1 below (1 - 1/2)^{-1} = 2
        assert!(!ghl_admissible(&ev("1.9,2"), &ev("4,4")).unwrap());
        assert!(ghl_admissible(&ev("2,2"), &ev("4,4")).unwrap());
        assert!(matches!(ghl_admissible(&ev("2,2"), &ev("2,4")), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn m_less_examples() {
        assert_eq!(m_less_set(e("2"), &ev("1,3")).indices(), &[0]);
        assert!(m_less_set(e("2"), &ev("2,2")).is_empty());
        assert_eq!(m_less_set(e("4/3"), &ev("1,1,2")).indices(), &[0, 1]);
        assert!(m_less_set(Exponent::INFINITY, &ev("inf")).is_empty());
    }

    #[test]
    fn unified_examples() {
        let u = unified_exponent(2, &ev("2,2"), &ev("1,1")).unwrap();
        // independent route: equal-exponent formula with m=2, r=1, p=2
        let oracle = (2.0 * 2.0 * 1.0 + 2.0 * 2.0 * 2.0 - 2.0 * 2.0 * 1.0 - 2.0 * 1.0) / (2.0 * 2.0 * 1.0);
        assert_eq!(oracle, 1.5);
        assert!((u.s_case1.unwrap() - oracle).abs() < TOL);
        assert!(u.case1_optimal);
        assert!(u.s_case2.is_none());

        let u = unified_exponent(2, &ev("inf,inf"), &ev("2,2")).unwrap();
        assert_eq!(u.s_case2, Some(0.0));
        assert!(u.m_less_hl.as_ref().unwrap().is_empty());
        assert!(u.case2_optimal);
        assert!(u.s_case1.is_none());

        let u = unified_exponent(2, &ev("4,4"), &ev("1,2")).unwrap();
        assert!((u.s_case1.unwrap() - 0.5).abs() < TOL);
        assert!((u.s_case2.unwrap() - 0.5).abs() < TOL);
        assert_eq!(u.m_less_2, *u.m_less_hl.as_ref().unwrap());
        // intermediate M-set: optimality not established by the theory
        assert!(!u.case1_optimal && !u.case2_optimal);
        // lower bound 1/r_1 + 1/p_1 - (1+1)/2 = 1 + 1/4 - 1
        assert!((u.case1_lower_bound.unwrap() - 0.25).abs() < TOL);

        assert!(unified_exponent(1, &ev("2"), &ev("1")).is_err());
        let none = unified_exponent(2, &ev("1.5,inf"), &ev("1,1")).unwrap();
        assert!(none.s_case1.is_none() && none.s_case2.is_none());
    }

    #[test]
    fn case1_with_empty_m_set_keeps_the_formula() {
        // p = (2,2), r = (2,2): coefficient ℓ_2 sums grow like n^{1/2} for
        // the diagonal form, matching |1/p| - 1/2 rather than 0.
        let u = unified_exponent(2, &ev("2,2"), &ev("2,2")).unwrap();
        assert!(u.m_less_2.is_empty());
        assert!((u.s_case1.unwrap() - 0.5).abs() < TOL);
        let u = unified_exponent(2, &ev("4,4"), &ev("3,3")).unwrap();
        assert_eq!(u.s_case1, Some(0.0));
    }

    #[test]
    fn archiv_examples() {
        let a = archiv_exponent(2, e("1"), &ev("2,2")).unwrap();
        assert!((a.s_a.unwrap() - 1.5).abs() < TOL);
        assert!((archiv_equal_p_formula(2, 1.0, 2.0) - 1.5).abs() < TOL);

        let b = archiv_exponent(2, e("2"), &ev("3,3")).unwrap();
        assert!((b.s_b.unwrap() - 1.0 / 6.0).abs() < TOL);
        assert!(b.s_a.is_some());

        let c = archiv_exponent(2, e("4/3"), &ev("inf,inf")).unwrap();
        assert_eq!(c.s_a, Some(0.0));
        assert!(c.s_b.is_none());

        // r > 2 with p in [2, 2m): outside both bands of s_a
        let d = archiv_exponent(2, e("3"), &ev("3,3")).unwrap();
        assert!(d.s_a.is_none());
        assert!(d.s_b.is_some());
        let none = archiv_exponent(2, e("3"), &ev("2,inf")).unwrap();
        assert!(none.s_a.is_none() && none.s_b.is_none());
    }

    #[test]
    fn alt_examples() {
        assert!((alt_exponent(2, &ev("inf,inf"), &ev("1,1")).unwrap() - 0.5).abs() < TOL);
        assert_eq!(alt_exponent(2, &ev("inf,inf"), &ev("4/3,4/3")).unwrap(), 0.0);
        assert_eq!(alt_exponent(3, &ev("6,6,6"), &ev("2,2,2")).unwrap(), 0.0);
        assert!(alt_exponent(2, &ev("inf,inf"), &ev("0.9,1")).is_err());
        assert!(alt_exponent(2, &ev("2,4"), &ev("1,1")).is_err());
    }

    #[test]
    fn delta_examples() {
        let d: Vec<f64> = delta_chain(&ev("4,2")).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(d, vec![4.0, 2.0]);
        let d: Vec<f64> = delta_chain(&ev("inf,2")).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(d, vec![2.0, 2.0]);
        assert!(matches!(delta_chain(&ev("3,3,3")), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn anisotropic_examples() {
        assert_eq!(anisotropic_exponents(&ev("4,2"), &ev("2,1")).unwrap(), vec![0.25, 0.5]);
        assert_eq!(anisotropic_exponents(&ev("4,2"), &ev("4,2")).unwrap(), vec![0.0, 0.0]);
        assert_eq!(anisotropic_exponents(&ev("inf,2"), &ev("1,1")).unwrap(), vec![0.5, 0.5]);
        assert!(anisotropic_exponents(&ev("4,4"), &ev("1,1")).is_err());
        assert!(anisotropic_exponents(&ev("2,2"), &ev("1,1")).is_err());
        assert!(anisotropic_exponents(&ev("3,1.5"), &ev("1,1")).is_err());
    }

    #[test]
    fn lemma_lift_examples() {
        let s = lemma_lift(&ev("1,1"), &ev("inf,inf")).unwrap();
        assert_eq!(s.iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1.0, 2.0]);

        let s = lemma_lift(&ev("1.2,1.2"), &ev("inf,inf")).unwrap();
        // 1/s_1 = 3/2 - 1/1.2
        let oracle = 1.0 / (1.5 - 1.0 / 1.2);
        assert!((s[0].value() - oracle).abs() < 1e-12 && (oracle - 1.5).abs() < 1e-12);
        assert_eq!(s[1].value(), 1.2);
        assert!((s.harmonic_sum() - 1.5).abs() < TOL);

        assert!(matches!(lemma_lift(&ev("2,2"), &ev("4,4")), Err(Error::Hypothesis(_))));
        assert!(lemma_lift(&ev("1,2.5"), &ev("inf,inf")).is_err());
    }

    #[test]
    fn lemma_lift_second_case_raises_earlier_slots_to_two() {
        // m=3, p=∞: target 2, floor 1. r = (1.1, 1.1, 1.1): Σ = 2.727.
        // j0 = 1: 0.5 + 2/1.1 = 2.318 > 2; j0 = 2: 0.5 + 0.5 + 1/1.1 = 1.909 <= 2.
        let s = lemma_lift(&ev("1.1,1.1,1.1"), &ev("inf,inf,inf")).unwrap();
        assert_eq!(s[0].value(), 2.0);
        assert!((s[1].recip() - (2.0 - 0.5 - 1.0 / 1.1)).abs() < TOL);
        assert_eq!(s[2].value(), 1.1);
    }

    #[test]
    fn holder_split_examples() {
        let x = holder_split(&ev("1,1"), &ev("2,2")).unwrap();
        assert_eq!(x.iter().map(|v| v.value()).collect::<Vec<_>>(), vec![2.0, 2.0]);
        assert!(holder_split(&ev("4/3"), &ev("4/3")).unwrap()[0].is_infinite());
        let x = holder_split(&ev("1,2"), &ev("2,2")).unwrap();
        assert_eq!(x[0].value(), 2.0);
        assert!(x[1].is_infinite());
        assert!(holder_split(&ev("2"), &ev("1")).is_err());
    }

    #[test]
    fn linear_examples() {
        assert_eq!(linear_exponent(e("1"), Exponent::INFINITY).unwrap(), 0.0);
        assert_eq!(linear_exponent(e("2"), e("2")).unwrap(), 0.0);
        assert_eq!(linear_exponent(e("1"), e("2")).unwrap(), 0.5);
        assert!(linear_exponent(e("1"), e("0.5")).is_err());
    }
}
