use serde::{Deserialize, Serialize};

use super::formulas::{
    alt_exponent, anisotropic_exponents, archiv_exponent, classical_exponents, delta_chain,
    delta_regime, ghl_admissible, linear_exponent, unified_exponent, ClassicalExponents,
};
use super::{Exponent, ExponentVector, IndexSet, BOUNDARY_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeFlags {
    /// `p ∈ [2, 2m]^m`.
    pub case1_applies: bool,
    /// `|1/p| ≤ 1/2`.
    pub case2_applies: bool,
    /// `1 < p_m ≤ 2 < p_1, …, p_{m-1}` and `|1/p| < 1`.
    pub delta_applies: bool,
    /// `r` itself is an admissible generalized Hardy–Littlewood exponent.
    pub subcritical: bool,
    /// `|1/p| ≤ 1/2` and `r ∈ [1, 2]^m`.
    pub alt_applies: bool,
    pub linear_applies: bool,
    pub case1_optimal: bool,
    pub case2_optimal: bool,
    /// The smallest reported exponent is not known to be optimal.
    pub optimality_open: bool,
}

/// All exponents that apply to `(m, p, r)`, plus intermediate quantities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub m: usize,
    pub p: ExponentVector,
    pub r: ExponentVector,
    pub harmonic_sum: f64,
    pub rho_hl: Option<Exponent>,
    pub m_less_2: IndexSet,
    pub m_less_hl: Option<IndexSet>,
    pub classical: Option<ClassicalExponents>,
    pub s_case1: Option<f64>,
    pub case1_lower_bound: Option<f64>,
    pub s_case2: Option<f64>,
    pub s_alt: Option<f64>,
    /// Single-`r` exponents, present when all `r_j` are equal.
    pub s_archiv_a: Option<f64>,
    pub s_archiv_b: Option<f64>,
    pub s_linear: Option<f64>,
    pub delta_chain: Vec<Exponent>,
    pub per_index_delta_exponents: Vec<f64>,
    pub flags: RegimeFlags,
}

/// The exponent an experiment is compared against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub s: f64,
    /// Which formula produced `s` (`case1`, `case2`, `alt`, `archiv_a`,
    /// `archiv_b`, `delta`, `linear`, `subcritical`).
    pub source: String,
    pub optimal: bool,
}

impl ExponentReport {
    /// Every reported upper-bound exponent with its source and optimality.
    /// For the anisotropic family the per-index exponents are summed, which
    /// is the exponent when all dimensions equal `n`.
    pub fn candidates(&self) -> Vec<Prediction> {
        let mut out = Vec::new();
        let mut push = |s: Option<f64>, source: &str, optimal: bool| {
            if let Some(s) = s {
                out.push(Prediction { s, source: source.to_string(), optimal });
            }
        };
        push(self.flags.subcritical.then_some(0.0), "subcritical", true);
        push(self.s_case1, "case1", self.flags.case1_optimal);
        push(self.s_case2, "case2", self.flags.case2_optimal);
        push(self.s_alt, "alt", true);
        push(self.s_archiv_a, "archiv_a", true);
        push(self.s_archiv_b, "archiv_b", true);
        push(self.s_linear, "linear", true);
        if self.flags.delta_applies {
            let total: f64 = self.per_index_delta_exponents.iter().sum();
            push(Some(total), "delta", self.delta_total_optimal());
        }
        out
    }

    /// Smallest applicable exponent. Ties prefer a source with established
    /// optimality.
    pub fn prediction(&self) -> Option<Prediction> {
        let cands = self.candidates();
        let best = cands.iter().map(|c| c.s).fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            return None;
        }
        let tied: Vec<&Prediction> = cands.iter().filter(|c| c.s <= best + BOUNDARY_TOL).collect();
        tied.iter()
            .find(|c| c.optimal)
            .or_else(|| tied.first())
            .map(|c| Prediction { s: best, ..(*c).clone() })
    }

    // With equal dimensions the per-index lower-bound forms certify each
    // positive exponent separately, so the sum is only known sharp when at
    // most one entry is positive and its side condition holds.
    fn delta_total_optimal(&self) -> bool {
        let e = &self.per_index_delta_exponents;
        let positive: Vec<usize> = (0..e.len()).filter(|&k| e[k] > 0.0).collect();
        match positive.as_slice() {
            [] => true,
            [k] => ((k + 1)..e.len()).all(|j| self.r[j].value() >= self.delta_chain[j].value()),
            _ => false,
        }
    }
}

/// Evaluate every formula whose hypotheses hold for `(m, p, r)`.
pub fn predict(m: usize, p: &ExponentVector, r: &ExponentVector) -> Result<ExponentReport> {
    if m == 0 {
        return Err(Error::Hypothesis("m >= 1 required".into()));
    }
    p.expect_arity(m)?;
    r.expect_arity(m)?;
    let h = p.harmonic_sum();
    let mut report = ExponentReport {
        m,
        p: p.clone(),
        r: r.clone(),
        harmonic_sum: h,
        rho_hl: None,
        m_less_2: IndexSet::default(),
        m_less_hl: None,
        classical: None,
        s_case1: None,
        case1_lower_bound: None,
        s_case2: None,
        s_alt: None,
        s_archiv_a: None,
        s_archiv_b: None,
        s_linear: None,
        delta_chain: Vec::new(),
        per_index_delta_exponents: Vec::new(),
        flags: RegimeFlags::default(),
    };

    if m == 1 {
        if p[0].value() >= 1.0 {
            report.s_linear = Some(linear_exponent(r[0], p[0])?);
            report.flags.linear_applies = true;
        }
        finish(&mut report);
        return Ok(report);
    }

    report.classical = Some(classical_exponents(m, p)?);

    let unified = unified_exponent(m, p, r)?;
    report.rho_hl = unified.rho_hl;
    report.m_less_2 = unified.m_less_2;
    report.m_less_hl = unified.m_less_hl;
    report.s_case1 = unified.s_case1;
    report.case1_lower_bound = unified.case1_lower_bound;
    report.s_case2 = unified.s_case2;
    report.flags.case1_applies = unified.s_case1.is_some();
    report.flags.case2_applies = unified.s_case2.is_some();
    report.flags.case1_optimal = unified.case1_optimal;
    report.flags.case2_optimal = unified.case2_optimal;

    if h <= 0.5 + BOUNDARY_TOL {
        report.flags.subcritical = ghl_admissible(r, p)?;
        if let Ok(s) = alt_exponent(m, p, r) {
            report.s_alt = Some(s);
            report.flags.alt_applies = true;
        }
    }

    if r.iter().all(|rj| *rj == r[0]) {
        let a = archiv_exponent(m, r[0], p)?;
        report.s_archiv_a = a.s_a;
        report.s_archiv_b = a.s_b;
    }

    if delta_regime(p) {
        report.delta_chain = delta_chain(p)?;
        report.per_index_delta_exponents = anisotropic_exponents(p, r)?;
        report.flags.delta_applies = true;
    }

    finish(&mut report);
    Ok(report)
}

fn finish(report: &mut ExponentReport) {
    report.flags.optimality_open = report.prediction().is_some_and(|p| !p.optimal);
}
