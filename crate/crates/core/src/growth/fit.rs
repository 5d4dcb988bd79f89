use serde::{Deserialize, Serialize};

use super::config::{CompareMode, NormMethod};
use super::run::GrowthSeries;
use crate::error::{Error, Result};
use crate::exponent::{predict, ExponentReport, Prediction};
use crate::scalar::Neumaier;

/// Fits with a smaller coefficient of determination are inconclusive.
pub const R_SQUARED_GATE: f64 = 0.9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
    pub predicted: ExponentReport,
    /// Smallest applicable predicted exponent, if any formula applies.
    pub prediction: Option<Prediction>,
    pub mode: CompareMode,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// The norms were closed-form growth rates, not computed norms.
    pub bound_relative: bool,
    /// Match-mode evidence against an exponent whose optimality is unknown.
    pub optimality_open: bool,
}

fn sum(it: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    it.for_each(|v| acc.add(v));
    acc.total()
}

/// Ordinary least squares `y ≈ slope · x + intercept`.
///
/// A series with no spread in `y` that the line reproduces exactly has
/// `r² = 1`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", xs.len().min(ys.len()))));
    }
    let k = xs.len() as f64;
    let mx = sum(xs.iter().copied()) / k;
    let my = sum(ys.iter().copied()) / k;
    let sxx = sum(xs.iter().map(|x| (x - mx) * (x - mx)));
    if !(sxx > 0.0) {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let sxy = sum(xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)));
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot = sum(ys.iter().map(|y| (y - my) * (y - my)));
    let ss_res = sum(xs.iter().zip(ys).map(|(x, y)| {
        let e = y - (slope * x + intercept);
        e * e
    }));
    let r_squared = if ss_tot < 1e-20 {
        if ss_res < 1e-20 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(LineFit { slope, intercept, r_squared })
}

/// Fit `log ratio` against `log n` and judge the slope against the
/// smallest predicted exponent.
pub fn loglog_fit(series: &GrowthSeries) -> Result<FitResult> {
    if let Some(row) = series.rows.iter().find(|r| !(r.ratio > 0.0) || !r.ratio.is_finite()) {
        return Err(Error::Fit(format!("ratio {} at n = {} is not positive", row.ratio, row.n)));
    }
    let xs: Vec<f64> = series.rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = series.rows.iter().map(|r| r.ratio.ln()).collect();
    let line = least_squares(&xs, &ys)?;
    let cfg = &series.config;
    let predicted = predict(cfg.m, &cfg.p, &cfg.r)?;
    let prediction = predicted.prediction();
    let optimality_open = cfg.mode == CompareMode::Match && prediction.as_ref().is_some_and(|p| !p.optimal);
    let mut fit = FitResult {
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        points: xs.len(),
        predicted,
        prediction,
        mode: cfg.mode,
        tolerance: cfg.fit_tolerance,
        verdict: Verdict::Inconclusive,
        bound_relative: cfg.norm_method == NormMethod::PaperBound,
        optimality_open,
    };
    fit.verdict = compare(&fit, cfg.mode);
    Ok(fit)
}

pub fn compare(fit: &FitResult, mode: CompareMode) -> Verdict {
    let Some(pred) = &fit.prediction else {
        return Verdict::Inconclusive;
    };
    if !(fit.r_squared >= R_SQUARED_GATE) {
        return Verdict::Inconclusive;
    }
    let ok = match mode {
        CompareMode::Match => (fit.slope - pred.s).abs() <= fit.tolerance,
        CompareMode::UpperBound => fit.slope <= pred.s + fit.tolerance,
    };
    if ok {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    }
}
