use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Family, NormMethod};
use super::fit::{loglog_fit, FitResult};
use crate::error::{Error, Result};
use crate::forms::{diagonal_form, ksz_random_form, product_extension, row_form, MultilinearForm};
use crate::norm::{
    alternating_ascent, analytic_norm, brute_force_norm_with_budget, paper_bound_norm, AscentOptions, NormEstimate,
    NormKind,
};
use crate::rng::derive_seed;
use crate::tensor::mixed_norm_value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub lhs: f64,
    pub norm: f64,
    pub norm_kind: NormKind,
    pub ratio: f64,
    pub draws_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub config: ExperimentConfig,
    pub rows: Vec<GrowthRow>,
}

impl GrowthSeries {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Fit and prediction, written alongside the CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub fit: FitResult,
}

pub fn run_growth(config: &ExperimentConfig) -> Result<GrowthSeries> {
    config.validate()?;
    let rows = config
        .n_values
        .par_iter()
        .map(|&n| growth_row(config, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries { config: config.clone(), rows })
}

/// Run the series and fit it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(GrowthSeries, ExperimentReport)> {
    let series = run_growth(config)?;
    let fit = loglog_fit(&series)?;
    let report = ExperimentReport { config: config.clone(), fit };
    Ok((series, report))
}

fn growth_row(cfg: &ExperimentConfig, n: usize) -> Result<GrowthRow> {
    let random = matches!(cfg.family, Family::Ksz | Family::ProductExtension);
    // Keep the draw with the largest norm, i.e. the smallest ratio. The norm
    // of a random-sign form depends on the draw only through the brute and
    // ascent estimators.
    let draws = if random && matches!(cfg.norm_method, NormMethod::Brute | NormMethod::Ascent) {
        cfg.draws
    } else {
        1
    };
    let mut best: Option<(f64, NormEstimate)> = None;
    for d in 0..draws {
        let form = family_member(cfg, n, d)?;
        let lhs = mixed_norm_value(form.coefficients(), &cfg.r)?;
        let est = estimate(cfg, &form, n, d)?;
        if best.as_ref().is_none_or(|(_, b)| est.value > b.value) {
            best = Some((lhs, est));
        }
    }
    let (lhs, est) = best.expect("draws >= 1");
    if !(est.value > 0.0) {
        return Err(Error::Incompatible(format!("norm vanished at n = {n}")));
    }
    Ok(GrowthRow { n, lhs, norm: est.value, norm_kind: est.kind, ratio: lhs / est.value, draws_used: draws })
}

/// Member `draw` of the family at size `n`; the random-sign families draw
/// their signs from the stream `(seed, n, draw, 0)`.
pub fn family_member(cfg: &ExperimentConfig, n: usize, draw: usize) -> Result<MultilinearForm> {
    let form_seed = || derive_seed(cfg.seed, &[n as u64, draw as u64, 0]);
    match cfg.family {
        Family::Ksz => Ok(ksz_random_form(cfg.m, n, &cfg.p, form_seed())?.0),
        Family::Diagonal => diagonal_form(cfg.m, n, &cfg.p),
        Family::Row => row_form(n, n, &cfg.p),
        Family::ProductExtension => {
            let k = cfg.base_arity.expect("validated");
            let base_p = crate::exponent::ExponentVector::new(cfg.p[..k].to_vec())?;
            let (a, _) = ksz_random_form(k, n, &base_p, form_seed())?;
            product_extension(&a, cfg.m, &cfg.p[k..], n)
        }
        Family::CustomFile => {
            let template = cfg.path_template.as_deref().expect("validated");
            let path = template.replace("{n}", &n.to_string());
            let form = MultilinearForm::read(std::path::Path::new(&path))?;
            if form.p() != &cfg.p {
                return Err(Error::Incompatible(format!("{path}: p = {} but config has {}", form.p(), cfg.p)));
            }
            Ok(form)
        }
    }
}

fn estimate(cfg: &ExperimentConfig, form: &MultilinearForm, n: usize, draw: usize) -> Result<NormEstimate> {
    let absent = || Error::Incompatible(format!("no closed-form norm for {:?} forms", form.kind()));
    match cfg.norm_method {
        NormMethod::Brute => brute_force_norm_with_budget(form, cfg.brute_budget),
        NormMethod::Ascent => {
            let opts = AscentOptions {
                restarts: cfg.restarts,
                seed: derive_seed(cfg.seed, &[n as u64, draw as u64, 1]),
                tol: cfg.tol,
                max_iters: cfg.max_iters,
            };
            alternating_ascent(form, &opts)
        }
        NormMethod::Analytic => analytic_norm(form).ok_or_else(absent),
        NormMethod::PaperBound => paper_bound_norm(form).ok_or_else(absent),
    }
}
