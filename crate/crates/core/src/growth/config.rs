use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::norm::DEFAULT_BRUTE_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ksz,
    Diagonal,
    Row,
    /// Random-sign base form of arity `base_arity`, extended to arity `m`.
    ProductExtension,
    /// Forms read from JSON files named by `path_template`.
    #[serde(rename = "custom-file", alias = "custom_file")]
    CustomFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    Brute,
    Ascent,
    Analytic,
    PaperBound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    /// `|slope − s| ≤ tolerance`.
    Match,
    /// `slope ≤ s + tolerance`.
    #[default]
    UpperBound,
}

impl CompareMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CompareMode::Match => "match",
            CompareMode::UpperBound => "upper_bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub m: usize,
    pub p: ExponentVector,
    pub r: ExponentVector,
    pub n_values: Vec<usize>,
    pub norm_method: NormMethod,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    /// Random-sign draws per `n`; the draw with the largest norm is kept.
    #[serde(default = "default_draws")]
    pub draws: usize,
    /// Arity `k` of the base form for `product_extension`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_arity: Option<usize>,
    /// Path with `{n}` substituted, for `custom-file`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_template: Option<String>,
    #[serde(default)]
    pub mode: CompareMode,
    #[serde(default = "default_fit_tolerance")]
    pub fit_tolerance: f64,
    #[serde(default = "default_budget")]
    pub brute_budget: u64,
}

fn default_restarts() -> usize {
    16
}
fn default_tol() -> f64 {
    1e-10
}
fn default_max_iters() -> usize {
    200
}
fn default_draws() -> usize {
    1
}
fn default_fit_tolerance() -> f64 {
    0.15
}
fn default_budget() -> u64 {
    DEFAULT_BRUTE_BUDGET
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(
        family: Family,
        m: usize,
        p: ExponentVector,
        r: ExponentVector,
        n_values: Vec<usize>,
        norm_method: NormMethod,
    ) -> Self {
        ExperimentConfig {
            family,
            m,
            p,
            r,
            n_values,
            norm_method,
            restarts: default_restarts(),
            seed: 0,
            tol: default_tol(),
            max_iters: default_max_iters(),
            draws: default_draws(),
            base_arity: None,
            path_template: None,
            mode: CompareMode::default(),
            fit_tolerance: default_fit_tolerance(),
            brute_budget: default_budget(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Incompatible(msg));
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        self.p.expect_arity(self.m)?;
        self.r.expect_arity(self.m)?;
        if let Some(pj) = self.p.iter().find(|pj| pj.value() < 1.0) {
            return Err(Error::ExponentBelowOne(pj.value()));
        }
        if self.n_values.len() < 3 {
            return bad(format!("need at least 3 values of n, got {}", self.n_values.len()));
        }
        if self.n_values[0] == 0 || self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return bad("n_values must be positive and strictly increasing".into());
        }
        if self.draws == 0 {
            return bad("draws must be at least 1".into());
        }
        if !(self.tol > 0.0) || !(self.fit_tolerance >= 0.0) {
            return bad("tol must be positive and fit_tolerance nonnegative".into());
        }
        match self.family {
            Family::Row if self.m != 2 => return bad("row family is bilinear (m = 2)".into()),
            Family::ProductExtension => match self.base_arity {
                Some(k) if (1..=self.m).contains(&k) => {}
                _ => return bad("product_extension needs base_arity in 1..=m".into()),
            },
            Family::CustomFile if self.path_template.is_none() => {
                return bad("custom-file family needs path_template".into())
            }
            _ => {}
        }
        match self.norm_method {
            NormMethod::Brute if self.p.iter().any(|pj| !pj.is_infinite()) => {
                bad("brute norms need every p_j = inf".into())
            }
            NormMethod::Analytic if !matches!(self.family, Family::Diagonal | Family::Row) => {
                bad("analytic norms exist only for diagonal and row families".into())
            }
            NormMethod::PaperBound if self.family == Family::CustomFile => {
                bad("paper_bound has no closed form for custom forms".into())
            }
            _ => Ok(()),
        }
    }
}
