//! Growth-rate experiments.
//!
//! For each `n` a family member `T_n` is built, and the ratio of its mixed
//! coefficient sum to its operator norm is recorded. A log-log fit of the
//! ratio against `n` is then compared with the predicted exponent.

mod config;
mod fit;
mod run;
mod suite;

pub use config::{CompareMode, ExperimentConfig, Family, NormMethod};
pub use fit::{compare, least_squares, loglog_fit, FitResult, LineFit, Verdict, R_SQUARED_GATE};
pub use run::{family_member, run_experiment, run_growth, ExperimentReport, GrowthRow, GrowthSeries};
pub use suite::{bundled_suite, SuiteEntry};
