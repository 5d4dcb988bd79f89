//! `mixed-hl` command-line interface.
//!
//! Exit codes: 0 success, 1 domain error (hypothesis violated, bad file,
//! budget exceeded), 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixed_hl::exponent::{predict, ExponentReport, ExponentVector};
use mixed_hl::forms::{diagonal_form, ksz_random_form, product_extension, row_form, MultilinearForm};
use mixed_hl::growth::{self, bundled_suite, run_experiment, ExperimentConfig, ExperimentReport};
use mixed_hl::norm::{
    alternating_ascent, analytic_norm, brute_force_norm_with_budget, paper_bound_norm, AscentOptions,
    DEFAULT_BRUTE_BUDGET,
};
use mixed_hl::tensor::{holder_fuzz, holder_fuzz_with_splitting, mixed_norm, Tensor};
use mixed_hl::Error;

#[derive(Parser)]
#[command(name = "mixed-hl", version, about = "Mixed-exponent Hardy-Littlewood laboratory")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every exponent that applies to (m, p, r).
    Exponent(ExponentArgs),
    /// Mixed ℓ_r norm of a tensor or form file.
    MixedNorm(MixedNormArgs),
    /// Operator norm of a form file.
    Norm(NormArgs),
    /// Write a form to JSON.
    Generate(GenerateArgs),
    /// Growth experiment: CSV rows plus a JSON fit report.
    Experiment(ExperimentArgs),
    /// Random checks of the mixed Hölder inequality.
    VerifyHolder(VerifyHolderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct ExponentArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p: ExponentVector,
    #[arg(long)]
    r: ExponentVector,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct MixedNormArgs {
    /// Tensor JSON (`{"shape", "data"}`); form files are accepted too.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r: ExponentVector,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Ascent,
    Analytic,
    PaperBound,
}

impl From<Method> for growth::NormMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Brute => growth::NormMethod::Brute,
            Method::Ascent => growth::NormMethod::Ascent,
            Method::Analytic => growth::NormMethod::Analytic,
            Method::PaperBound => growth::NormMethod::PaperBound,
        }
    }
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iters: usize,
    /// Maximum number of enumerated sign patterns for `brute`.
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Ksz,
    Diagonal,
    Row,
    ProductExtension,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Second dimension for `row` (default: n).
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    p: ExponentVector,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arity of the random-sign base form for `product-extension`.
    #[arg(long)]
    base_arity: Option<usize>,
    /// Output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpFamily {
    Ksz,
    Diagonal,
    Row,
    ProductExtension,
    CustomFile,
}

impl From<ExpFamily> for growth::Family {
    fn from(f: ExpFamily) -> Self {
        match f {
            ExpFamily::Ksz => growth::Family::Ksz,
            ExpFamily::Diagonal => growth::Family::Diagonal,
            ExpFamily::Row => growth::Family::Row,
            ExpFamily::ProductExtension => growth::Family::ProductExtension,
            ExpFamily::CustomFile => growth::Family::CustomFile,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Match,
    UpperBound,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment config; replaces the inline flags below.
    #[arg(long, conflicts_with = "suite")]
    config: Option<PathBuf>,
    /// Run the bundled experiment suite into `--out-dir`.
    #[arg(long, requires = "out_dir")]
    suite: bool,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// CSV output path.
    #[arg(long, required_unless_present = "suite")]
    out: Option<PathBuf>,
    /// JSON report path (default: the CSV path with a .json extension).
    #[arg(long)]
    report: Option<PathBuf>,

    #[arg(long, value_enum, required_unless_present_any = ["config", "suite"])]
    family: Option<ExpFamily>,
    #[arg(long, required_unless_present_any = ["config", "suite"])]
    m: Option<usize>,
    #[arg(long, required_unless_present_any = ["config", "suite"])]
    p: Option<ExponentVector>,
    #[arg(long, required_unless_present_any = ["config", "suite"])]
    r: Option<ExponentVector>,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',', required_unless_present_any = ["config", "suite"])]
    n_values: Option<Vec<usize>>,
    #[arg(long, value_enum, required_unless_present_any = ["config", "suite"])]
    method: Option<Method>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    base_arity: Option<usize>,
    /// Form file path for `custom-file`; the letter n in braces is replaced by each dimension.
    #[arg(long)]
    path_template: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    fit_tolerance: Option<f64>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct VerifyHolderArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Largest axis length; shapes are drawn per trial.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Number of factors.
    #[arg(long = "N", default_value_t = 2)]
    factors: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed summation exponent; requires `--q`.
    #[arg(long, requires = "q")]
    r: Option<ExponentVector>,
    /// Fixed splitting, one exponent vector per factor separated by `;`.
    #[arg(long, requires = "r")]
    q: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::InvalidSplitting { .. }) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Exponent(a) => cmd_exponent(a),
        Command::MixedNorm(a) => cmd_mixed_norm(a),
        Command::Norm(a) => cmd_norm(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::VerifyHolder(a) => cmd_verify_holder(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::from(Error::from(e)))
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn render_report(rep: &ExponentReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<28} {v}");
    };
    line("m", rep.m.to_string());
    line("p", rep.p.to_string());
    line("r", rep.r.to_string());
    line("harmonic_sum", rep.harmonic_sum.to_string());
    line("rho_hl", rep.rho_hl.map_or("-".into(), |e| e.value().to_string()));
    line("m_less_2", format!("{{{}}}", join(rep.m_less_2.indices())));
    line("m_less_hl", rep.m_less_hl.as_ref().map_or("-".into(), |s| format!("{{{}}}", join(s.indices()))));
    if let Some(c) = &rep.classical {
        line("bh", c.bh.to_string());
        line("hlpp", opt(c.hlpp));
        line("dsp", opt(c.dsp));
    }
    line("s_case1", opt(rep.s_case1));
    line("case1_lower_bound", opt(rep.case1_lower_bound));
    line("s_case2", opt(rep.s_case2));
    line("s_alt", opt(rep.s_alt));
    line("s_archiv_a", opt(rep.s_archiv_a));
    line("s_archiv_b", opt(rep.s_archiv_b));
    line("s_linear", opt(rep.s_linear));
    if rep.flags.delta_applies {
        let chain: Vec<f64> = rep.delta_chain.iter().map(|d| d.value()).collect();
        line("delta_chain", join(&chain));
        line("per_index_delta_exponents", join(&rep.per_index_delta_exponents));
    } else {
        line("delta_chain", "-".into());
        line("per_index_delta_exponents", "-".into());
    }
    let f = &rep.flags;
    for (k, v) in [
        ("case1_applies", f.case1_applies),
        ("case2_applies", f.case2_applies),
        ("delta_applies", f.delta_applies),
        ("subcritical", f.subcritical),
        ("alt_applies", f.alt_applies),
        ("linear_applies", f.linear_applies),
        ("case1_optimal", f.case1_optimal),
        ("case2_optimal", f.case2_optimal),
        ("optimality_open", f.optimality_open),
    ] {
        line(k, v.to_string());
    }
    match rep.prediction() {
        Some(pr) => line("prediction", format!("{} ({}{})", pr.s, pr.source, if pr.optimal { ", optimal" } else { "" })),
        None => line("prediction", "-".into()),
    }
    out
}

fn cmd_exponent(a: ExponentArgs) -> CliResult {
    let rep = predict(a.m, &a.p, &a.r)?;
    match a.format {
        Format::Table => print!("{}", render_report(&rep)),
        Format::Json => println!("{}", json(&rep)?),
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn cmd_mixed_norm(a: MixedNormArgs) -> CliResult {
    let t = Tensor::from_json(&read_text(&a.input)?)?;
    let res = mixed_norm(&t, &a.r)?;
    match a.format {
        Format::Table => println!("{}", res.value),
        Format::Json => println!("{}", json(&res)?),
    }
    Ok(())
}

fn cmd_norm(a: NormArgs) -> CliResult {
    let form = MultilinearForm::from_json(&read_text(&a.input)?)?;
    let absent = || Failure {
        code: 1,
        message: format!("no closed-form norm for {:?} forms", form.kind()),
    };
    let est = match a.method {
        Method::Brute => brute_force_norm_with_budget(&form, a.budget)?,
        Method::Ascent => {
            let opts = AscentOptions { restarts: a.restarts, seed: a.seed, tol: a.tol, max_iters: a.max_iters };
            alternating_ascent(&form, &opts)?
        }
        Method::Analytic => analytic_norm(&form).ok_or_else(absent)?,
        Method::PaperBound => paper_bound_norm(&form).ok_or_else(absent)?,
    };
    match a.format {
        Format::Table => {
            println!("value          {}", est.value);
            println!("kind           {}", est.kind);
            println!("restarts_used  {}", est.restarts_used);
            println!("converged      {}", est.converged);
        }
        Format::Json => println!("{}", json(&est)?),
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs) -> CliResult {
    let form = match a.family {
        GenFamily::Ksz => ksz_random_form(a.m, a.n, &a.p, a.seed)?.0,
        GenFamily::Diagonal => diagonal_form(a.m, a.n, &a.p)?,
        GenFamily::Row => row_form(a.n, a.n2.unwrap_or(a.n), &a.p)?,
        GenFamily::ProductExtension => {
            let k = a.base_arity.ok_or_else(|| usage("product-extension needs --base-arity"))?;
            if k == 0 || k > a.m {
                return Err(usage(format!("--base-arity must lie in 1..={}", a.m)));
            }
            a.p.expect_arity(a.m)?;
            let base_p = ExponentVector::new(a.p[..k].to_vec())?;
            let (base, _) = ksz_random_form(k, a.n, &base_p, a.seed)?;
            product_extension(&base, a.m, &a.p[k..], a.n)?
        }
    };
    let text = form.to_json()?;
    match a.out {
        Some(path) => fs::write(&path, text).map_err(|e| io_failure(&path, e))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn inline_config(a: &ExperimentArgs) -> Result<ExperimentConfig, Failure> {
    let missing = |f: &str| usage(format!("--{f} is required without --config"));
    let mut cfg = ExperimentConfig::new(
        a.family.ok_or_else(|| missing("family"))?.into(),
        a.m.ok_or_else(|| missing("m"))?,
        a.p.clone().ok_or_else(|| missing("p"))?,
        a.r.clone().ok_or_else(|| missing("r"))?,
        a.n_values.clone().ok_or_else(|| missing("n-values"))?,
        a.method.ok_or_else(|| missing("method"))?.into(),
    );
    if let Some(v) = a.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = a.tol {
        cfg.tol = v;
    }
    if let Some(v) = a.max_iters {
        cfg.max_iters = v;
    }
    if let Some(v) = a.draws {
        cfg.draws = v;
    }
    cfg.base_arity = a.base_arity;
    cfg.path_template = a.path_template.clone();
    if let Some(v) = a.mode {
        cfg.mode = match v {
            Mode::Match => growth::CompareMode::Match,
            Mode::UpperBound => growth::CompareMode::UpperBound,
        };
    }
    if let Some(v) = a.fit_tolerance {
        cfg.fit_tolerance = v;
    }
    if let Some(v) = a.budget {
        cfg.brute_budget = v;
    }
    Ok(cfg)
}

fn verdict_line(name: &str, report: &ExperimentReport) -> String {
    let fit = &report.fit;
    let predicted = fit
        .prediction
        .as_ref()
        .map_or_else(|| "none".to_string(), |p| format!("{} ({})", p.s, p.source));
    let mut line = format!(
        "{name}: {} slope={:.4} r2={:.4} predicted={predicted} mode={} tolerance={}",
        fit.verdict.as_str(),
        fit.slope,
        fit.r_squared,
        fit.mode.as_str(),
        fit.tolerance
    );
    if fit.bound_relative {
        line.push_str(" [bound-relative]");
    }
    if fit.optimality_open {
        line.push_str(" [optimality_open]");
    }
    line
}

fn write_outputs(cfg: &ExperimentConfig, csv_path: &Path, json_path: &Path, name: &str) -> CliResult {
    let (series, report) = run_experiment(cfg)?;
    fs::write(csv_path, series.to_csv()?).map_err(|e| io_failure(csv_path, e))?;
    fs::write(json_path, json(&report)? + "\n").map_err(|e| io_failure(json_path, e))?;
    println!("{}", verdict_line(name, &report));
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> CliResult {
    if a.suite {
        let dir = a.out_dir.as_ref().expect("clap enforces --out-dir");
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for entry in bundled_suite() {
            let csv = dir.join(format!("{}.csv", entry.name));
            let json = dir.join(format!("{}.json", entry.name));
            write_outputs(&entry.config, &csv, &json, &entry.name)?;
        }
        return Ok(());
    }
    let cfg = match &a.config {
        Some(path) => ExperimentConfig::from_json(&read_text(path)?)?,
        None => inline_config(&a)?,
    };
    let out = a.out.as_ref().ok_or_else(|| usage("--out is required"))?;
    let report = a.report.clone().unwrap_or_else(|| out.with_extension("json"));
    write_outputs(&cfg, out, &report, "experiment")
}

fn cmd_verify_holder(a: VerifyHolderArgs) -> CliResult {
    let summary = match (&a.r, &a.q) {
        (Some(r), Some(q)) => {
            let splitting = q
                .split(';')
                .map(|s| s.trim().parse::<ExponentVector>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage(format!("--q: {e}")))?;
            if r.len() != a.m {
                return Err(usage(format!("--r has {} entries but --m is {}", r.len(), a.m)));
            }
            if let Some(bad) = splitting.iter().find(|qk| qk.len() != a.m) {
                return Err(usage(format!("--q vector {bad} does not have {} entries", a.m)));
            }
            holder_fuzz_with_splitting(r, &splitting, a.n, a.trials, a.seed)?
        }
        _ => {
            if a.m == 0 || a.n == 0 || a.factors == 0 {
                return Err(usage("--m, --n and --N must be positive"));
            }
            holder_fuzz(a.m, a.n, a.factors, a.trials, a.seed)?
        }
    };
    let worst = summary.worst_relative_slack.map_or_else(|| "-".to_string(), |w| format!("{w:.3e}"));
    println!("passed {}/{} worst_relative_slack {worst}", summary.passed, summary.trials);
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("{} violations", summary.trials - summary.passed) })
    }
}
