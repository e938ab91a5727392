//! Command-line front end: dataset ingestion, fitting, goodness-of-fit
//! comparison, property evaluation, simulation studies and plot-data
//! emission. Errors leave exit code 1 with a machine-readable JSON object
//! on stderr.

mod commands;
mod config;
mod ingest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Format;
use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Ingest(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Args(String),
    #[error(transparent)]
    Core(#[from] t2gwg::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Ingest(_) => "ingest",
            CliError::Config(_) => "config",
            CliError::Args(_) => "args",
            CliError::Core(_) => "compute",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "t2gwg",
    version,
    about = "Type-2 Gumbel Weibull-G distributions: fitting, goodness of fit, properties, simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON config file; explicit flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Family name: t2gwe, t2gwu or t2gwp
    #[arg(long)]
    family: Option<String>,
    /// Baseline name: exponential, uniform or pareto
    #[arg(long)]
    baseline: Option<String>,
    /// Seed for every stream the command uses
    #[arg(long)]
    seed: Option<u64>,
    /// Optimizer starts (first is the quantile seed, the rest are jitters)
    #[arg(long)]
    starts: Option<usize>,
    /// Objective-change tolerance of the optimizer
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration cap per optimizer start
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Output path (stdout when omitted; a directory for `curves`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json or csv
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the family to a dataset with one or more methods
    Fit {
        #[command(flatten)]
        common: Common,
        /// CSV dataset, one value per row
        #[arg(long)]
        data: Option<PathBuf>,
        /// Estimation methods (comma-separated): mle, ls, wls, mps, cvm, ad
        #[arg(long)]
        method: Vec<String>,
    },
    /// Goodness-of-fit report for fitted or supplied parameters
    Gof {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        method: Vec<String>,
        /// Inline parameters alpha,beta,psi... (skips fitting)
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<f64>>,
    },
    /// Fit several models by MLE and emit a comparison table sorted by AIC
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: Option<PathBuf>,
        /// Models (comma-separated): t2gwe, t2gwu, t2gwp, egt, wge, lgt, t2g, ewl
        #[arg(long)]
        models: Vec<String>,
    },
    /// Distributional properties of a parameterized family member
    Properties {
        #[command(flatten)]
        common: Common,
        /// Parameters alpha,beta,psi...
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<f64>>,
        /// Highest raw moment order to report
        #[arg(long)]
        moments: Option<u32>,
        /// Rényi entropy orders (comma-separated)
        #[arg(long, value_delimiter = ',')]
        renyi: Option<Vec<f64>>,
        /// MGF evaluation points (comma-separated)
        #[arg(long, value_delimiter = ',')]
        mgf_t: Option<Vec<f64>>,
        /// Quadrature relative tolerance
        #[arg(long)]
        quad_rel_tol: Option<f64>,
        /// Quadrature absolute tolerance
        #[arg(long)]
        quad_abs_tol: Option<f64>,
    },
    /// Monte Carlo bias/MSE study at a fixed truth
    Simulate {
        #[command(flatten)]
        common: Common,
        /// True parameters alpha,beta,psi...
        #[arg(long, value_delimiter = ',')]
        truth: Option<Vec<f64>>,
        /// Sample sizes (comma-separated)
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Replications per sample size
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        method: Vec<String>,
    },
    /// Emit ECDF, Kaplan-Meier, TTT, theoretical and histogram point series
    Curves {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: Option<PathBuf>,
        /// Inline parameters alpha,beta,psi... (skips fitting)
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<f64>>,
        /// Grid size for the theoretical curves
        #[arg(long)]
        points: Option<usize>,
    },
}

fn need_data(flag: Option<PathBuf>, cfg: &RunConfig) -> Result<PathBuf, CliError> {
    flag.or_else(|| cfg.data.clone())
        .ok_or_else(|| CliError::Args("--data is required".into()))
}

fn format_of(common: &Common, cfg: &RunConfig, default: Format) -> Result<Format, CliError> {
    match common.format.as_deref().or(cfg.format.as_deref()) {
        Some(s) => Format::parse(s),
        None => Ok(default),
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Fit { common, data, method } => {
            let cfg = RunConfig::load(common.config.as_deref(), "fit")?;
            commands::cmd_fit(&commands::FitOptions {
                data: need_data(data, &cfg)?,
                family: common.family.clone().or(cfg.family.clone()),
                baseline: common.baseline.clone().or(cfg.baseline.clone()),
                methods: if method.is_empty() {
                    cfg.methods.clone().unwrap_or_default()
                } else {
                    method
                },
                seed: common.seed.or(cfg.seed).unwrap_or(0),
                starts: common.starts.or(cfg.starts).unwrap_or(9),
                tol: common.tol.or(cfg.tol).unwrap_or(1e-10),
                max_iterations: common.max_iterations.or(cfg.max_iterations).unwrap_or(2000),
                out: common.out.clone().or(cfg.out.clone()),
                format: format_of(&common, &cfg, Format::Json)?,
            })
        }
        Command::Gof {
            common,
            data,
            method,
            params,
        } => {
            let cfg = RunConfig::load(common.config.as_deref(), "gof")?;
            commands::cmd_gof(&commands::GofOptions {
                data: need_data(data, &cfg)?,
                family: common.family.clone().or(cfg.family.clone()),
                baseline: common.baseline.clone().or(cfg.baseline.clone()),
                params: params.or(cfg.params.clone()),
                method: if method.is_empty() {
                    cfg.methods.clone().unwrap_or_default()
                } else {
                    method
                },
                seed: common.seed.or(cfg.seed).unwrap_or(0),
                starts: common.starts.or(cfg.starts).unwrap_or(9),
                tol: common.tol.or(cfg.tol).unwrap_or(1e-10),
                max_iterations: common.max_iterations.or(cfg.max_iterations).unwrap_or(2000),
                out: common.out.clone().or(cfg.out.clone()),
                format: format_of(&common, &cfg, Format::Json)?,
            })
        }
        Command::Compare { common, data, models } => {
            let cfg = RunConfig::load(common.config.as_deref(), "compare")?;
            commands::cmd_compare(&commands::CompareOptions {
                data: need_data(data, &cfg)?,
                models: if models.is_empty() {
                    cfg.models.clone().unwrap_or_default()
                } else {
                    models
                },
                seed: common.seed.or(cfg.seed).unwrap_or(0),
                starts: common.starts.or(cfg.starts).unwrap_or(9),
                tol: common.tol.or(cfg.tol).unwrap_or(1e-10),
                max_iterations: common.max_iterations.or(cfg.max_iterations).unwrap_or(2000),
                out: common.out.clone().or(cfg.out.clone()),
                format: format_of(&common, &cfg, Format::Csv)?,
            })
        }
        Command::Properties {
            common,
            params,
            moments,
            renyi,
            mgf_t,
            quad_rel_tol,
            quad_abs_tol,
        } => {
            let cfg = RunConfig::load(common.config.as_deref(), "properties")?;
            commands::cmd_properties(&commands::PropertiesOptions {
                family: common.family.clone().or(cfg.family.clone()),
                baseline: common.baseline.clone().or(cfg.baseline.clone()),
                params: params
                    .or(cfg.params.clone())
                    .ok_or_else(|| CliError::Args("--params is required".into()))?,
                moments: moments.or(cfg.moments).unwrap_or(4),
                renyi: renyi.or(cfg.renyi.clone()).unwrap_or_default(),
                mgf_t: mgf_t.or(cfg.mgf_t.clone()).unwrap_or_default(),
                quad_rel_tol: quad_rel_tol.or(cfg.quad_rel_tol).unwrap_or(1e-9),
                quad_abs_tol: quad_abs_tol.or(cfg.quad_abs_tol).unwrap_or(1e-12),
                out: common.out.clone().or(cfg.out.clone()),
            })
        }
        Command::Simulate {
            common,
            truth,
            sizes,
            reps,
            method,
        } => {
            let cfg = RunConfig::load(common.config.as_deref(), "simulate")?;
            commands::cmd_simulate(&commands::SimulateOptions {
                truth: truth.or(cfg.truth.clone()).unwrap_or(vec![2.5, 0.8, 1.3]),
                family: common.family.clone().or(cfg.family.clone()),
                baseline: common.baseline.clone().or(cfg.baseline.clone()),
                sizes: sizes.or(cfg.sizes.clone()).unwrap_or(vec![50, 100, 250, 500, 1000]),
                replications: reps.or(cfg.replications).unwrap_or(1000),
                methods: if method.is_empty() {
                    cfg.methods
                        .clone()
                        .unwrap_or_else(|| vec!["mle,ls,wls,mps,cvm,ad".to_string()])
                } else {
                    method
                },
                seed: common.seed.or(cfg.seed).unwrap_or(0),
                starts: common.starts.or(cfg.starts).unwrap_or(3),
                tol: common.tol.or(cfg.tol).unwrap_or(1e-10),
                max_iterations: common.max_iterations.or(cfg.max_iterations).unwrap_or(1500),
                out: common.out.clone().or(cfg.out.clone()),
                format: format_of(&common, &cfg, Format::Csv)?,
            })
        }
        Command::Curves {
            common,
            data,
            params,
            points,
        } => {
            let cfg = RunConfig::load(common.config.as_deref(), "curves")?;
            commands::cmd_curves(&commands::CurvesOptions {
                data: need_data(data, &cfg)?,
                family: common.family.clone().or(cfg.family.clone()),
                baseline: common.baseline.clone().or(cfg.baseline.clone()),
                params: params.or(cfg.params.clone()),
                seed: common.seed.or(cfg.seed).unwrap_or(0),
                starts: common.starts.or(cfg.starts).unwrap_or(9),
                tol: common.tol.or(cfg.tol).unwrap_or(1e-10),
                max_iterations: common.max_iterations.or(cfg.max_iterations).unwrap_or(2000),
                points: points.or(cfg.points).unwrap_or(200),
                out: common.out.clone().or(cfg.out.clone()).unwrap_or(PathBuf::from("curves")),
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
            eprintln!("{payload}");
            ExitCode::FAILURE
        }
    }
}
