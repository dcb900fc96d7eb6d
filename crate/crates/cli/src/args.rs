use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Margin filtering, copula fitting and tail-dependence estimation for
/// daily price series.
///
/// Every command writes its results to files under the output directory;
/// lines printed to standard output repeat values found in those files.
/// Logs go to standard error.
#[derive(Debug, Parser)]
#[command(name = "taildep", version, about, long_about = None)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Master seed for every random stream (overrides `seed` in the config).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the parallel stages.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// More log output on standard error (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    /// Only log errors.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    pub quiet: bool,
}

impl GlobalArgs {
    pub fn log_level(&self) -> log::LevelFilter {
        if self.quiet {
            return log::LevelFilter::Error;
        }
        match self.verbose {
            0 => log::LevelFilter::Warn,
            1 => log::LevelFilter::Info,
            2 => log::LevelFilter::Debug,
            _ => log::LevelFilter::Trace,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate price files and report the date alignment.
    Ingest(IngestArgs),
    /// Fit or select a margin model per asset.
    Fit(FitArgs),
    /// Write standardized residuals, PIT values and plot data per asset.
    Residuals(FitArgs),
    /// Fit copula families to residual pairs and run the GoF bootstrap.
    Copula(PairArgs),
    /// Estimate tail-dependence coefficients for residual pairs.
    Tail(PairArgs),
    /// Run the whole analysis and write every report table.
    Report(ReportArgs),
    /// Generate synthetic price files and a matching config.
    Simulate(SimulateArgs),
}

/// Where the price data come from. Flags override the corresponding
/// config keys.
#[derive(Debug, Args, Clone)]
pub struct DataArgs {
    /// TOML configuration file.
    #[arg(short, long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Asset as NAME=PATH (repeatable); replaces the configured assets.
    #[arg(long = "asset", value_name = "NAME=PATH")]
    pub assets: Vec<String>,
    /// Output directory (`output_dir`).
    #[arg(short, long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Date column name for every asset.
    #[arg(long)]
    pub date_column: Option<String>,
    /// Price column name for every asset.
    #[arg(long)]
    pub price_column: Option<String>,
    /// Calendar of the date column.
    #[arg(long, value_enum)]
    pub calendar: Option<CalendarArg>,
    /// chrono format of Gregorian dates.
    #[arg(long)]
    pub date_format: Option<String>,
    /// Field delimiter.
    #[arg(long)]
    pub delimiter: Option<char>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CalendarArg {
    Gregorian,
    Jalali,
}

/// Margin model grid and diagnostics (`[model]`, `[diagnostics]`).
#[derive(Debug, Args, Clone, Default)]
pub struct ModelArgs {
    /// Candidate ARMA orders as P,Q (repeatable).
    #[arg(long, value_name = "P,Q", value_parser = parse_order)]
    pub arma: Vec<[usize; 2]>,
    /// Candidate GARCH orders as K,L (repeatable).
    #[arg(long, value_name = "K,L", value_parser = parse_order)]
    pub garch: Vec<[usize; 2]>,
    /// Innovation laws: normal, student_t, ged, sghyd.
    #[arg(long = "dist", value_delimiter = ',')]
    pub distributions: Vec<String>,
    /// Mean equations to try: false (ARMA), true (FARIMA).
    #[arg(long, value_delimiter = ',')]
    pub fractional: Vec<bool>,
    /// Fit the FARIMA(1,d,1)-GARCH(1,1) long-memory table.
    #[arg(long)]
    pub long_memory: Option<bool>,
    /// Ljung–Box lags.
    #[arg(long, value_delimiter = ',')]
    pub lags: Vec<usize>,
    /// Residual gate level for model selection.
    #[arg(long)]
    pub gate_level: Option<f64>,
    /// ADF augmentation lags.
    #[arg(long)]
    pub adf_lags: Option<usize>,
    /// Largest lag in the ACF plot data.
    #[arg(long)]
    pub acf_max_lag: Option<usize>,
}

/// Copula settings (`[copula]`).
#[derive(Debug, Args, Clone, Default)]
pub struct CopulaArgs {
    /// Families to fit.
    #[arg(long = "family", value_delimiter = ',')]
    pub families: Vec<String>,
    /// inverse_tau or mle.
    #[arg(long)]
    pub estimator: Option<String>,
    /// Bootstrap replicates of the GoF test.
    #[arg(long)]
    pub n_boot: Option<usize>,
    /// Tail scaling factors.
    #[arg(short, long = "k", value_delimiter = ',')]
    pub k_grid: Vec<usize>,
    /// Permutations of the independence test.
    #[arg(long)]
    pub n_perm: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[command(flatten)]
    pub data: DataArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Only this asset.
    #[arg(long, value_name = "NAME")]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub copula: CopulaArgs,
    /// Only this pair, as A,B.
    #[arg(long, value_name = "A,B")]
    pub pair: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub copula: CopulaArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimCopula {
    Independent,
    Gaussian,
    StudentT,
    Clayton,
    Gumbel,
    Frank,
    Joe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimInnovation {
    Normal,
    StudentT,
    Ged,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Directory for the price files and `config.toml`.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    /// Asset names; their count sets the panel width.
    #[arg(long, value_delimiter = ',', default_value = "asset1,asset2,asset3")]
    pub names: Vec<String>,
    /// Returns per asset.
    #[arg(short = 'T', long = "length", default_value_t = 1000)]
    pub t: usize,
    /// Dependence of the innovations; families other than independent and
    /// gaussian need exactly two assets.
    #[arg(long, value_enum, default_value = "gaussian")]
    pub copula: SimCopula,
    /// Correlation of the gaussian and student_t copulas.
    #[arg(long, default_value_t = 0.3)]
    pub rho: f64,
    /// Degrees of freedom of the student_t copula.
    #[arg(long, default_value_t = 4.0)]
    pub copula_nu: f64,
    /// Parameter of the Archimedean copulas.
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    /// Innovation law of the margins.
    #[arg(long, value_enum, default_value = "student-t")]
    pub innovation: SimInnovation,
    /// Shape of the innovation law (ν for student_t, shape for ged).
    #[arg(long, default_value_t = 6.0)]
    pub shape: f64,
    /// AR(1) coefficient.
    #[arg(long, default_value_t = 0.05)]
    pub phi: f64,
    /// GARCH intercept.
    #[arg(long, default_value_t = 2e-6)]
    pub gamma: f64,
    /// ARCH coefficient.
    #[arg(long, default_value_t = 0.08)]
    pub alpha: f64,
    /// GARCH coefficient.
    #[arg(long, default_value_t = 0.9)]
    pub beta: f64,
    /// First date (ISO-8601); prices fall on weekdays from here on.
    #[arg(long, default_value = "2010-01-04")]
    pub start: String,
}

fn parse_order(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated orders, got '{s}'"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("'{x}' is not a non-negative integer"));
    Ok([p(a)?, p(b)?])
}
