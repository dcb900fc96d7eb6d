use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::copula::{CopulaFamily, Estimator, DEFAULT_N_BOOT};
use crate::dists::DistFamily;
use crate::error::{Error, Result};
use crate::tsmodel::ModelSpec;

use super::data::{Calendar, CsvSchema};

/// Pipeline configuration, read from TOML. Relative paths are resolved
/// against the directory of the configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Master seed; every random stream in the run derives from it.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    pub assets: Vec<AssetConfig>,
    #[serde(default)]
    pub diagnostics: DiagnosticsConfig,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub copula: CopulaConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssetConfig {
    pub name: String,
    pub path: PathBuf,
    #[serde(default = "default_date_column")]
    pub date_column: String,
    #[serde(default = "default_price_column")]
    pub price_column: String,
    #[serde(default)]
    pub calendar: Calendar,
    #[serde(default = "default_date_format")]
    pub date_format: String,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
}

impl AssetConfig {
    /// Default column names and ISO dates.
    pub fn new(name: impl Into<String>, path: impl Into<PathBuf>) -> Self {
        Self {
            name: name.into(),
            path: path.into(),
            date_column: default_date_column(),
            price_column: default_price_column(),
            calendar: Calendar::default(),
            date_format: default_date_format(),
            delimiter: default_delimiter(),
        }
    }

    pub fn schema(&self) -> CsvSchema {
        CsvSchema {
            date_column: self.date_column.clone(),
            price_column: self.price_column.clone(),
            calendar: self.calendar,
            date_format: self.date_format.clone(),
            delimiter: self.delimiter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiagnosticsConfig {
    /// Ljung–Box lags for returns, squared returns and residual gates.
    pub lags: Vec<usize>,
    /// Significance level of the residual gates in model selection.
    pub gate_level: f64,
    /// ADF augmentation lags; `None` uses ⌊(T−1)^{1/3}⌋.
    pub adf_lags: Option<usize>,
    /// Largest lag in the ACF plot data.
    pub acf_max_lag: usize,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self { lags: vec![5, 10], gate_level: 0.05, adf_lags: None, acf_max_lag: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    /// Candidate ARMA orders (p, q).
    pub arma: Vec<[usize; 2]>,
    /// Candidate GARCH orders (k, l): k GARCH lags, l ARCH lags.
    pub garch: Vec<[usize; 2]>,
    /// Whether to try plain and/or fractionally integrated mean equations.
    pub fractional: Vec<bool>,
    pub distributions: Vec<String>,
    /// Fit FARIMA(1,d,1)-GARCH(1,1) per asset for the long-memory table.
    pub long_memory: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            arma: vec![[0, 0], [1, 0], [0, 1], [1, 1]],
            garch: vec![[1, 1]],
            fractional: vec![false],
            distributions: ["normal", "student_t", "ged", "sghyd"].map(String::from).to_vec(),
            long_memory: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CopulaConfig {
    pub families: Vec<String>,
    /// Estimator used for the reported fit and inside the bootstrap.
    pub estimator: String,
    pub n_boot: usize,
    /// Tail scaling factors; empty means {⌊T^0.4⌋, ⌊√T⌋, ⌊T^0.6⌋}.
    pub k_grid: Vec<usize>,
    /// Permutations for the independence test.
    pub n_perm: usize,
}

impl Default for CopulaConfig {
    fn default() -> Self {
        Self {
            families: CopulaFamily::ALL.iter().map(|f| f.name().to_string()).collect(),
            estimator: Estimator::InverseTau.name().into(),
            n_boot: DEFAULT_N_BOOT,
            k_grid: Vec::new(),
            n_perm: 999,
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("report")
}
fn default_date_column() -> String {
    "date".into()
}
fn default_price_column() -> String {
    "price".into()
}
fn default_date_format() -> String {
    "%Y-%m-%d".into()
}
fn default_delimiter() -> char {
    ','
}

impl Config {
    /// Default settings for the given assets.
    pub fn with_assets(assets: Vec<AssetConfig>) -> Self {
        Self {
            seed: 0,
            output_dir: default_output_dir(),
            assets,
            diagnostics: DiagnosticsConfig::default(),
            model: ModelConfig::default(),
            copula: CopulaConfig::default(),
        }
    }

    /// Parse and validate; relative paths are joined onto `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for a in &mut cfg.assets {
            if a.path.is_relative() {
                a.path = base_dir.join(&a.path);
            }
        }
        if cfg.output_dir.is_relative() {
            cfg.output_dir = base_dir.join(&cfg.output_dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml_str(&text, base)
    }

    /// Check everything that can be checked before touching data.
    pub fn validate(&self) -> Result<()> {
        if self.assets.len() < 2 {
            return Err(Error::Config(format!("need at least two assets, got {}", self.assets.len())));
        }
        self.validate_settings()
    }

    /// As [`Config::validate`] without the two-asset minimum, for
    /// single-asset steps.
    pub fn validate_settings(&self) -> Result<()> {
        for (i, a) in self.assets.iter().enumerate() {
            if a.name.is_empty() {
                return Err(Error::Config(format!("asset {} has an empty name", i + 1)));
            }
            if self.assets[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Config(format!("duplicate asset name '{}'", a.name)));
            }
            if !a.delimiter.is_ascii() {
                return Err(Error::Config(format!("asset '{}': delimiter must be ASCII", a.name)));
            }
        }
        self.copula_families()?;
        self.estimator()?;
        let specs = self.model_specs()?;
        if specs.is_empty() {
            return Err(Error::Config("model grid is empty".into()));
        }
        if self.diagnostics.lags.is_empty() || self.diagnostics.lags.contains(&0) {
            return Err(Error::Config("diagnostics.lags must be a non-empty list of positive lags".into()));
        }
        if !(self.diagnostics.gate_level > 0.0 && self.diagnostics.gate_level < 1.0) {
            return Err(Error::Config(format!(
                "diagnostics.gate_level must lie in (0, 1), got {}",
                self.diagnostics.gate_level
            )));
        }
        if self.copula.n_boot == 0 {
            return Err(Error::Config("copula.n_boot must be positive".into()));
        }
        if self.copula.k_grid.contains(&0) {
            return Err(Error::Config("copula.k_grid entries must be positive".into()));
        }
        Ok(())
    }

    pub fn copula_families(&self) -> Result<Vec<CopulaFamily>> {
        if self.copula.families.is_empty() {
            return Err(Error::Config("copula.families is empty".into()));
        }
        let mut out: Vec<CopulaFamily> = Vec::new();
        for name in &self.copula.families {
            let f = CopulaFamily::parse(name)?;
            if !out.contains(&f) {
                out.push(f);
            }
        }
        Ok(out)
    }

    pub fn estimator(&self) -> Result<Estimator> {
        Estimator::parse(&self.copula.estimator)
    }

    /// Cartesian product of the model grid, in a fixed order.
    pub fn model_specs(&self) -> Result<Vec<ModelSpec>> {
        let dists = self.model.distributions.iter().map(|d| DistFamily::parse(d)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for &frac in &self.model.fractional {
            for &[p, q] in &self.model.arma {
                for &[k, l] in &self.model.garch {
                    for &dist in &dists {
                        let spec = ModelSpec { p, q, k, l, fractional: frac, dist };
                        if !out.contains(&spec) {
                            out.push(spec);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
