use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::copula::{CopulaFamily, TailSource};
use crate::dists::{InnovationDist, Prepared};
use crate::error::{Error, Result};
use crate::stattests;

use super::data::JoinStats;
use super::select::CandidateRow;
use super::AssetModel;

/// Long-memory fit per asset (`table1_long_memory.csv`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongMemoryRow {
    pub asset: String,
    pub model: String,
    pub d: Option<f64>,
    pub std_error: Option<f64>,
    pub p_value: Option<f64>,
    pub error: Option<String>,
}

/// Estimates and standard errors of the selected margin models (`table2_model_params.csv`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRow {
    pub asset: String,
    pub model: String,
    pub parameter: String,
    pub estimate: f64,
    pub std_error: f64,
}

/// Rank correlations of standardized residuals (`table3_rank_correlations.csv`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankCorrelationRow {
    pub asset_a: String,
    pub asset_b: String,
    pub kendall: f64,
    pub spearman: f64,
    /// Permutation test of independence based on |τ̂|.
    pub independence_p: f64,
}

/// Copula fit and goodness of fit for one pair and family (`table4_copula_fits.csv`). The
/// first block is the configured estimator, which also drives the
/// bootstrap; the `mle_` block is reported alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopulaFitRow {
    pub asset_a: String,
    pub asset_b: String,
    pub family: CopulaFamily,
    pub estimator: String,
    pub theta: Option<f64>,
    /// Second parameter (ν of the t copula).
    pub theta2: Option<f64>,
    pub loglik: Option<f64>,
    pub aic: Option<f64>,
    pub bic: Option<f64>,
    pub gof_statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub n_bootstrap: Option<usize>,
    pub n_failed: Option<usize>,
    pub mle_theta: Option<f64>,
    pub mle_theta2: Option<f64>,
    pub mle_loglik: Option<f64>,
    pub mle_aic: Option<f64>,
    pub mle_bic: Option<f64>,
    pub error: Option<String>,
}

/// Families chosen for each pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopulaSelectionRow {
    pub asset_a: String,
    pub asset_b: String,
    pub selected_by_gof: Option<CopulaFamily>,
    pub selected_by_bic: Option<CopulaFamily>,
    pub t_vs_gaussian_p: Option<f64>,
}

/// Tail coefficients per pair (`table5_tail_coefficients.csv`): one analytic row per fitted
/// family and one empirical row per scaling factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub asset_a: String,
    pub asset_b: String,
    /// Family name, or `empirical`.
    pub copula: String,
    pub source: TailSource,
    pub k: Option<usize>,
    pub lower: f64,
    pub upper: f64,
}

/// Pre-modelling and residual diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRow {
    /// Asset name or `a~b` for pair tests.
    pub subject: String,
    /// `returns`, `squared_returns`, `log_price`, `residuals`, ...
    pub series: String,
    pub test: stattests::Method,
    pub lags: usize,
    pub statistic: f64,
    pub p_value: f64,
}

/// Everything a run reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTables {
    pub seed: u64,
    pub assets: Vec<String>,
    pub n_obs: usize,
    pub join: JoinStats,
    pub diagnostics: Vec<DiagnosticRow>,
    pub model_selection: Vec<CandidateRow>,
    pub long_memory: Vec<LongMemoryRow>,
    pub model_params: Vec<ParamRow>,
    pub rank_correlations: Vec<RankCorrelationRow>,
    pub copula_fits: Vec<CopulaFitRow>,
    pub copula_selection: Vec<CopulaSelectionRow>,
    pub tail_coefficients: Vec<TailRow>,
}

pub const TABLE_FILES: [&str; 5] = [
    "table1_long_memory.csv",
    "table2_model_params.csv",
    "table3_rank_correlations.csv",
    "table4_copula_fits.csv",
    "table5_tail_coefficients.csv",
];

/// Serialize rows with a header taken from the field names.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    w.flush()?;
    Ok(())
}

/// csv cannot infer a header from zero rows; write it explicitly.
fn write_csv_or_header<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> Result<()> {
    if rows.is_empty() {
        std::fs::write(path, format!("{}\n", header.join(",")))?;
        Ok(())
    } else {
        write_csv(path, rows)
    }
}

/// Write the five tables, the auxiliary tables and `summary.json`.
/// Returns the written paths in a fixed order.
pub fn emit_report(t: &ReportTables, dir: &Path) -> Result<Vec<PathBuf>> {
    if t.n_obs == 0 || t.assets.is_empty() {
        return Err(Error::Empty("report has no observations".into()));
    }
    std::fs::create_dir_all(dir)?;
    let p = |name: &str| dir.join(name);
    let mut out = Vec::new();
    let lm_header = ["asset", "model", "d", "std_error", "p_value", "error"];
    write_csv_or_header(&p(TABLE_FILES[0]), &t.long_memory, &lm_header)?;
    write_csv(&p(TABLE_FILES[1]), &t.model_params)?;
    write_csv(&p(TABLE_FILES[2]), &t.rank_correlations)?;
    write_csv(&p(TABLE_FILES[3]), &t.copula_fits)?;
    write_csv(&p(TABLE_FILES[4]), &t.tail_coefficients)?;
    out.extend(TABLE_FILES.iter().map(|f| p(f)));
    for (name, res) in [
        ("copula_selection.csv", write_csv(&p("copula_selection.csv"), &t.copula_selection)),
        ("model_selection.csv", write_csv(&p("model_selection.csv"), &t.model_selection)),
        ("diagnostics.csv", write_csv(&p("diagnostics.csv"), &t.diagnostics)),
    ] {
        res?;
        out.push(p(name));
    }
    let json = serde_json::to_string_pretty(t).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(p("summary.json"), json + "\n")?;
    out.push(p("summary.json"));
    Ok(out)
}

/// Asset names made safe for file names.
pub fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QqPoint {
    pub probability: f64,
    pub theoretical: f64,
    pub empirical: f64,
}

/// QQ pairs: sorted residuals against the fitted law's quantiles at
/// (i − ½)/T.
pub fn qq_points(dist: InnovationDist, eps: &[f64]) -> Result<Vec<QqPoint>> {
    if eps.is_empty() {
        return Err(Error::Empty("no residuals for a QQ plot".into()));
    }
    let mut e = eps.to_vec();
    e.sort_by(f64::total_cmp);
    let n = e.len() as f64;
    let probs: Vec<f64> = (0..e.len()).map(|i| (i as f64 + 0.5) / n).collect();
    let q = Prepared::new(dist)?.quantiles_sorted(&probs)?;
    Ok(probs
        .into_iter()
        .zip(q)
        .zip(e)
        .map(|((probability, theoretical), empirical)| QqPoint { probability, theoretical, empirical })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcfBar {
    pub lag: usize,
    pub acf_eps: f64,
    pub acf_eps2: f64,
    /// ±2/√T band.
    pub band: f64,
}

pub fn acf_bars(eps: &[f64], max_lag: usize) -> Result<Vec<AcfBar>> {
    let max_lag = max_lag.min(eps.len().saturating_sub(1));
    let sq: Vec<f64> = eps.iter().map(|e| e * e).collect();
    let a = stattests::acf(eps, max_lag)?;
    let b = stattests::acf(&sq, max_lag)?;
    let band = 2.0 / (eps.len() as f64).sqrt();
    Ok((1..=max_lag).map(|lag| AcfBar { lag, acf_eps: a[lag], acf_eps2: b[lag], band }).collect())
}

/// QQ and ACF data per asset: `qq_<asset>.csv`, `acf_<asset>.csv`.
pub fn emit_plot_data(models: &[AssetModel], dir: &Path, acf_max_lag: usize) -> Result<Vec<PathBuf>> {
    if models.is_empty() {
        return Err(Error::Empty("no fitted models for plot data".into()));
    }
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for m in models {
        let stem = file_stem(&m.asset);
        let qq = dir.join(format!("qq_{stem}.csv"));
        write_csv(&qq, &qq_points(m.model.params.dist, &m.model.output.eps)?)?;
        let acf = dir.join(format!("acf_{stem}.csv"));
        write_csv(&acf, &acf_bars(&m.model.output.eps, acf_max_lag)?)?;
        out.push(qq);
        out.push(acf);
    }
    Ok(out)
}
