use crate::copula::{self, CopulaModel, Estimator, GofOptions, PseudoSample};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rng::{derive_seed, label_hash};
use crate::stattests::{self, TestResult};
use crate::tsmodel::{self, FittedModel, ModelSpec};

use super::config::Config;
use super::data::{align_by_date, parse_price_csv, AlignedPanel, PriceSeries};
use super::report::*;
use super::select::{choose_copula, select_model, CandidateRow, FamilyScore};

/// Selected margin model of one asset.
#[derive(Debug, Clone)]
pub struct AssetModel {
    pub asset: String,
    pub model: FittedModel,
}

/// Everything a run produces: the report tables plus the objects needed
/// for plot data and downstream steps.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: ReportTables,
    pub panel: AlignedPanel,
    pub models: Vec<AssetModel>,
}

/// Read every configured price file.
pub fn load_series(cfg: &Config) -> Result<Vec<PriceSeries>> {
    cfg.assets
        .iter()
        .map(|a| parse_price_csv(&a.path, &a.name, &a.schema()))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at_stage("ingest"))
}

pub fn run_pipeline(cfg: &Config) -> Result<RunOutput> {
    run_pipeline_with(cfg, Execution::default())
}

pub fn run_pipeline_with(cfg: &Config, exec: Execution) -> Result<RunOutput> {
    cfg.validate().map_err(|e| e.at_stage("config"))?;
    let series = load_series(cfg)?;
    run_on_series(cfg, &series, exec)
}

/// Index pairs (i, j), i < j, in asset order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn adf_lags(cfg: &Config, n: usize) -> usize {
    cfg.diagnostics.adf_lags.unwrap_or_else(|| ((n.saturating_sub(1)) as f64).cbrt().floor() as usize)
}

fn diag_row(subject: &str, series: &str, r: TestResult) -> DiagnosticRow {
    DiagnosticRow {
        subject: subject.to_string(),
        series: series.to_string(),
        test: r.method,
        lags: r.lags,
        statistic: r.statistic,
        p_value: r.p_value,
    }
}

/// Ljung–Box on returns and squared returns, ADF on log prices and returns,
/// Engle–Granger on every pair of log prices.
pub fn pre_model_diagnostics(cfg: &Config, panel: &AlignedPanel) -> Result<Vec<DiagnosticRow>> {
    let mut rows = Vec::new();
    let log_prices: Vec<Vec<f64>> = panel.prices.iter().map(|p| p.iter().map(|x| x.ln()).collect()).collect();
    for (i, name) in panel.labels.iter().enumerate() {
        let r = &panel.returns[i];
        let sq: Vec<f64> = r.iter().map(|x| x * x).collect();
        for &h in &cfg.diagnostics.lags {
            rows.push(diag_row(name, "returns", stattests::ljung_box(r, h)?));
            rows.push(diag_row(name, "squared_returns", stattests::ljung_box(&sq, h)?));
        }
        rows.push(diag_row(name, "log_price", stattests::adf(&log_prices[i], adf_lags(cfg, log_prices[i].len()))?));
        rows.push(diag_row(name, "returns", stattests::adf(r, adf_lags(cfg, r.len()))?));
    }
    for (i, j) in pairs(panel.labels.len()) {
        let subject = format!("{}~{}", panel.labels[i], panel.labels[j]);
        rows.push(diag_row(&subject, "log_price", stattests::engle_granger(&log_prices[i], &log_prices[j])?));
    }
    Ok(rows)
}

fn residual_diagnostics(cfg: &Config, m: &AssetModel) -> Result<Vec<DiagnosticRow>> {
    let eps = &m.model.output.eps;
    let sq: Vec<f64> = eps.iter().map(|e| e * e).collect();
    let mut rows = Vec::new();
    for &h in &cfg.diagnostics.lags {
        rows.push(diag_row(&m.asset, "residuals", stattests::ljung_box(eps, h)?));
        rows.push(diag_row(&m.asset, "squared_residuals", stattests::ljung_box(&sq, h)?));
    }
    let pit = tsmodel::pit_series(m.model.params.dist, eps)?;
    rows.push(diag_row(&m.asset, "pit", stattests::ks_uniform(&pit)?));
    Ok(rows)
}

/// Estimates and standard errors of a selected model, one row per parameter.
pub fn param_rows(m: &AssetModel) -> Vec<ParamRow> {
    let spec = &m.model.spec;
    let names = m.model.params.names(spec);
    let values = m.model.params.to_vec(spec);
    names
        .into_iter()
        .zip(values)
        .zip(&m.model.stderr)
        .map(|((parameter, estimate), se)| ParamRow {
            asset: m.asset.clone(),
            model: spec.label(),
            parameter,
            estimate,
            std_error: *se,
        })
        .collect()
}

/// FARIMA(1,d,1)-GARCH(1,1) fit with the selected innovation law; a failed
/// fit is reported in the row.
pub fn long_memory_row(m: &AssetModel, r: &[f64]) -> LongMemoryRow {
    let spec = ModelSpec::farima(1, 1, 1, 1, m.model.spec.dist);
    let mut row = LongMemoryRow {
        asset: m.asset.clone(),
        model: spec.label(),
        d: None,
        std_error: None,
        p_value: None,
        error: None,
    };
    match tsmodel::fit(&spec, r) {
        Ok(f) => {
            let idx = 2 + spec.p + spec.q + spec.k + spec.l;
            row.d = Some(f.params.d);
            row.std_error = f.stderr.get(idx).copied();
            row.p_value = f.d_pvalue();
        }
        Err(e) => {
            log::warn!("long-memory fit failed for {}: {e}", m.asset);
            row.error = Some(e.to_string());
        }
    }
    row
}

fn split_params(m: &CopulaModel) -> (Option<f64>, Option<f64>) {
    let p = m.params();
    (p.first().copied(), p.get(1).copied())
}

fn pair_seed(seed: u64, what: &str, a: &str, b: &str) -> u64 {
    derive_seed(seed, label_hash(&format!("{what}:{a}:{b}")))
}

/// Select a margin model for every column of the panel.
pub fn select_margins(
    cfg: &Config,
    panel: &AlignedPanel,
    exec: Execution,
) -> Result<(Vec<AssetModel>, Vec<CandidateRow>)> {
    let specs = cfg.model_specs().map_err(|e| e.at_stage("config"))?;
    let mut models = Vec::with_capacity(panel.labels.len());
    let mut rows = Vec::new();
    for (name, r) in panel.labels.iter().zip(&panel.returns) {
        let (model, cand) = select_model(name, r, &specs, &cfg.diagnostics.lags, cfg.diagnostics.gate_level, exec)
            .map_err(|e| e.at_stage("model-selection"))?;
        log::info!("{name}: selected {}", model.spec.label());
        if !cand.iter().any(|c| c.selected && c.gates_passed) {
            log::warn!("{name}: no candidate passed the residual gates; using the best-ranked model");
        }
        rows.extend(cand);
        models.push(AssetModel { asset: name.clone(), model });
    }
    Ok((models, rows))
}

/// Pseudo-observations of two assets' standardized residuals.
pub fn residual_sample(a: &AssetModel, b: &AssetModel) -> Result<PseudoSample> {
    copula::pseudo_obs(&a.model.output.eps, &b.model.output.eps).map_err(|e| e.at_stage("rank-correlation"))
}

pub fn rank_correlation(cfg: &Config, a: &str, b: &str, s: &PseudoSample, exec: Execution) -> RankCorrelationRow {
    let perm = copula::independence_permutation_test(s, cfg.copula.n_perm, pair_seed(cfg.seed, "perm", a, b), exec);
    RankCorrelationRow {
        asset_a: a.into(),
        asset_b: b.into(),
        kendall: copula::kendall_tau(s),
        spearman: copula::spearman_rho(s),
        independence_p: perm.p_value,
    }
}

fn analytic_row(a: &str, b: &str, m: &CopulaModel) -> TailRow {
    let t = m.tail_coefficients();
    TailRow {
        asset_a: a.into(),
        asset_b: b.into(),
        copula: m.family().name().into(),
        source: t.source,
        k: None,
        lower: t.lambda_lower,
        upper: t.lambda_upper,
    }
}

/// Copula fits, GoF bootstraps and the family choice for one pair, plus
/// the analytic tail coefficients of every fitted family. A family whose
/// fit fails is reported with its error rather than aborting the pair.
pub fn fit_copulas(
    cfg: &Config,
    a: &str,
    b: &str,
    s: &PseudoSample,
    exec: Execution,
) -> Result<(Vec<CopulaFitRow>, CopulaSelectionRow, Vec<TailRow>)> {
    let families = cfg.copula_families().map_err(|e| e.at_stage("config"))?;
    let estimator = cfg.estimator().map_err(|e| e.at_stage("config"))?;
    let opts = GofOptions { n_boot: cfg.copula.n_boot, seed: pair_seed(cfg.seed, "gof", a, b), estimator, exec };
    let mut fits = Vec::with_capacity(families.len());
    let mut scores = Vec::new();
    let mut tails = Vec::new();
    for family in families {
        let mut row = CopulaFitRow {
            asset_a: a.into(),
            asset_b: b.into(),
            family,
            estimator: estimator.name().into(),
            theta: None,
            theta2: None,
            loglik: None,
            aic: None,
            bic: None,
            gof_statistic: None,
            p_value: None,
            n_bootstrap: None,
            n_failed: None,
            mle_theta: None,
            mle_theta2: None,
            mle_loglik: None,
            mle_aic: None,
            mle_bic: None,
            error: None,
        };
        let mut main_fit = None;
        match copula::gof_bootstrap(family, s, &opts) {
            Ok((fit, gof)) => {
                (row.theta, row.theta2) = split_params(&fit.model);
                row.loglik = Some(fit.loglik);
                row.aic = Some(fit.aic);
                row.bic = Some(fit.bic);
                row.gof_statistic = Some(gof.statistic);
                row.p_value = Some(gof.p_value);
                row.n_bootstrap = Some(gof.n_bootstrap);
                row.n_failed = Some(gof.n_failed);
                scores.push(FamilyScore {
                    family,
                    p_value: gof.p_value,
                    loglik: fit.loglik,
                    bic: fit.bic,
                    aic: fit.aic,
                });
                tails.push(analytic_row(a, b, &fit.model));
                main_fit = Some(fit);
            }
            Err(e) => {
                log::warn!("{a}~{b}: {} copula fit failed: {e}", family.name());
                row.error = Some(e.to_string());
            }
        }
        let mle = match estimator {
            Estimator::Mle => main_fit,
            Estimator::InverseTau => copula::fit(family, s, Estimator::Mle).ok(),
        };
        if let Some(m) = mle {
            (row.mle_theta, row.mle_theta2) = split_params(&m.model);
            row.mle_loglik = Some(m.loglik);
            row.mle_aic = Some(m.aic);
            row.mle_bic = Some(m.bic);
        }
        fits.push(row);
    }
    let choice = choose_copula(&scores, cfg.diagnostics.gate_level);
    let selection = CopulaSelectionRow {
        asset_a: a.into(),
        asset_b: b.into(),
        selected_by_gof: choice.by_gof,
        selected_by_bic: choice.by_bic,
        t_vs_gaussian_p: choice.t_vs_gaussian_p,
    };
    Ok((fits, selection, tails))
}

/// Analytic tail coefficients of each family at its point estimate,
/// without a bootstrap.
pub fn analytic_tails(cfg: &Config, a: &str, b: &str, s: &PseudoSample) -> Result<Vec<TailRow>> {
    let estimator = cfg.estimator().map_err(|e| e.at_stage("config"))?;
    let mut out = Vec::new();
    for family in cfg.copula_families().map_err(|e| e.at_stage("config"))? {
        match copula::fit(family, s, estimator) {
            Ok(f) => out.push(analytic_row(a, b, &f.model)),
            Err(e) => log::warn!("{a}~{b}: {} copula fit failed: {e}", family.name()),
        }
    }
    Ok(out)
}

/// Configured scaling factors, or the default grid for `n_obs`.
pub fn scaling_factors(cfg: &Config, n_obs: usize) -> Vec<usize> {
    if cfg.copula.k_grid.is_empty() {
        copula::k_grid(n_obs)
    } else {
        cfg.copula.k_grid.clone()
    }
}

/// Nonparametric tail coefficients at each scaling factor.
pub fn empirical_tails(a: &str, b: &str, s: &PseudoSample, k_grid: &[usize]) -> Result<Vec<TailRow>> {
    k_grid
        .iter()
        .map(|&k| {
            let t = copula::tail_coeff_estimates(s, k).map_err(|e| e.at_stage("tail"))?;
            Ok(TailRow {
                asset_a: a.into(),
                asset_b: b.into(),
                copula: "empirical".into(),
                source: t.source,
                k: t.k,
                lower: t.lambda_lower,
                upper: t.lambda_upper,
            })
        })
        .collect()
}

/// Run every stage on already parsed series.
pub fn run_on_series(cfg: &Config, series: &[PriceSeries], exec: Execution) -> Result<RunOutput> {
    let panel = align_by_date(series).map_err(|e| e.at_stage("align"))?;
    let n_obs = panel.n_obs();
    let mut diagnostics = pre_model_diagnostics(cfg, &panel).map_err(|e| e.at_stage("diagnostics"))?;
    let (models, model_selection) = select_margins(cfg, &panel, exec)?;
    for m in &models {
        diagnostics.extend(residual_diagnostics(cfg, m).map_err(|e| e.at_stage("diagnostics"))?);
    }
    let model_params: Vec<ParamRow> = models.iter().flat_map(param_rows).collect();

    let long_memory: Vec<LongMemoryRow> = if cfg.model.long_memory {
        exec.map_slice(&models.iter().zip(&panel.returns).collect::<Vec<_>>(), |(m, r)| long_memory_row(m, r))
    } else {
        Vec::new()
    };

    let k_grid = scaling_factors(cfg, n_obs);
    let mut tables = ReportTables {
        seed: cfg.seed,
        assets: panel.labels.clone(),
        n_obs,
        join: panel.join.clone(),
        diagnostics,
        model_selection,
        long_memory,
        model_params,
        rank_correlations: Vec::new(),
        copula_fits: Vec::new(),
        copula_selection: Vec::new(),
        tail_coefficients: Vec::new(),
    };
    for (i, j) in pairs(models.len()) {
        let (a, b) = (&models[i].asset, &models[j].asset);
        let s = residual_sample(&models[i], &models[j])?;
        tables.rank_correlations.push(rank_correlation(cfg, a, b, &s, exec));
        let (fits, selection, analytic) = fit_copulas(cfg, a, b, &s, exec).map_err(|e| match e {
            Error::Stage { .. } => e,
            e => e.at_stage("copula-fit"),
        })?;
        tables.copula_fits.extend(fits);
        tables.copula_selection.push(selection);
        tables.tail_coefficients.extend(analytic);
        tables.tail_coefficients.extend(empirical_tails(a, b, &s, &k_grid)?);
    }
    Ok(RunOutput { tables, panel, models })
}

/// Residual series of a fitted model, dated when dates are supplied.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ResidualRow {
    pub date: Option<chrono::NaiveDate>,
    pub r: f64,
    pub sigma: f64,
    pub eps: f64,
    pub pit: f64,
}

pub fn residual_rows(m: &FittedModel, r: &[f64], dates: Option<&[chrono::NaiveDate]>) -> Result<Vec<ResidualRow>> {
    let pit = tsmodel::pit_series(m.params.dist, &m.output.eps)?;
    Ok((0..m.output.eps.len())
        .map(|t| ResidualRow {
            date: dates.and_then(|d| d.get(t).copied()),
            r: r[t],
            sigma: m.output.sigma[t],
            eps: m.output.eps[t],
            pit: pit[t],
        })
        .collect())
}

/// The full report: run the pipeline and write every table and plot-data
/// file under `cfg.output_dir`. Returns the written paths in a fixed order.
pub fn run_report(cfg: &Config, exec: Execution) -> Result<(RunOutput, Vec<std::path::PathBuf>)> {
    let out = run_pipeline_with(cfg, exec)?;
    let mut files = emit_report(&out.tables, &cfg.output_dir).map_err(|e| e.at_stage("report"))?;
    files.extend(
        emit_plot_data(&out.models, &cfg.output_dir, cfg.diagnostics.acf_max_lag).map_err(|e| e.at_stage("report"))?,
    );
    Ok((out, files))
}
