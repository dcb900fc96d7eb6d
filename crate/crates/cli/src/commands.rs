use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::Serialize;

use taildep::copula::{CopulaFamily, CopulaModel};
use taildep::dists::InnovationDist;
use taildep::error::Error;
use taildep::exec::Execution;
use taildep::pipeline::report::{file_stem, write_csv};
use taildep::pipeline::select::{residual_gates, select_model};
use taildep::pipeline::*;
use taildep::tsmodel::{ArmaGarchParams, FittedModel, ModelSpec};

use crate::args::*;

pub enum CliError {
    /// Bad invocation: exit 2.
    Usage(String),
    /// Failure while reading or analysing data: exit 1.
    Data(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn set_threads(n: usize) -> std::result::Result<(), String> {
    if n == 0 {
        return Err("--threads must be at least 1".into());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    log::warn!("built without the parallel feature; --threads {n} has no effect");
    Ok(())
}

fn exec(g: &GlobalArgs) -> Execution {
    if g.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn config_err(e: Error) -> CliError {
    CliError::Data(e.at_stage("config"))
}

fn parse_asset(s: &str) -> Result<AssetConfig> {
    match s.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => Ok(AssetConfig::new(name, path)),
        _ => Err(CliError::Usage(format!("--asset expects NAME=PATH, got '{s}'"))),
    }
}

/// Config file (if any) with every given flag applied on top.
fn build_config(
    g: &GlobalArgs,
    data: &DataArgs,
    model: Option<&ModelArgs>,
    copula: Option<&CopulaArgs>,
) -> Result<Config> {
    let mut cfg = match &data.config {
        Some(path) => Config::load(path).map_err(config_err)?,
        None if data.assets.is_empty() => {
            return Err(CliError::Usage("no input data: pass --config FILE or --asset NAME=PATH".into()));
        }
        None => Config::with_assets(Vec::new()),
    };
    if !data.assets.is_empty() {
        cfg.assets = data.assets.iter().map(|s| parse_asset(s)).collect::<Result<_>>()?;
    }
    for a in &mut cfg.assets {
        if let Some(c) = &data.date_column {
            a.date_column = c.clone();
        }
        if let Some(c) = &data.price_column {
            a.price_column = c.clone();
        }
        if let Some(c) = data.calendar {
            a.calendar = match c {
                CalendarArg::Gregorian => Calendar::Gregorian,
                CalendarArg::Jalali => Calendar::Jalali,
            };
        }
        if let Some(f) = &data.date_format {
            a.date_format = f.clone();
        }
        if let Some(d) = data.delimiter {
            a.delimiter = d;
        }
    }
    if let Some(o) = &data.out {
        cfg.output_dir = o.clone();
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(m) = model {
        if !m.arma.is_empty() {
            cfg.model.arma = m.arma.clone();
        }
        if !m.garch.is_empty() {
            cfg.model.garch = m.garch.clone();
        }
        if !m.distributions.is_empty() {
            cfg.model.distributions = m.distributions.clone();
        }
        if !m.fractional.is_empty() {
            cfg.model.fractional = m.fractional.clone();
        }
        if let Some(v) = m.long_memory {
            cfg.model.long_memory = v;
        }
        if !m.lags.is_empty() {
            cfg.diagnostics.lags = m.lags.clone();
        }
        if let Some(v) = m.gate_level {
            cfg.diagnostics.gate_level = v;
        }
        if m.adf_lags.is_some() {
            cfg.diagnostics.adf_lags = m.adf_lags;
        }
        if let Some(v) = m.acf_max_lag {
            cfg.diagnostics.acf_max_lag = v;
        }
    }
    if let Some(c) = copula {
        if !c.families.is_empty() {
            cfg.copula.families = c.families.clone();
        }
        if let Some(e) = &c.estimator {
            cfg.copula.estimator = e.clone();
        }
        if let Some(n) = c.n_boot {
            cfg.copula.n_boot = n;
        }
        if !c.k_grid.is_empty() {
            cfg.copula.k_grid = c.k_grid.clone();
        }
        if let Some(n) = c.n_perm {
            cfg.copula.n_perm = n;
        }
    }
    cfg.validate_settings().map_err(config_err)?;
    Ok(cfg)
}

fn out_dir(cfg: &Config) -> Result<&Path> {
    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", cfg.output_dir.display())).at_stage("report"))?;
    Ok(&cfg.output_dir)
}

fn written(path: &Path) {
    println!("wrote {}", path.display());
}

fn emit<T: Serialize>(path: PathBuf, rows: &[T]) -> Result<()> {
    write_csv(&path, rows).map_err(|e| e.at_stage("report"))?;
    written(&path);
    Ok(())
}

fn emit_json<T: Serialize>(path: PathBuf, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()).at_stage("report"))?;
    std::fs::write(&path, text + "\n").map_err(|e| Error::from(e).at_stage("report"))?;
    written(&path);
    Ok(())
}

/// Keep only the named assets, in the order given.
fn restrict(cfg: &mut Config, names: &[&str]) -> Result<()> {
    let mut keep = Vec::with_capacity(names.len());
    for n in names {
        match cfg.assets.iter().find(|a| a.name == *n) {
            Some(a) => keep.push(a.clone()),
            None => {
                let known: Vec<&str> = cfg.assets.iter().map(|a| a.name.as_str()).collect();
                return Err(CliError::Usage(format!("unknown asset '{n}' (known: {})", known.join(", "))));
            }
        }
    }
    cfg.assets = keep;
    Ok(())
}

#[derive(Serialize)]
struct SeriesSummary {
    name: String,
    path: PathBuf,
    rows: usize,
    first_date: NaiveDate,
    last_date: NaiveDate,
}

#[derive(Serialize)]
struct IngestSummary {
    assets: Vec<SeriesSummary>,
    join: Option<JoinStats>,
}

pub fn ingest(g: &GlobalArgs, a: &IngestArgs) -> Result<()> {
    let cfg = build_config(g, &a.data, None, None)?;
    let series = load_series(&cfg)?;
    let dir = out_dir(&cfg)?;
    let assets: Vec<SeriesSummary> = series
        .iter()
        .zip(&cfg.assets)
        .map(|(s, c)| SeriesSummary {
            name: s.label.clone(),
            path: c.path.clone(),
            rows: s.len(),
            first_date: s.dates[0],
            last_date: s.dates[s.len() - 1],
        })
        .collect();
    for s in &assets {
        println!("{}: {} rows, {} to {}", s.name, s.rows, s.first_date, s.last_date);
    }
    let mut join = None;
    if series.len() >= 2 {
        let panel = align_by_date(&series).map_err(|e| e.at_stage("align"))?;
        println!("aligned: {} common dates, {} returns", panel.join.common_dates, panel.n_obs());
        let path = dir.join("aligned_returns.csv");
        let mut rows = Vec::with_capacity(panel.n_obs() + 1);
        let mut header = vec!["date".to_string()];
        header.extend(panel.labels.iter().cloned());
        rows.push(header);
        for t in 0..panel.n_obs() {
            let mut row = vec![panel.dates[t + 1].to_string()];
            row.extend(panel.returns.iter().map(|r| format!("{}", r[t])));
            rows.push(row);
        }
        let text: String = rows.iter().map(|r| r.join(",") + "\n").collect();
        std::fs::write(&path, text).map_err(|e| Error::from(e).at_stage("report"))?;
        written(&path);
        join = Some(panel.join);
    }
    emit_json(dir.join("ingest_summary.json"), &IngestSummary { assets, join })
}

#[derive(Serialize)]
struct FitSummary<'a> {
    asset: &'a str,
    model: String,
    spec: &'a ModelSpec,
    params: &'a ArmaGarchParams,
    loglik: f64,
    aic: f64,
    bic: f64,
    stderr: &'a [f64],
    converged: bool,
    n_obs: usize,
}

struct AssetFit {
    name: String,
    dates: Vec<NaiveDate>,
    r: Vec<f64>,
    model: FittedModel,
}

/// Select a model per asset on each asset's own dates.
fn fit_assets(g: &GlobalArgs, a: &FitArgs) -> Result<(Config, Vec<AssetFit>)> {
    let mut cfg = build_config(g, &a.data, Some(&a.model), None)?;
    if let Some(n) = &a.name {
        restrict(&mut cfg, &[n.as_str()])?;
    }
    let specs = cfg.model_specs().map_err(config_err)?;
    let series = load_series(&cfg)?;
    let dir = out_dir(&cfg)?.to_path_buf();
    let mut out = Vec::with_capacity(series.len());
    for s in series {
        let r = log_returns(&s.prices);
        let (model, rows) =
            select_model(&s.label, &r, &specs, &cfg.diagnostics.lags, cfg.diagnostics.gate_level, exec(g))
                .map_err(|e| e.at_stage("model-selection"))?;
        let stem = file_stem(&s.label);
        println!("{}: {} loglik={} aic={} bic={}", s.label, model.spec.label(), model.loglik, model.aic, model.bic);
        emit(dir.join(format!("model_selection_{stem}.csv")), &rows)?;
        let am = AssetModel { asset: s.label.clone(), model };
        let params = param_rows(&am);
        for p in &params {
            println!("  {} = {} (se {})", p.parameter, p.estimate, p.std_error);
        }
        emit(dir.join(format!("params_{stem}.csv")), &params)?;
        let m = &am.model;
        emit_json(
            dir.join(format!("fit_{stem}.json")),
            &FitSummary {
                asset: &s.label,
                model: m.spec.label(),
                spec: &m.spec,
                params: &m.params,
                loglik: m.loglik,
                aic: m.aic,
                bic: m.bic,
                stderr: &m.stderr,
                converged: m.converged,
                n_obs: r.len(),
            },
        )?;
        out.push(AssetFit { name: s.label, dates: s.dates[1..].to_vec(), r, model: am.model });
    }
    Ok((cfg, out))
}

pub fn fit(g: &GlobalArgs, a: &FitArgs) -> Result<()> {
    fit_assets(g, a).map(|_| ())
}

#[derive(Serialize)]
struct GateRow {
    lag: Option<usize>,
    series: &'static str,
    test: &'static str,
    p_value: f64,
}

pub fn residuals(g: &GlobalArgs, a: &FitArgs) -> Result<()> {
    let (cfg, fits) = fit_assets(g, a)?;
    let dir = out_dir(&cfg)?.to_path_buf();
    let mut models = Vec::with_capacity(fits.len());
    for f in fits {
        let stem = file_stem(&f.name);
        let rows = residual_rows(&f.model, &f.r, Some(&f.dates)).map_err(|e| e.at_stage("residuals"))?;
        emit(dir.join(format!("residuals_{stem}.csv")), &rows)?;
        let gates = residual_gates(&f.model, &cfg.diagnostics.lags).map_err(|e| e.at_stage("residuals"))?;
        let mut grows: Vec<GateRow> = gates
            .ljung_box
            .iter()
            .map(|(lag, series, p)| GateRow { lag: Some(*lag), series, test: "ljung_box", p_value: *p })
            .collect();
        grows.push(GateRow { lag: None, series: "pit", test: "kolmogorov_smirnov", p_value: gates.pit_ks_p });
        for r in &grows {
            match r.lag {
                Some(l) => println!("{}: {} {} lag {} p={}", f.name, r.test, r.series, l, r.p_value),
                None => println!("{}: {} {} p={}", f.name, r.test, r.series, r.p_value),
            }
        }
        emit(dir.join(format!("gates_{stem}.csv")), &grows)?;
        models.push(AssetModel { asset: f.name, model: f.model });
    }
    for p in emit_plot_data(&models, &dir, cfg.diagnostics.acf_max_lag).map_err(|e| e.at_stage("report"))? {
        written(&p);
    }
    Ok(())
}

struct PairContext {
    cfg: Config,
    models: Vec<AssetModel>,
    pairs: Vec<(usize, usize)>,
    n_obs: usize,
}

/// Align the involved assets, select their margins and list the pairs.
fn pair_context(g: &GlobalArgs, a: &PairArgs) -> Result<PairContext> {
    let mut cfg = build_config(g, &a.data, Some(&a.model), Some(&a.copula))?;
    if let Some(p) = &a.pair {
        let names: Vec<&str> = p.split(',').map(str::trim).collect();
        if names.len() != 2 || names[0] == names[1] {
            return Err(CliError::Usage(format!("--pair expects two distinct names A,B, got '{p}'")));
        }
        restrict(&mut cfg, &names)?;
    }
    cfg.validate().map_err(config_err)?;
    let series = load_series(&cfg)?;
    let panel = align_by_date(&series).map_err(|e| e.at_stage("align"))?;
    let (models, _) = select_margins(&cfg, &panel, exec(g))?;
    for m in &models {
        log::info!("{}: {}", m.asset, m.model.spec.label());
    }
    Ok(PairContext { pairs: pairs(models.len()), n_obs: panel.n_obs(), cfg, models })
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn fam(x: Option<CopulaFamily>) -> &'static str {
    x.map_or("-", |f| f.name())
}

pub fn copula(g: &GlobalArgs, a: &PairArgs) -> Result<()> {
    let ctx = pair_context(g, a)?;
    let dir = out_dir(&ctx.cfg)?.to_path_buf();
    let (mut ranks, mut fits, mut sel) = (Vec::new(), Vec::new(), Vec::new());
    for &(i, j) in &ctx.pairs {
        let (x, y) = (&ctx.models[i], &ctx.models[j]);
        let s = residual_sample(x, y)?;
        let rank = rank_correlation(&ctx.cfg, &x.asset, &y.asset, &s, exec(g));
        println!(
            "{}~{}: kendall={} spearman={} independence_p={}",
            x.asset, y.asset, rank.kendall, rank.spearman, rank.independence_p
        );
        let (rows, choice, _) = fit_copulas(&ctx.cfg, &x.asset, &y.asset, &s, exec(g)).map_err(|e| match e {
            Error::Stage { .. } => e,
            e => e.at_stage("copula-fit"),
        })?;
        for r in &rows {
            match &r.error {
                None => println!(
                    "  {}: theta={} theta2={} loglik={} p={}",
                    r.family.name(),
                    opt(r.theta),
                    opt(r.theta2),
                    opt(r.loglik),
                    opt(r.p_value)
                ),
                Some(e) => println!("  {}: failed: {e}", r.family.name()),
            }
        }
        println!("  selected: by_gof={} by_bic={}", fam(choice.selected_by_gof), fam(choice.selected_by_bic));
        ranks.push(rank);
        fits.extend(rows);
        sel.push(choice);
    }
    emit(dir.join("rank_correlations.csv"), &ranks)?;
    emit(dir.join("copula_fits.csv"), &fits)?;
    emit(dir.join("copula_selection.csv"), &sel)
}

pub fn tail(g: &GlobalArgs, a: &PairArgs) -> Result<()> {
    let ctx = pair_context(g, a)?;
    let dir = out_dir(&ctx.cfg)?.to_path_buf();
    let k_grid = scaling_factors(&ctx.cfg, ctx.n_obs);
    let mut rows = Vec::new();
    for &(i, j) in &ctx.pairs {
        let (x, y) = (&ctx.models[i], &ctx.models[j]);
        let s = residual_sample(x, y)?;
        let mut pair_rows = empirical_tails(&x.asset, &y.asset, &s, &k_grid)?;
        pair_rows.extend(analytic_tails(&ctx.cfg, &x.asset, &y.asset, &s).map_err(|e| e.at_stage("tail"))?);
        for r in &pair_rows {
            let k = r.k.map_or_else(String::new, |k| format!(" k={k}"));
            println!("{}~{} {}{k}: lower={} upper={}", r.asset_a, r.asset_b, r.copula, r.lower, r.upper);
        }
        rows.extend(pair_rows);
    }
    emit(dir.join("tail_coefficients.csv"), &rows)
}

pub fn report(g: &GlobalArgs, a: &ReportArgs) -> Result<()> {
    let cfg = build_config(g, &a.data, Some(&a.model), Some(&a.copula))?;
    let (out, files) = run_report(&cfg, exec(g))?;
    for m in &out.models {
        println!("{}: {}", m.asset, m.model.spec.label());
    }
    for s in &out.tables.copula_selection {
        println!("{}~{}: by_gof={} by_bic={}", s.asset_a, s.asset_b, fam(s.selected_by_gof), fam(s.selected_by_bic));
    }
    for f in &files {
        written(f);
    }
    Ok(())
}

pub fn simulate(g: &GlobalArgs, a: &SimulateArgs) -> Result<()> {
    let n = a.names.len();
    if n < 2 {
        return Err(CliError::Usage("--names needs at least two assets".into()));
    }
    let start = NaiveDate::parse_from_str(&a.start, "%Y-%m-%d")
        .map_err(|e| CliError::Usage(format!("--start '{}': {e}", a.start)))?;
    let bivariate = |m: CopulaModel| {
        if n == 2 {
            Ok(Dependence::Bivariate(m))
        } else {
            Err(CliError::Usage(format!("--copula {:?} needs exactly two --names, got {n}", m.family().name())))
        }
    };
    let dependence = match a.copula {
        SimCopula::Independent => Dependence::Independent,
        SimCopula::Gaussian => Dependence::Equicorrelated { rho: a.rho },
        SimCopula::StudentT => bivariate(CopulaModel::StudentT { rho: a.rho, nu: a.copula_nu })?,
        SimCopula::Clayton => bivariate(CopulaModel::Clayton { theta: a.theta })?,
        SimCopula::Gumbel => bivariate(CopulaModel::Gumbel { theta: a.theta })?,
        SimCopula::Frank => bivariate(CopulaModel::Frank { theta: a.theta })?,
        SimCopula::Joe => bivariate(CopulaModel::Joe { theta: a.theta })?,
    };
    let mut spec = SyntheticSpec::garch_t(n, a.t, dependence);
    spec.names = a.names.clone();
    spec.start = start;
    spec.params.phi = vec![a.phi];
    spec.params.gamma = a.gamma;
    spec.params.alpha = vec![a.alpha];
    spec.params.beta = vec![a.beta];
    spec.params.dist = match a.innovation {
        SimInnovation::Normal => InnovationDist::Normal,
        SimInnovation::StudentT => InnovationDist::StudentT { nu: a.shape },
        SimInnovation::Ged => InnovationDist::Ged { shape: a.shape },
    };
    spec.margin.dist = spec.params.dist.family();
    let seed = g.seed.unwrap_or(0);
    let series = simulate_panel(&spec, seed).map_err(|e| e.at_stage("simulate"))?;

    std::fs::create_dir_all(&a.out).map_err(|e| Error::Io(format!("{}: {e}", a.out.display())).at_stage("simulate"))?;
    let mut assets = Vec::with_capacity(n);
    for s in &series {
        let file = format!("{}.csv", file_stem(&s.label));
        let path = a.out.join(&file);
        write_price_csv(s, &path).map_err(|e| e.at_stage("simulate"))?;
        written(&path);
        assets.push(AssetConfig::new(s.label.clone(), file));
    }
    let mut cfg = Config::with_assets(assets);
    cfg.seed = seed;
    let text = toml::to_string(&cfg).map_err(|e| Error::Io(e.to_string()).at_stage("simulate"))?;
    let path = a.out.join("config.toml");
    std::fs::write(&path, text).map_err(|e| Error::from(e).at_stage("simulate"))?;
    written(&path);
    emit_json(a.out.join("simulation.json"), &spec)
}
