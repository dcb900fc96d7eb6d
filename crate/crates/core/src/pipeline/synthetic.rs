//! Synthetic price panels with known margins and dependence, for tests,
//! demos and simulation studies.

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use nalgebra::DMatrix;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::copula::CopulaModel;
use crate::dists::{DistFamily, InnovationDist, Prepared};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, label_hash, stream};
use crate::special::normal_cdf;
use crate::tsmodel::{simulate_path_from, ArmaGarchParams, ModelSpec, BURN_IN};

use super::data::PriceSeries;

/// Cross-sectional dependence of the innovations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dependence {
    Independent,
    /// Gaussian copula with all pairwise correlations equal to `rho`.
    Equicorrelated {
        rho: f64,
    },
    /// Any bivariate copula; two assets only.
    Bivariate(CopulaModel),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub names: Vec<String>,
    /// Number of returns per asset; prices have one more entry.
    pub t: usize,
    pub dependence: Dependence,
    pub margin: ModelSpec,
    pub params: ArmaGarchParams,
    pub start: NaiveDate,
    pub initial_price: f64,
}

impl SyntheticSpec {
    /// AR(1)-GARCH(1,1) margins with Student-t(6) innovations.
    pub fn garch_t(n_assets: usize, t: usize, dependence: Dependence) -> Self {
        Self {
            names: (1..=n_assets).map(|i| format!("asset{i}")).collect(),
            t,
            dependence,
            margin: ModelSpec::new(1, 0, 1, 1, DistFamily::StudentT),
            params: ArmaGarchParams {
                mu: 3e-4,
                phi: vec![0.05],
                theta: vec![],
                gamma: 2e-6,
                alpha: vec![0.08],
                beta: vec![0.9],
                d: 0.0,
                dist: InnovationDist::StudentT { nu: 6.0 },
            },
            start: NaiveDate::from_ymd_opt(2010, 1, 4).expect("valid date"),
            initial_price: 100.0,
        }
    }
}

/// `n` draws of dependent uniforms, one vector per asset.
pub fn dependent_uniforms(dep: &Dependence, n_assets: usize, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = stream(derive_seed(seed, label_hash("synthetic-uniforms")), 0);
    let lo = f64::MIN_POSITIVE;
    let hi = 1.0 - f64::EPSILON / 2.0;
    match *dep {
        Dependence::Bivariate(m) => {
            if n_assets != 2 {
                return Err(Error::InvalidParameter(format!(
                    "a bivariate copula needs exactly 2 assets, got {n_assets}"
                )));
            }
            m.validate()?;
            let (u, v) = m.sample_with(&mut rng, n);
            Ok(vec![u, v])
        }
        Dependence::Independent | Dependence::Equicorrelated { .. } => {
            let rho = match *dep {
                Dependence::Equicorrelated { rho } => rho,
                _ => 0.0,
            };
            let corr = DMatrix::from_fn(n_assets, n_assets, |i, j| if i == j { 1.0 } else { rho });
            let chol = corr.cholesky().ok_or_else(|| {
                Error::InvalidParameter(format!("equicorrelation {rho} is not positive definite for {n_assets} assets"))
            })?;
            let l = chol.l();
            let mut out = vec![Vec::with_capacity(n); n_assets];
            let mut z = vec![0.0; n_assets];
            for _ in 0..n {
                for zi in z.iter_mut() {
                    *zi = StandardNormal.sample(&mut rng);
                }
                for (i, col) in out.iter_mut().enumerate() {
                    let x: f64 = (0..=i).map(|j| l[(i, j)] * z[j]).sum();
                    col.push(normal_cdf(x).clamp(lo, hi));
                }
            }
            Ok(out)
        }
    }
}

fn business_days(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(n);
    let mut d = start;
    while out.len() < n {
        if !matches!(d.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(d);
        }
        d += Duration::days(1);
    }
    out
}

/// Simulate prices on weekdays starting at `spec.start`.
pub fn simulate_panel(spec: &SyntheticSpec, seed: u64) -> Result<Vec<PriceSeries>> {
    let n_assets = spec.names.len();
    if n_assets == 0 || spec.t == 0 {
        return Err(Error::InvalidParameter("synthetic panel needs at least one asset and one observation".into()));
    }
    if !(spec.initial_price > 0.0) {
        return Err(Error::InvalidParameter(format!("initial price must be positive, got {}", spec.initial_price)));
    }
    let u = dependent_uniforms(&spec.dependence, n_assets, spec.t + BURN_IN, seed)?;
    let dist = Prepared::new(spec.params.dist)?;
    let dates = business_days(spec.start, spec.t + 1);
    let mut out = Vec::with_capacity(n_assets);
    for (name, ui) in spec.names.iter().zip(u) {
        let eps = ui.iter().map(|p| dist.quantile(*p)).collect::<Result<Vec<_>>>()?;
        let path = simulate_path_from(&spec.margin, &spec.params, eps)?;
        let mut price = spec.initial_price;
        let mut rows = Vec::with_capacity(spec.t + 1);
        rows.push((dates[0], price));
        for (d, r) in dates[1..].iter().zip(&path.r) {
            price *= r.exp();
            rows.push((*d, price));
        }
        out.push(PriceSeries::new(name.clone(), rows)?);
    }
    Ok(out)
}

/// Write a series as `date,price` CSV.
pub fn write_price_csv(s: &PriceSeries, path: &std::path::Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    w.write_record(["date", "price"]).map_err(|e| Error::Io(e.to_string()))?;
    for (d, p) in s.dates.iter().zip(&s.prices) {
        w.write_record([d.format("%Y-%m-%d").to_string(), format!("{p}")]).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
