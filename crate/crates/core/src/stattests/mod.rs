//! Diagnostic statistics: autocorrelation, Ljung–Box, Kolmogorov–Smirnov
//! uniformity, augmented Dickey–Fuller and Engle–Granger cointegration.

mod df_tables;
mod unitroot;

use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::special::{chi2_sf, kolmogorov_sf};

pub use unitroot::{
    adf, adf_with, df_tau, engle_granger, engle_granger_with, AdfOptions, Deterministic, EngleGrangerOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LjungBox,
    KolmogorovSmirnov,
    AugmentedDickeyFuller,
    EngleGranger,
    PermutationIndependence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Degrees of freedom or lag count, depending on the test.
    pub lags: usize,
    pub method: Method,
}

fn centred_ss(x: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let c: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let ss = c.iter().map(|v| v * v).sum();
    (c, ss)
}

/// Sample autocorrelations ρ̂_0..ρ̂_max_lag.
pub fn acf(x: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    check_finite(x)?;
    if x.is_empty() {
        return Err(Error::Empty("autocorrelation of an empty series".into()));
    }
    if max_lag >= x.len() {
        return Err(Error::InvalidParameter(format!("max_lag {max_lag} must be below the series length {}", x.len())));
    }
    let (c, ss) = centred_ss(x);
    if !(ss > 0.0) {
        return Err(Error::DegenerateData("autocorrelation of a zero-variance series".into()));
    }
    let mut out = Vec::with_capacity(max_lag + 1);
    out.push(1.0);
    for h in 1..=max_lag {
        let s: f64 = c[h..].iter().zip(&c[..c.len() - h]).map(|(a, b)| a * b).sum();
        out.push(s / ss);
    }
    Ok(out)
}

/// Ljung–Box portmanteau test with a χ²(lags) reference distribution.
pub fn ljung_box(x: &[f64], lags: usize) -> Result<TestResult> {
    if lags == 0 {
        return Err(Error::InvalidParameter("Ljung-Box needs at least one lag".into()));
    }
    let rho = acf(x, lags)?;
    let n = x.len() as f64;
    let q = n * (n + 2.0) * (1..=lags).map(|h| rho[h] * rho[h] / (n - h as f64)).sum::<f64>();
    Ok(TestResult { statistic: q, p_value: chi2_sf(q, lags as f64).clamp(0.0, 1.0), lags, method: Method::LjungBox })
}

/// Two-sided one-sample KS test against U(0,1). The p-value uses the
/// asymptotic Kolmogorov law with Stephens' finite-sample scaling.
pub fn ks_uniform(y: &[f64]) -> Result<TestResult> {
    if y.is_empty() {
        return Err(Error::Empty("KS test on an empty sample".into()));
    }
    check_finite(y)?;
    if let Some(bad) = y.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Domain(format!("KS uniformity input must lie in [0,1], got {bad}")));
    }
    let mut s = y.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d = 0.0f64;
    for (i, v) in s.iter().enumerate() {
        d = d.max((i + 1) as f64 / n - v).max(v - i as f64 / n);
    }
    let sn = n.sqrt();
    let p = kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d).clamp(0.0, 1.0);
    Ok(TestResult { statistic: d, p_value: p, lags: s.len(), method: Method::KolmogorovSmirnov })
}
