use nalgebra::{DMatrix, DVector};

use crate::error::{check_finite, Error, Result};

use super::df_tables::{self, DfTable};
use super::{Method, TestResult};

/// Deterministic terms in the Dickey–Fuller regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Deterministic {
    None,
    #[default]
    Constant,
    ConstantTrend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdfOptions {
    pub lags: usize,
    pub deterministic: Deterministic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngleGrangerOptions {
    /// Augmentation lags for the residual regression; `None` uses
    /// ⌊(T−1)^{1/3}⌋.
    pub lags: Option<usize>,
}

struct Ols {
    coef: DVector<f64>,
    se: DVector<f64>,
    ssr: f64,
}

fn ols(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<Ols> {
    let (n, k) = x.shape();
    if n <= k {
        return Err(Error::DegenerateData(format!("{n} observations for {k} regressors")));
    }
    let xtx = x.transpose() * x;
    let chol = xtx.cholesky().ok_or_else(|| Error::Singular("regressor matrix is rank deficient".into()))?;
    let coef = chol.solve(&(x.transpose() * y));
    let resid = y - x * &coef;
    let ssr = resid.dot(&resid);
    let s2 = ssr / (n - k) as f64;
    let inv = chol.inverse();
    let se = DVector::from_fn(k, |i, _| (s2 * inv[(i, i)]).max(0.0).sqrt());
    Ok(Ols { coef, se, ssr })
}

/// Dickey–Fuller t-statistic on ρ in
/// Δx_t = [c] + [δt] + ρ x_{t−1} + Σ φ_i Δx_{t−i} + e_t.
/// Returns the statistic and the number of observations in the regression.
pub fn df_tau(x: &[f64], lags: usize, det: Deterministic) -> Result<(f64, usize)> {
    check_finite(x)?;
    let t = x.len();
    if t <= lags + 10 {
        return Err(Error::DegenerateData(format!("series of length {t} is too short for {lags} lags")));
    }
    let dx: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let n = dx.len() - lags;
    let n_det = match det {
        Deterministic::None => 0,
        Deterministic::Constant => 1,
        Deterministic::ConstantTrend => 2,
    };
    let k = 1 + n_det + lags;
    let mut xm = DMatrix::zeros(n, k);
    let mut y = DVector::zeros(n);
    for row in 0..n {
        let i = row + lags; // index into dx
        y[row] = dx[i];
        xm[(row, 0)] = x[i];
        if n_det >= 1 {
            xm[(row, 1)] = 1.0;
        }
        if n_det == 2 {
            xm[(row, 2)] = (i + 1) as f64;
        }
        for j in 1..=lags {
            xm[(row, n_det + j)] = dx[i - j];
        }
    }
    let tss: f64 = {
        let m = y.mean();
        y.iter().map(|v| (v - m) * (v - m)).sum::<f64>() + y.iter().map(|v| v * v).sum::<f64>() * 1e-300
    };
    let fit = ols(&xm, &y)?;
    let scale = y.iter().map(|v| v * v).sum::<f64>();
    if fit.ssr <= 1e-24 * scale.max(tss) {
        return Err(Error::DegenerateData(
            "Dickey-Fuller regression fits exactly; the series is a deterministic trend (use the trend option or detrend first)"
                .into(),
        ));
    }
    let tau = fit.coef[0] / fit.se[0];
    if !tau.is_finite() {
        return Err(Error::Evaluation("Dickey-Fuller statistic is not finite".into()));
    }
    Ok((tau, n))
}

pub fn adf(x: &[f64], lags: usize) -> Result<TestResult> {
    adf_with(x, AdfOptions { lags, deterministic: Deterministic::Constant })
}

/// Augmented Dickey–Fuller unit-root test; small p-values reject a unit root.
pub fn adf_with(x: &[f64], opts: AdfOptions) -> Result<TestResult> {
    let (tau, n) = df_tau(x, opts.lags, opts.deterministic)?;
    let table = match opts.deterministic {
        Deterministic::None => &df_tables::ADF_NONE,
        Deterministic::Constant => &df_tables::ADF_CONSTANT,
        Deterministic::ConstantTrend => &df_tables::ADF_TREND,
    };
    Ok(TestResult {
        statistic: tau,
        p_value: table.p_value(tau, n),
        lags: opts.lags,
        method: Method::AugmentedDickeyFuller,
    })
}

pub fn engle_granger(x: &[f64], y: &[f64]) -> Result<TestResult> {
    engle_granger_with(x, y, EngleGrangerOptions::default())
}

/// Residual-based cointegration test: OLS of y on (1, x), then a
/// no-constant ADF regression on the residuals evaluated against
/// two-variable Engle–Granger critical values.
pub fn engle_granger_with(x: &[f64], y: &[f64], opts: EngleGrangerOptions) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    check_finite(x)?;
    check_finite(y)?;
    let t = x.len();
    if t < 20 {
        return Err(Error::DegenerateData(format!("series of length {t} is too short for a cointegration test")));
    }
    let xm = DMatrix::from_fn(t, 2, |i, j| if j == 0 { 1.0 } else { x[i] });
    let yv = DVector::from_column_slice(y);
    let fit = ols(&xm, &yv)?;
    let resid: Vec<f64> = (0..t).map(|i| y[i] - fit.coef[0] - fit.coef[1] * x[i]).collect();
    let scale = y.iter().map(|v| v * v).sum::<f64>();
    if fit.ssr <= 1e-24 * scale || resid.iter().all(|r| r.abs() <= 1e-12 * scale.sqrt()) {
        return Err(Error::DegenerateData("cointegrating regression residuals are identically zero".into()));
    }
    let lags = opts.lags.unwrap_or_else(|| ((t - 1) as f64).cbrt().floor() as usize);
    let (tau, n) = df_tau(&resid, lags, Deterministic::None)?;
    Ok(TestResult {
        statistic: tau,
        p_value: df_tables::ENGLE_GRANGER_2.p_value(tau, n),
        lags,
        method: Method::EngleGranger,
    })
}

impl DfTable {
    /// Left-tail probability of `tau` for a regression with `n`
    /// observations, interpolated linearly within each tabulated sample
    /// size and linearly in 1/n between sizes. Values outside the table
    /// are clamped to its extreme probabilities.
    pub(crate) fn p_value(&self, tau: f64, n: usize) -> f64 {
        let row_p = |row: &[f64]| -> f64 {
            if tau <= row[0] {
                return self.probs[0];
            }
            let last = row.len() - 1;
            if tau >= row[last] {
                return self.probs[last];
            }
            let i = row.partition_point(|q| *q <= tau).max(1);
            let (q0, q1) = (row[i - 1], row[i]);
            let w = if q1 > q0 { (tau - q0) / (q1 - q0) } else { 0.5 };
            self.probs[i - 1] + w * (self.probs[i] - self.probs[i - 1])
        };
        let sizes = self.sizes;
        let nf = n as f64;
        if n <= sizes[0] {
            return row_p(self.quantiles[0]);
        }
        let last = sizes.len() - 1;
        if n >= sizes[last] {
            return row_p(self.quantiles[last]);
        }
        let j = sizes.partition_point(|s| *s <= n).max(1);
        let (a, b) = (1.0 / sizes[j - 1] as f64, 1.0 / sizes[j] as f64);
        let w = (1.0 / nf - a) / (b - a);
        let p = (1.0 - w) * row_p(self.quantiles[j - 1]) + w * row_p(self.quantiles[j]);
        p.clamp(0.0, 1.0)
    }
}
