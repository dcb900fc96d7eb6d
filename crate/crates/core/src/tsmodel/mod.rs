//! ARMA(p,q)–GARCH(k,l) models with optional fractional differencing.
//!
//! The mean equation is `(1−B)^d (r_t − μ) = Σφ_i w_{t−i} + Σθ_j a_{t−j} + a_t`
//! and the shocks follow `a_t = σ_t ε_t` with
//! `σ²_t = γ + Σ β_m σ²_{t−m} + Σ α_n a²_{t−n}`.

mod filter;
mod fit;
mod simulate;

use serde::{Deserialize, Serialize};

use crate::dists::{DistFamily, InnovationDist};
use crate::error::{Error, Result};

pub use filter::{filter, fracdiff_coeffs};
pub use fit::{fit, fit_with, FitOptions};
pub use simulate::{pit_series, pit_series_with, simulate, simulate_path, simulate_path_from, SimulatedPath, BURN_IN};

/// Model orders and innovation family. `k` counts GARCH (σ²) lags and `l`
/// counts ARCH (a²) lags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpec {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub l: usize,
    pub fractional: bool,
    pub dist: DistFamily,
}

impl ModelSpec {
    pub fn new(p: usize, q: usize, k: usize, l: usize, dist: DistFamily) -> Self {
        Self { p, q, k, l, fractional: false, dist }
    }

    pub fn farima(p: usize, q: usize, k: usize, l: usize, dist: DistFamily) -> Self {
        Self { p, q, k, l, fractional: true, dist }
    }

    /// Number of free parameters, μ and γ included.
    pub fn n_params(&self) -> usize {
        2 + self.p + self.q + self.k + self.l + usize::from(self.fractional) + self.dist.n_params()
    }

    pub fn max_lag(&self) -> usize {
        self.p.max(self.q).max(self.k).max(self.l)
    }

    /// Label such as `ARMA(1,1)-GARCH(1,1)-student_t` or
    /// `FARIMA(1,d,1)-GARCH(1,1)-normal`.
    pub fn label(&self) -> String {
        let mean = if self.fractional {
            format!("FARIMA({},d,{})", self.p, self.q)
        } else {
            format!("ARMA({},{})", self.p, self.q)
        };
        format!("{mean}-GARCH({},{})-{}", self.k, self.l, self.dist.name())
    }
}

/// Parameter values for a [`ModelSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmaGarchParams {
    pub mu: f64,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    pub gamma: f64,
    /// ARCH coefficients on a²_{t−n}, n = 1..l.
    pub alpha: Vec<f64>,
    /// GARCH coefficients on σ²_{t−m}, m = 1..k.
    pub beta: Vec<f64>,
    pub d: f64,
    pub dist: InnovationDist,
}

impl ArmaGarchParams {
    pub fn persistence(&self) -> f64 {
        self.alpha.iter().sum::<f64>() + self.beta.iter().sum::<f64>()
    }

    /// Unconditional shock variance γ/(1 − Σα − Σβ).
    pub fn unconditional_variance(&self) -> f64 {
        self.gamma / (1.0 - self.persistence())
    }

    pub fn validate(&self, spec: &ModelSpec) -> Result<()> {
        if self.phi.len() != spec.p
            || self.theta.len() != spec.q
            || self.alpha.len() != spec.l
            || self.beta.len() != spec.k
        {
            return Err(Error::InvalidParameter(format!(
                "parameter lengths (phi {}, theta {}, alpha {}, beta {}) do not match {}",
                self.phi.len(),
                self.theta.len(),
                self.alpha.len(),
                self.beta.len(),
                spec.label()
            )));
        }
        if self.dist.family() != spec.dist {
            return Err(Error::InvalidParameter(format!(
                "innovation family {} does not match spec {}",
                self.dist.family().name(),
                spec.dist.name()
            )));
        }
        self.dist.validate()?;
        let all =
            [self.mu, self.gamma, self.d].into_iter().chain(self.phi.iter().copied()).chain(self.theta.iter().copied());
        if all.clone().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        if self.gamma < 0.0 || self.alpha.iter().chain(&self.beta).any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidParameter("variance coefficients must be non-negative".into()));
        }
        if self.persistence() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "sum of ARCH and GARCH coefficients must be < 1, got {}",
                self.persistence()
            )));
        }
        if !spec.fractional && self.d != 0.0 {
            return Err(Error::InvalidParameter("fractional order set on a non-fractional spec".into()));
        }
        if !(0.0..0.5).contains(&self.d) {
            return Err(Error::InvalidParameter(format!("fractional order must lie in [0, 0.5), got {}", self.d)));
        }
        Ok(())
    }

    /// Flattened values in the order used by [`FittedModel::stderr`].
    pub fn to_vec(&self, spec: &ModelSpec) -> Vec<f64> {
        let mut v = vec![self.mu];
        v.extend(&self.phi);
        v.extend(&self.theta);
        v.push(self.gamma);
        v.extend(&self.alpha);
        v.extend(&self.beta);
        if spec.fractional {
            v.push(self.d);
        }
        v.extend(self.dist.params());
        v
    }

    pub fn names(&self, spec: &ModelSpec) -> Vec<String> {
        let mut v = vec!["mu".to_string()];
        v.extend((1..=spec.p).map(|i| format!("phi{i}")));
        v.extend((1..=spec.q).map(|i| format!("theta{i}")));
        v.push("gamma".into());
        v.extend((1..=spec.l).map(|i| format!("alpha{i}")));
        v.extend((1..=spec.k).map(|i| format!("beta{i}")));
        if spec.fractional {
            v.push("d".into());
        }
        v.extend(self.dist.param_names().iter().map(|s| s.to_string()));
        v
    }
}

/// Result of running the model recursions over a series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterOutput {
    pub a: Vec<f64>,
    pub sigma: Vec<f64>,
    pub eps: Vec<f64>,
    pub loglik: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedModel {
    pub spec: ModelSpec,
    pub params: ArmaGarchParams,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    /// Standard errors aligned with [`ArmaGarchParams::to_vec`]; NaN where
    /// the Hessian is not invertible.
    pub stderr: Vec<f64>,
    pub converged: bool,
    pub output: FilterOutput,
}

impl FittedModel {
    pub fn n_params(&self) -> usize {
        self.spec.n_params()
    }

    /// Two-sided Wald p-value for H0: d = 0 (fractional specs only).
    pub fn d_pvalue(&self) -> Option<f64> {
        if !self.spec.fractional {
            return None;
        }
        let idx = 2 + self.spec.p + self.spec.q + self.spec.k + self.spec.l;
        let se = self.stderr[idx];
        if !(se > 0.0) {
            return Some(f64::NAN);
        }
        let z = self.params.d / se;
        Some(2.0 * crate::special::normal_cdf(-z.abs()))
    }
}
