use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::Execution;
use crate::rng::{derive_seed, label_hash, stream};
use crate::stattests::{Method, TestResult};

use super::empirical::empirical_copula_at_sample;
use super::family::{CopulaFamily, CopulaModel};
use super::fit::{fit, CopulaFit, Estimator};
use super::pseudo::{kendall_tau, kendall_tau_xy, pseudo_obs, PseudoSample};

pub const DEFAULT_N_BOOT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Replicates that produced a statistic.
    pub n_bootstrap: usize,
    /// Replicates whose re-fit was infeasible; excluded from the p-value.
    pub n_failed: usize,
}

/// Cramér–von Mises distance Σ_t (C_T(U_t, V_t) − C(U_t, V_t))².
pub fn cvm_statistic(s: &PseudoSample, m: &CopulaModel) -> f64 {
    let emp = empirical_copula_at_sample(s);
    s.u()
        .iter()
        .zip(s.v())
        .zip(&emp)
        .map(|((u, v), c)| {
            let d = c - m.cdf(*u, *v);
            d * d
        })
        .sum()
}

/// Settings for the parametric bootstrap.
#[derive(Debug, Clone, Copy)]
pub struct GofOptions {
    pub n_boot: usize,
    pub seed: u64,
    pub estimator: Estimator,
    pub exec: Execution,
}

impl Default for GofOptions {
    fn default() -> Self {
        Self { n_boot: DEFAULT_N_BOOT, seed: 0, estimator: Estimator::InverseTau, exec: Execution::default() }
    }
}

/// Parametric-bootstrap p-value of the CvM statistic: fit, then repeatedly
/// simulate from the fit, re-rank, re-fit and recompute the statistic.
/// Each replicate draws from its own seeded stream, so the result does not
/// depend on scheduling.
pub fn gof_bootstrap(family: CopulaFamily, s: &PseudoSample, opts: &GofOptions) -> Result<(CopulaFit, GofResult)> {
    let fitted = fit(family, s, opts.estimator)?;
    let gof = gof_bootstrap_at(&fitted.model, s, opts);
    Ok((fitted, gof))
}

/// Bootstrap for an already fitted model.
pub fn gof_bootstrap_at(model: &CopulaModel, s: &PseudoSample, opts: &GofOptions) -> GofResult {
    let family = model.family();
    let observed = cvm_statistic(s, model);
    let n = s.len();
    let base = derive_seed(opts.seed, label_hash(family.name()));
    let stats: Vec<Option<f64>> = opts.exec.map_range(opts.n_boot, |r| {
        let mut rng = stream(base, r as u64);
        let (u, v) = model.sample_with(&mut rng, n);
        let ranked = pseudo_obs(&u, &v).ok()?;
        let refit = fit(family, &ranked, opts.estimator).ok()?;
        Some(cvm_statistic(&ranked, &refit.model))
    });
    let valid: Vec<f64> = stats.into_iter().flatten().collect();
    let exceed = valid.iter().filter(|x| **x >= observed).count();
    GofResult {
        statistic: observed,
        p_value: (1 + exceed) as f64 / (valid.len() + 1) as f64,
        n_bootstrap: valid.len(),
        n_failed: opts.n_boot - valid.len(),
    }
}

/// Permutation test of independence based on |τ̂|.
pub fn independence_permutation_test(s: &PseudoSample, n_perm: usize, seed: u64, exec: Execution) -> TestResult {
    let tau = kendall_tau(s);
    let base = derive_seed(seed, label_hash("independence"));
    let exceed: usize = exec
        .map_range(n_perm, |r| {
            let mut rng = stream(base, r as u64);
            let mut v = s.v().to_vec();
            v.shuffle(&mut rng);
            usize::from(kendall_tau_xy(s.u(), &v).abs() >= tau.abs())
        })
        .into_iter()
        .sum();
    TestResult {
        statistic: tau,
        p_value: (1 + exceed) as f64 / (n_perm + 1) as f64,
        lags: n_perm,
        method: Method::PermutationIndependence,
    }
}
