use crate::dists::{InnovationDist, Prepared};
use crate::error::{Error, Result};
use crate::exec::Execution;

use super::filter::fracdiff_coeffs;
use super::{ArmaGarchParams, ModelSpec};

/// Leading draws discarded by the simulators.
pub const BURN_IN: usize = 500;

/// A simulated path with its latent components.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPath {
    pub r: Vec<f64>,
    pub eps: Vec<f64>,
    pub sigma: Vec<f64>,
    pub a: Vec<f64>,
}

/// Simulate `t` returns from the model, discarding a burn-in of 500.
pub fn simulate(spec: &ModelSpec, params: &ArmaGarchParams, t: usize, seed: u64) -> Result<Vec<f64>> {
    Ok(simulate_path(spec, params, t, seed)?.r)
}

pub fn simulate_path(spec: &ModelSpec, params: &ArmaGarchParams, t: usize, seed: u64) -> Result<SimulatedPath> {
    params.validate(spec)?;
    if t == 0 {
        return Err(Error::InvalidParameter("simulation length must be positive".into()));
    }
    let eps = Prepared::new(params.dist)?.sample(t + BURN_IN, seed)?;
    simulate_path_from(spec, params, eps)
}

/// Run the recursion on given standardized innovations. The first
/// [`BURN_IN`] of them are discarded, so the path has `eps.len() − BURN_IN`
/// observations.
pub fn simulate_path_from(spec: &ModelSpec, params: &ArmaGarchParams, eps: Vec<f64>) -> Result<SimulatedPath> {
    params.validate(spec)?;
    let n = eps.len();
    if n <= BURN_IN {
        return Err(Error::InvalidParameter(format!("need more than {BURN_IN} innovations, got {n}")));
    }
    let s2_0 = params.unconditional_variance();
    let mut a = vec![0.0; n];
    let mut s2 = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut v = params.gamma;
        for (m, beta) in params.beta.iter().enumerate() {
            v += beta * if i > m { s2[i - m - 1] } else { s2_0 };
        }
        for (k, alpha) in params.alpha.iter().enumerate() {
            v += alpha * if i > k { a[i - k - 1] * a[i - k - 1] } else { s2_0 };
        }
        s2[i] = v;
        a[i] = v.sqrt() * eps[i];
        let mut wi = a[i];
        for (j, phi) in params.phi.iter().enumerate() {
            if i > j {
                wi += phi * w[i - j - 1];
            }
        }
        for (j, theta) in params.theta.iter().enumerate() {
            if i > j {
                wi += theta * a[i - j - 1];
            }
        }
        w[i] = wi;
    }
    let x = if spec.fractional && params.d != 0.0 {
        let psi = fracdiff_coeffs(-params.d, n);
        (0..n).map(|i| (0..=i).map(|j| psi[j] * w[i - j]).sum::<f64>()).collect()
    } else {
        w
    };
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Evaluation("simulated path is not finite".into()));
    }
    Ok(SimulatedPath {
        r: x[BURN_IN..].iter().map(|v| params.mu + v).collect(),
        eps: eps[BURN_IN..].to_vec(),
        sigma: s2[BURN_IN..].iter().map(|v| v.sqrt()).collect(),
        a: a[BURN_IN..].to_vec(),
    })
}

/// Probability integral transform of residuals under the innovation law.
pub fn pit_series(d: InnovationDist, eps: &[f64]) -> Result<Vec<f64>> {
    pit_series_with(d, eps, Execution::Sequential)
}

pub fn pit_series_with(d: InnovationDist, eps: &[f64], exec: Execution) -> Result<Vec<f64>> {
    let dist = Prepared::new(d)?;
    let lo = f64::MIN_POSITIVE;
    let hi = 1.0 - f64::EPSILON / 2.0;
    Ok(exec.map_slice(eps, |e| dist.cdf(*e).clamp(lo, hi)))
}
