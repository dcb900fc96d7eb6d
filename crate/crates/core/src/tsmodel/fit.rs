use std::cell::RefCell;

use nalgebra::DMatrix;

use crate::dists::Prepared;
use crate::error::{check_finite, Error, Result};
use crate::optim::{bfgs, hessian, nelder_mead, Minimum};

use super::filter::{centred, fracdiff_parts, recursions, sample_variance};
use super::{ArmaGarchParams, FittedModel, ModelSpec};

/// Optimizer settings for [`fit_with`].
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Number of documented starting points to try (1 to 3).
    pub starts: usize,
    pub max_iter: usize,
    /// Relative tolerance on the per-observation log-likelihood.
    pub ftol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { starts: 3, max_iter: 400, ftol: 1e-10 }
    }
}

/// (Σα, Σβ) splits used as starting points.
const GARCH_STARTS: [(f64, f64); 3] = [(0.05, 0.90), (0.10, 0.80), (0.20, 0.60)];

const MIN_OBS: usize = 50;

/// Last d for which the fractional filter was built, with its two parts.
type CachedFilter = (f64, (Vec<f64>, Vec<f64>));

/// Map partial autocorrelations in (−1, 1) to stationary AR coefficients.
fn pacf_to_ar(r: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::with_capacity(r.len());
    for (k, &rk) in r.iter().enumerate() {
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = prev[j] - rk * prev[k - 1 - j];
        }
        phi.push(rk);
    }
    phi
}

fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

struct Layout {
    spec: ModelSpec,
}

impl Layout {
    fn len(&self) -> usize {
        self.spec.n_params()
    }

    /// Unconstrained vector to parameters for data scaled by `scale`.
    fn unpack(&self, z: &[f64], scale: f64) -> ArmaGarchParams {
        let s = &self.spec;
        let mut i = 0;
        let mut take = |n: usize| {
            let out = &z[i..i + n];
            i += n;
            out
        };
        let mu = take(1)[0] * scale;
        let phi = pacf_to_ar(&take(s.p).iter().map(|v| v.clamp(-20.0, 20.0).tanh()).collect::<Vec<_>>());
        let theta: Vec<f64> = pacf_to_ar(&take(s.q).iter().map(|v| v.clamp(-20.0, 20.0).tanh()).collect::<Vec<_>>())
            .into_iter()
            .map(|v| -v)
            .collect();
        let gamma = take(1)[0].clamp(-50.0, 50.0).exp() * scale * scale;
        let raw: Vec<f64> = take(s.l + s.k).iter().map(|v| v.clamp(-40.0, 40.0).exp()).collect();
        let denom = 1.0 + raw.iter().sum::<f64>();
        let alpha = raw[..s.l].iter().map(|v| v / denom).collect();
        let beta = raw[s.l..].iter().map(|v| v / denom).collect();
        let d = if s.fractional { 0.5 * logistic(take(1)[0]) } else { 0.0 };
        let dist = s.dist.with_free(take(s.dist.n_params()));
        ArmaGarchParams { mu, phi, theta, gamma, alpha, beta, d, dist }
    }

    fn start(&self, which: usize, ybar: f64) -> Vec<f64> {
        let s = &self.spec;
        let (a0, b0) = GARCH_STARTS[which % GARCH_STARTS.len()];
        let mut z = vec![ybar];
        z.extend((0..s.p).map(|i| if i == 0 { 0.2 } else { 0.0 }));
        z.extend((0..s.q).map(|i| if i == 0 { -0.1 } else { 0.0 }));
        let mut weights: Vec<f64> = Vec::new();
        weights.extend((0..s.l).map(|_| a0 / s.l as f64));
        weights.extend((0..s.k).map(|_| b0 / s.k as f64));
        let total: f64 = weights.iter().sum();
        let slack = 1.0 - total;
        z.push(slack.max(0.05).ln());
        z.extend(weights.iter().map(|w| (w / slack).ln()));
        if s.fractional {
            // d = 0.1
            z.push((0.2f64 / 0.8).ln());
        }
        z.extend(s.dist.free_start());
        debug_assert_eq!(z.len(), self.len());
        z
    }
}

pub fn fit(spec: &ModelSpec, r: &[f64]) -> Result<FittedModel> {
    fit_with(spec, r, &FitOptions::default())
}

/// Maximum-likelihood fit with multi-start BFGS and a simplex fallback.
///
/// The optimization runs on the series divided by its standard deviation,
/// over an unconstrained reparametrization that enforces stationarity,
/// invertibility, positivity and Σα + Σβ < 1. Standard errors come from the
/// inverse numerical Hessian mapped back through the delta method.
pub fn fit_with(spec: &ModelSpec, r: &[f64], opts: &FitOptions) -> Result<FittedModel> {
    check_finite(r)?;
    if r.len() < MIN_OBS {
        return Err(Error::DegenerateData(format!("need at least {MIN_OBS} observations, got {}", r.len())));
    }
    let var = sample_variance(r);
    let (lo, hi) = r.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    if lo == hi || !(var > 0.0) {
        return Err(Error::DegenerateData("series has zero variance".into()));
    }
    let scale = var.sqrt();
    let y: Vec<f64> = r.iter().map(|v| v / scale).collect();
    let n = y.len() as f64;
    let ybar = y.iter().sum::<f64>() / n;
    let layout = Layout { spec: *spec };
    let cache: RefCell<Option<CachedFilter>> = RefCell::new(None);

    let negll = |z: &[f64]| -> f64 {
        let p = layout.unpack(z, 1.0);
        let Ok(dist) = Prepared::new(p.dist) else {
            return f64::INFINITY;
        };
        let w = if spec.fractional {
            let mut c = cache.borrow_mut();
            if c.as_ref().map(|(d, _)| *d != p.d).unwrap_or(true) {
                *c = Some((p.d, fracdiff_parts(&y, p.d)));
            }
            centred(&y, p.mu, c.as_ref().map(|(_, parts)| parts))
        } else {
            centred(&y, p.mu, None)
        };
        match recursions(&p, &w, 1.0, &dist) {
            Ok(out) => -out.loglik,
            Err(_) => f64::INFINITY,
        }
    };
    let objective = |z: &[f64]| negll(z) / n;

    let mut best: Option<Minimum> = None;
    for which in 0..opts.starts.clamp(1, GARCH_STARTS.len()) {
        let z0 = layout.start(which, ybar);
        let m = bfgs(objective, &z0, opts.ftol, opts.max_iter);
        if !m.value.is_finite() {
            continue;
        }
        best = Some(match best {
            None => m,
            Some(b) => pick(b, m, &layout),
        });
    }
    let mut best = match best {
        Some(b) if b.converged => b,
        other => {
            let z0 = other.as_ref().map(|b| b.x.clone()).unwrap_or_else(|| layout.start(0, ybar));
            let nm = nelder_mead(objective, &z0, 0.1, 1e-12, 4000);
            let polished = bfgs(objective, &nm.x, opts.ftol, opts.max_iter);
            let cand = if polished.value <= nm.value { polished } else { nm };
            match other {
                Some(b) if b.value < cand.value => b,
                _ => cand,
            }
        }
    };
    if !best.value.is_finite() {
        return Err(Error::NoSolution(format!("no finite likelihood found for {}", spec.label())));
    }
    best.value *= n;

    let params = layout.unpack(&best.x, scale);
    let output = super::filter(spec, &params, r)?;
    let loglik = output.loglik;
    let k = spec.n_params() as f64;
    let stderr = standard_errors(&layout, &negll, &best.x, scale);
    Ok(FittedModel {
        spec: *spec,
        params,
        loglik,
        aic: 2.0 * k - 2.0 * loglik,
        bic: k * n.ln() - 2.0 * loglik,
        stderr,
        converged: best.converged,
        output,
    })
}

/// Prefer the higher likelihood; near-ties go to the smaller parameter norm.
fn pick(a: Minimum, b: Minimum, layout: &Layout) -> Minimum {
    let tie = (a.value - b.value).abs() <= 1e-10 * (1.0 + a.value.abs());
    if tie {
        let norm = |m: &Minimum| layout.unpack(&m.x, 1.0).to_vec(&layout.spec).iter().map(|v| v * v).sum::<f64>();
        if norm(&b) < norm(&a) {
            return b;
        }
        return a;
    }
    if b.value < a.value {
        b
    } else {
        a
    }
}

fn standard_errors<F: Fn(&[f64]) -> f64>(layout: &Layout, negll: &F, z: &[f64], scale: f64) -> Vec<f64> {
    let m = z.len();
    let nan = vec![f64::NAN; m];
    let h = hessian(negll, z);
    let hm = DMatrix::from_fn(m, m, |i, j| h[i][j]);
    let Some(cov_z) = hm.clone().cholesky().map(|c| c.inverse()) else {
        return nan;
    };
    let theta = |z: &[f64]| layout.unpack(z, scale).to_vec(&layout.spec);
    let mut jac = DMatrix::zeros(m, m);
    let mut zp = z.to_vec();
    for j in 0..m {
        let step = 1e-6 * z[j].abs().max(1.0);
        zp[j] = z[j] + step;
        let up = theta(&zp);
        zp[j] = z[j] - step;
        let dn = theta(&zp);
        zp[j] = z[j];
        for i in 0..m {
            jac[(i, j)] = (up[i] - dn[i]) / (2.0 * step);
        }
    }
    let cov = &jac * cov_z * jac.transpose();
    (0..m).map(|i| cov[(i, i)].max(0.0).sqrt()).collect()
}
