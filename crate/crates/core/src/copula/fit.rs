use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::{brent_min, brent_root};
use crate::special;

use super::family::{gaussian_ln_pdf, student_t_const, student_t_ln_pdf, CopulaFamily, CopulaModel};
use super::pseudo::{kendall_tau, tau_to_rho, PseudoSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    InverseTau,
    Mle,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::InverseTau => "inverse_tau",
            Estimator::Mle => "mle",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "inverse_tau" | "itau" => Ok(Estimator::InverseTau),
            "mle" | "ml" => Ok(Estimator::Mle),
            other => Err(Error::Config(format!("unknown copula estimator '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CopulaFit {
    pub model: CopulaModel,
    pub estimator: Estimator,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
}

/// Elliptical correlations are kept at most this far from ±1.
const RHO_CAP: f64 = 1.0 - 1e-6;
const NU_RANGE: (f64, f64) = (1.0, 100.0);
/// Tolerance on ln ν; the likelihood is flat in ν well before this matters.
const NU_LN_TOL: f64 = 1e-3;
const THETA_MAX: f64 = 100.0;

/// Log-likelihood Σ ln c(U_t, V_t).
pub fn loglik(m: &CopulaModel, s: &PseudoSample) -> f64 {
    match *m {
        CopulaModel::Independent => 0.0,
        CopulaModel::StudentT { rho, nu } => {
            let (x, y) = t_quantiles(s, &atoms(s), nu);
            t_loglik(&x, &y, rho, nu)
        }
        CopulaModel::Gaussian { rho } => {
            let (x, y) = normal_quantiles(s);
            x.iter().zip(&y).map(|(a, b)| gaussian_ln_pdf(*a, *b, rho)).sum()
        }
        _ => s.u().iter().zip(s.v()).map(|(u, v)| m.ln_pdf(*u, *v)).sum(),
    }
}

/// (AIC, BIC) at the given model.
pub fn aic_bic(m: &CopulaModel, s: &PseudoSample) -> (f64, f64) {
    info_criteria(m.family().n_params(), loglik(m, s), s.len())
}

fn info_criteria(k: usize, ll: f64, n: usize) -> (f64, f64) {
    let k = k as f64;
    (2.0 * k - 2.0 * ll, k * (n as f64).ln() - 2.0 * ll)
}

fn finish(model: CopulaModel, estimator: Estimator, s: &PseudoSample) -> CopulaFit {
    let ll = loglik(&model, s);
    let (aic, bic) = info_criteria(model.family().n_params(), ll, s.len());
    CopulaFit { model, estimator, loglik: ll, aic, bic }
}

fn normal_quantiles(s: &PseudoSample) -> (Vec<f64>, Vec<f64>) {
    (
        s.u().iter().map(|p| special::normal_quantile(*p)).collect(),
        s.v().iter().map(|p| special::normal_quantile(*p)).collect(),
    )
}

/// Distinct values of both margins; rank-based samples share their atoms,
/// so quantiles need only be computed once per atom.
fn atoms(s: &PseudoSample) -> Vec<f64> {
    let mut a: Vec<f64> = s.u().iter().chain(s.v()).copied().collect();
    a.sort_by(f64::total_cmp);
    a.dedup();
    a
}

fn t_quantiles(s: &PseudoSample, atoms: &[f64], nu: f64) -> (Vec<f64>, Vec<f64>) {
    let n = atoms.len();
    let mut q = vec![0.0; n];
    for j in 0..n {
        // rank atoms come in pairs p, 1 − p; reuse the mirrored quantile
        let m = n - 1 - j;
        q[j] = if m < j && (atoms[j] + atoms[m] - 1.0).abs() <= 4.0 * f64::EPSILON {
            -q[m]
        } else {
            special::student_t_quantile(atoms[j], nu)
        };
    }
    let lookup = |p: &f64| q[atoms.partition_point(|a| a < p)];
    (s.u().iter().map(lookup).collect(), s.v().iter().map(lookup).collect())
}

fn t_loglik(x: &[f64], y: &[f64], rho: f64, nu: f64) -> f64 {
    let c = student_t_const(nu);
    x.iter().zip(y).map(|(a, b)| student_t_ln_pdf(*a, *b, rho, nu, c)).sum()
}

fn infeasible(family: CopulaFamily, tau: f64) -> Error {
    Error::InfeasibleFit(format!("sample tau {tau:.6} is outside the range attainable by the {} copula", family.name()))
}

/// Profile likelihood over ν for a fixed correlation; returns the best ν.
fn profile_nu(s: &PseudoSample, rho: f64) -> f64 {
    let atoms = atoms(s);
    let f = |lnu: f64| {
        let nu = lnu.exp();
        let (x, y) = t_quantiles(s, &atoms, nu);
        -t_loglik(&x, &y, rho, nu)
    };
    brent_min(f, NU_RANGE.0.ln(), NU_RANGE.1.ln(), NU_LN_TOL).0.exp()
}

/// Invert the family's τ(θ) at the sample Kendall τ̂.
pub fn fit_inverse_tau(family: CopulaFamily, s: &PseudoSample) -> Result<CopulaFit> {
    let tau = kendall_tau(s);
    let model = invert_tau(family, tau, Some(s))?;
    Ok(finish(model, Estimator::InverseTau, s))
}

/// Parameter with τ(θ) = τ̂. The t copula additionally needs the sample to
/// profile ν by maximum likelihood.
pub fn invert_tau(family: CopulaFamily, tau: f64, s: Option<&PseudoSample>) -> Result<CopulaModel> {
    if !tau.is_finite() || tau.abs() > 1.0 {
        return Err(Error::Domain(format!("Kendall tau must lie in [-1, 1], got {tau}")));
    }
    let model = match family {
        CopulaFamily::Independent => CopulaModel::Independent,
        CopulaFamily::Gaussian => CopulaModel::Gaussian { rho: tau_to_rho(tau).clamp(-RHO_CAP, RHO_CAP) },
        CopulaFamily::StudentT => {
            let rho = tau_to_rho(tau).clamp(-RHO_CAP, RHO_CAP);
            let s = s.ok_or_else(|| Error::InvalidParameter("t copula inverse-tau fit needs the sample".into()))?;
            CopulaModel::StudentT { rho, nu: profile_nu(s, rho) }
        }
        CopulaFamily::Clayton => {
            if tau <= 0.0 || tau >= 1.0 {
                return Err(infeasible(family, tau));
            }
            CopulaModel::Clayton { theta: 2.0 * tau / (1.0 - tau) }
        }
        CopulaFamily::Gumbel => {
            if !(0.0..1.0).contains(&tau) {
                return Err(infeasible(family, tau));
            }
            CopulaModel::Gumbel { theta: 1.0 / (1.0 - tau) }
        }
        CopulaFamily::Frank => {
            if tau == 0.0 || tau.abs() >= 1.0 {
                return Err(infeasible(family, tau));
            }
            let sign = tau.signum();
            let g = |th: f64| super::family::frank_tau(sign * th) - tau;
            let hi = expand_bracket(|th| g(th) * sign, 1.0, 1e6).ok_or_else(|| infeasible(family, tau))?;
            let th = brent_root(g, 1e-12, hi, 1e-13)?;
            CopulaModel::Frank { theta: sign * th }
        }
        CopulaFamily::Joe => {
            if !(0.0..1.0).contains(&tau) {
                return Err(infeasible(family, tau));
            }
            if tau == 0.0 {
                CopulaModel::Joe { theta: 1.0 }
            } else {
                let g = |th: f64| super::family::joe_tau(th) - tau;
                let hi = expand_bracket(g, 2.0, 1e6).ok_or_else(|| infeasible(family, tau))?;
                CopulaModel::Joe { theta: brent_root(g, 1.0, hi, 1e-13)? }
            }
        }
    };
    model.validate()?;
    Ok(model)
}

/// Double `x` from `start` until `f(x) ≥ 0`.
fn expand_bracket<F: Fn(f64) -> f64>(f: F, start: f64, limit: f64) -> Option<f64> {
    let mut x = start;
    while f(x) < 0.0 {
        x *= 2.0;
        if x > limit {
            return None;
        }
    }
    Some(x)
}

/// Maximum pseudo-likelihood over the family's parameter domain.
pub fn fit_mle(family: CopulaFamily, s: &PseudoSample) -> Result<CopulaFit> {
    let model = match family {
        CopulaFamily::Independent => CopulaModel::Independent,
        CopulaFamily::Gaussian => {
            let (x, y) = normal_quantiles(s);
            let f = |z: f64| -x.iter().zip(&y).map(|(a, b)| gaussian_ln_pdf(*a, *b, z)).sum::<f64>();
            CopulaModel::Gaussian { rho: brent_min(f, -RHO_CAP, RHO_CAP, 1e-10).0 }
        }
        CopulaFamily::StudentT => {
            let atoms = atoms(s);
            let inner = |nu: f64| -> (f64, f64) {
                let (x, y) = t_quantiles(s, &atoms, nu);
                let f = |r: f64| -t_loglik(&x, &y, r, nu);
                brent_min(f, -RHO_CAP, RHO_CAP, 1e-9)
            };
            let lnu = brent_min(|l: f64| inner(l.exp()).1, NU_RANGE.0.ln(), NU_RANGE.1.ln(), NU_LN_TOL).0;
            let nu = lnu.exp();
            CopulaModel::StudentT { rho: inner(nu).0, nu }
        }
        CopulaFamily::Clayton => one_dim(s, |t| CopulaModel::Clayton { theta: t }, 1e-6, THETA_MAX),
        CopulaFamily::Gumbel => one_dim(s, |t| CopulaModel::Gumbel { theta: t }, 1.0, THETA_MAX),
        CopulaFamily::Joe => one_dim(s, |t| CopulaModel::Joe { theta: t }, 1.0, THETA_MAX),
        CopulaFamily::Frank => {
            let m =
                one_dim(s, |t| CopulaModel::Frank { theta: if t == 0.0 { 1e-12 } else { t } }, -THETA_MAX, THETA_MAX);
            match m {
                CopulaModel::Frank { theta: 0.0 } => CopulaModel::Frank { theta: 1e-12 },
                other => other,
            }
        }
    };
    model.validate()?;
    Ok(finish(model, Estimator::Mle, s))
}

fn one_dim<M: Fn(f64) -> CopulaModel>(s: &PseudoSample, make: M, lo: f64, hi: f64) -> CopulaModel {
    let f = |t: f64| {
        let ll = loglik(&make(t), s);
        if ll.is_finite() {
            -ll
        } else {
            f64::MAX
        }
    };
    make(brent_min(f, lo, hi, 1e-9).0)
}

pub fn fit(family: CopulaFamily, s: &PseudoSample, estimator: Estimator) -> Result<CopulaFit> {
    match estimator {
        Estimator::InverseTau => fit_inverse_tau(family, s),
        Estimator::Mle => fit_mle(family, s),
    }
}
