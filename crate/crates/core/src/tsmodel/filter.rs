use crate::dists::Prepared;
use crate::error::{check_finite, Error, Result};

use super::{ArmaGarchParams, FilterOutput, ModelSpec};

/// Coefficients π_0..π_{n−1} of the binomial expansion of (1−B)^d.
pub fn fracdiff_coeffs(d: f64, n: usize) -> Vec<f64> {
    let mut pi = Vec::with_capacity(n);
    if n == 0 {
        return pi;
    }
    pi.push(1.0);
    for j in 1..n {
        let prev = pi[j - 1];
        pi.push(prev * ((j - 1) as f64 - d) / j as f64);
    }
    pi
}

/// Convolution of `r` with the (1−B)^d filter and the partial sums of its
/// coefficients, so that the differenced centred series is
/// `conv[t] − μ·psum[t]`.
pub(crate) fn fracdiff_parts(r: &[f64], d: f64) -> (Vec<f64>, Vec<f64>) {
    let n = r.len();
    let pi = fracdiff_coeffs(d, n);
    let mut conv = vec![0.0; n];
    let mut psum = vec![0.0; n];
    let mut acc = 0.0;
    for t in 0..n {
        acc += pi[t];
        psum[t] = acc;
        let mut s = 0.0;
        for j in 0..=t {
            s += pi[j] * r[t - j];
        }
        conv[t] = s;
    }
    (conv, psum)
}

pub(crate) fn centred(r: &[f64], mu: f64, parts: Option<&(Vec<f64>, Vec<f64>)>) -> Vec<f64> {
    match parts {
        Some((conv, psum)) => conv.iter().zip(psum).map(|(c, s)| c - mu * s).collect(),
        None => r.iter().map(|x| x - mu).collect(),
    }
}

pub(crate) fn sample_variance(r: &[f64]) -> f64 {
    let n = r.len() as f64;
    let m = r.iter().sum::<f64>() / n;
    r.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n
}

/// Run the ARMA and GARCH recursions over the (possibly differenced)
/// centred series `w`. Pre-sample values of w and a are zero and pre-sample
/// σ² equals `sigma2_init`.
pub(crate) fn recursions(
    params: &ArmaGarchParams,
    w: &[f64],
    sigma2_init: f64,
    dist: &Prepared,
) -> Result<FilterOutput> {
    let n = w.len();
    let mut a = vec![0.0; n];
    let mut s2 = vec![0.0; n];
    let mut loglik = 0.0;
    for t in 0..n {
        let mut at = w[t];
        for (i, phi) in params.phi.iter().enumerate() {
            if t > i {
                at -= phi * w[t - i - 1];
            }
        }
        for (j, theta) in params.theta.iter().enumerate() {
            if t > j {
                at -= theta * a[t - j - 1];
            }
        }
        a[t] = at;
        let mut v = params.gamma;
        for (m, beta) in params.beta.iter().enumerate() {
            v += beta * if t > m { s2[t - m - 1] } else { sigma2_init };
        }
        for (k, alpha) in params.alpha.iter().enumerate() {
            if t > k {
                v += alpha * a[t - k - 1] * a[t - k - 1];
            }
        }
        if !(v > 0.0) || !v.is_finite() || !at.is_finite() {
            return Err(Error::Evaluation(format!("variance recursion broke down at t={t} (sigma2={v})")));
        }
        s2[t] = v;
    }
    let sigma: Vec<f64> = s2.iter().map(|v| v.sqrt()).collect();
    let eps: Vec<f64> = a.iter().zip(&sigma).map(|(a, s)| a / s).collect();
    // report shocks as ε·σ so the identity holds bit for bit
    let a: Vec<f64> = eps.iter().zip(&sigma).map(|(e, s)| e * s).collect();
    for (e, s) in eps.iter().zip(&sigma) {
        loglik += dist.ln_pdf(*e) - s.ln();
    }
    if !loglik.is_finite() {
        return Err(Error::Evaluation("log-likelihood is not finite".into()));
    }
    Ok(FilterOutput { a, sigma, eps, loglik })
}

/// Filter a return series through the model, producing shocks, conditional
/// volatilities, standardized residuals and the log-likelihood.
pub fn filter(spec: &ModelSpec, params: &ArmaGarchParams, r: &[f64]) -> Result<FilterOutput> {
    params.validate(spec)?;
    check_finite(r)?;
    if r.len() <= spec.max_lag() {
        return Err(Error::DegenerateData(format!("series of length {} is too short for {}", r.len(), spec.label())));
    }
    let dist = Prepared::new(params.dist)?;
    let parts = spec.fractional.then(|| fracdiff_parts(r, params.d));
    let w = centred(r, params.mu, parts.as_ref());
    recursions(params, &w, sample_variance(r), &dist)
}
