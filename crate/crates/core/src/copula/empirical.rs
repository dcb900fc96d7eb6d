use crate::error::{Error, Result};

use super::family::{TailEstimate, TailSource};
use super::pseudo::PseudoSample;

/// (1/T) Σ 1(U_t < u, V_t < v).
pub fn empirical_copula(s: &PseudoSample, u: f64, v: f64) -> f64 {
    let n = s.u().iter().zip(s.v()).filter(|(a, b)| **a < u && **b < v).count();
    n as f64 / s.len() as f64
}

/// (1/T) Σ 1(U_t ≥ u, V_t ≥ v).
pub fn empirical_survival(s: &PseudoSample, u: f64, v: f64) -> f64 {
    let n = s.u().iter().zip(s.v()).filter(|(a, b)| **a >= u && **b >= v).count();
    n as f64 / s.len() as f64
}

struct Fenwick(Vec<u32>);

impl Fenwick {
    fn add(&mut self, mut i: usize) {
        i += 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted positions < i.
    fn prefix(&self, mut i: usize) -> u32 {
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Empirical copula evaluated at every sample point, C_T(U_i, V_i), by an
/// offline dominance count in O(T log T).
pub fn empirical_copula_at_sample(s: &PseudoSample) -> Vec<f64> {
    let (u, v) = (s.u(), s.v());
    let n = u.len();
    let mut vs: Vec<f64> = v.to_vec();
    vs.sort_by(f64::total_cmp);
    vs.dedup();
    let vrank: Vec<usize> = v.iter().map(|x| vs.partition_point(|y| y < x)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| u[a].total_cmp(&u[b]));
    let mut tree = Fenwick(vec![0; vs.len() + 1]);
    let mut out = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && u[order[j]] == u[order[i]] {
            j += 1;
        }
        for &idx in &order[i..j] {
            out[idx] = tree.prefix(vrank[idx]) as f64 / n as f64;
        }
        for &idx in &order[i..j] {
            tree.add(vrank[idx]);
        }
        i = j;
    }
    out
}

fn check_scaling(s: &PseudoSample, x: f64, y: f64, k: usize) -> Result<f64> {
    let t = s.len();
    if k < 1 || k > t {
        return Err(Error::ScalingOutOfRange { k, t });
    }
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!("tail copula arguments must be positive, got ({x}, {y})")));
    }
    let tp1 = (t + 1) as f64;
    let kf = k as f64;
    if kf * x / tp1 > 1.0 || kf * y / tp1 > 1.0 {
        return Err(Error::Domain(format!("k*x/(T+1) and k*y/(T+1) must not exceed 1 (k={k}, x={x}, y={y})")));
    }
    Ok(tp1)
}

/// Λ̂_L(x, y) = (1/k) Σ 1(U_t ≤ kx/(T+1), V_t ≤ ky/(T+1)).
pub fn tail_copula_lower(s: &PseudoSample, x: f64, y: f64, k: usize) -> Result<f64> {
    let tp1 = check_scaling(s, x, y, k)?;
    let kf = k as f64;
    let (bu, bv) = (kf * x / tp1, kf * y / tp1);
    let n = s.u().iter().zip(s.v()).filter(|(a, b)| **a <= bu && **b <= bv).count();
    Ok(n as f64 / kf)
}

/// Λ̂_U(x, y) = (1/k) Σ 1(U_t > (T−kx)/(T+1), V_t > (T−ky)/(T+1)).
pub fn tail_copula_upper(s: &PseudoSample, x: f64, y: f64, k: usize) -> Result<f64> {
    let tp1 = check_scaling(s, x, y, k)?;
    let kf = k as f64;
    let t = s.len() as f64;
    let (bu, bv) = ((t - kf * x) / tp1, (t - kf * y) / tp1);
    let n = s.u().iter().zip(s.v()).filter(|(a, b)| **a > bu && **b > bv).count();
    Ok(n as f64 / kf)
}

/// Nonparametric tail coefficients λ̂ = Λ̂(1, 1).
pub fn tail_coeff_estimates(s: &PseudoSample, k: usize) -> Result<TailEstimate> {
    Ok(TailEstimate {
        lambda_lower: tail_copula_lower(s, 1.0, 1.0, k)?,
        lambda_upper: tail_copula_upper(s, 1.0, 1.0, k)?,
        k: Some(k),
        source: TailSource::Empirical,
    })
}

/// Default scaling factor ⌊√T⌋.
pub fn default_k(t: usize) -> usize {
    ((t as f64).sqrt().floor() as usize).max(1)
}

/// Sensitivity grid {⌊T^0.4⌋, ⌊T^0.5⌋, ⌊T^0.6⌋}.
pub fn k_grid(t: usize) -> Vec<usize> {
    let pow = |e: f64| ((t as f64).powf(e).floor() as usize).clamp(1, t.max(1));
    let mut g = vec![pow(0.4), default_k(t).min(t.max(1)), pow(0.6)];
    g.dedup();
    g
}
