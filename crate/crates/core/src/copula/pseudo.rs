use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};

/// Paired observations on the open unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoSample {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl PseudoSample {
    /// Wrap paired values, checking that both lie strictly inside (0, 1).
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch(u.len(), v.len()));
        }
        if u.is_empty() {
            return Err(Error::Empty("pseudo-sample has no observations".into()));
        }
        for x in u.iter().chain(&v) {
            if !(*x > 0.0 && *x < 1.0) {
                return Err(Error::Domain(format!("pseudo-observation {x} is outside (0,1)")));
            }
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

/// Ranks 1..n with ties replaced by their average rank.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Rank transform both series to rank/(T+1).
pub fn pseudo_obs(x: &[f64], y: &[f64]) -> Result<PseudoSample> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(Error::DegenerateData("need at least two observations for ranks".into()));
    }
    check_finite(x)?;
    check_finite(y)?;
    let scale = (x.len() + 1) as f64;
    let u = average_ranks(x).into_iter().map(|r| r / scale).collect();
    let v = average_ranks(y).into_iter().map(|r| r / scale).collect();
    Ok(PseudoSample { u, v })
}

/// Merge sort counting inversions (pairs i<j with a[i] > a[j]).
fn count_swaps(a: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = count_swaps(&mut a[..mid], &mut buf[..mid]) + count_swaps(&mut a[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if a[j] < a[i] {
            buf[k] = a[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = a[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&a[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&a[j..n]);
    a.copy_from_slice(&buf[..n]);
    swaps
}

fn tied_pairs(sorted: &[f64]) -> u64 {
    let mut total = 0u64;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        total += m * (m - 1) / 2;
        i = j;
    }
    total
}

/// Kendall's τ_b in O(T log T) (Knight's algorithm).
pub fn kendall_tau_xy(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));
    let n0 = (n as u64) * (n as u64 - 1) / 2;
    let xs: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
    let mut ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let n1 = tied_pairs(&xs);
    // pairs tied in both coordinates
    let mut n3 = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && xs[j] == xs[i] && ys[j] == ys[i] {
            j += 1;
        }
        let m = (j - i) as u64;
        n3 += m * (m - 1) / 2;
        i = j;
    }
    let mut buf = vec![0.0; n];
    let swaps = count_swaps(&mut ys, &mut buf);
    let n2 = tied_pairs(&ys);
    let num = n0 as f64 - n1 as f64 - n2 as f64 + n3 as f64 - 2.0 * swaps as f64;
    let den = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    if den == 0.0 {
        return 0.0;
    }
    (num / den).clamp(-1.0, 1.0)
}

pub fn kendall_tau(s: &PseudoSample) -> f64 {
    kendall_tau_xy(&s.u, &s.v)
}

/// Pearson correlation of the rank vectors.
pub fn spearman_rho(s: &PseudoSample) -> f64 {
    let ru = average_ranks(&s.u);
    let rv = average_ranks(&s.v);
    let n = ru.len() as f64;
    let (mu, mv) = (ru.iter().sum::<f64>() / n, rv.iter().sum::<f64>() / n);
    let (mut suv, mut suu, mut svv) = (0.0, 0.0, 0.0);
    for (a, b) in ru.iter().zip(&rv) {
        suv += (a - mu) * (b - mv);
        suu += (a - mu) * (a - mu);
        svv += (b - mv) * (b - mv);
    }
    if suu == 0.0 || svv == 0.0 {
        return 0.0;
    }
    (suv / (suu * svv).sqrt()).clamp(-1.0, 1.0)
}

/// Elliptical-copula correlation implied by Kendall's τ.
pub fn tau_to_rho(tau: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * tau).sin()
}

/// Gaussian-copula correlation implied by Spearman's ρ_s: 2 sin(πρ_s/6).
pub fn rho_s_to_rho(rho_s: f64) -> f64 {
    2.0 * (std::f64::consts::PI * rho_s / 6.0).sin()
}
