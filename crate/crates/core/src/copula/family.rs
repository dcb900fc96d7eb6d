use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::brent_root;
use crate::rng::{open01, stream};
use crate::special::{self, ln_gamma};

use super::pseudo::PseudoSample;

/// Copula family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopulaFamily {
    Independent,
    Gaussian,
    StudentT,
    Clayton,
    Gumbel,
    Frank,
    Joe,
}

impl CopulaFamily {
    pub const ALL: [CopulaFamily; 7] = [
        CopulaFamily::Independent,
        CopulaFamily::Gaussian,
        CopulaFamily::StudentT,
        CopulaFamily::Clayton,
        CopulaFamily::Gumbel,
        CopulaFamily::Frank,
        CopulaFamily::Joe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CopulaFamily::Independent => "independent",
            CopulaFamily::Gaussian => "gaussian",
            CopulaFamily::StudentT => "student_t",
            CopulaFamily::Clayton => "clayton",
            CopulaFamily::Gumbel => "gumbel",
            CopulaFamily::Frank => "frank",
            CopulaFamily::Joe => "joe",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "independent" | "independence" | "indep" => Ok(CopulaFamily::Independent),
            "gaussian" | "normal" => Ok(CopulaFamily::Gaussian),
            "student_t" | "t" | "student" => Ok(CopulaFamily::StudentT),
            "clayton" => Ok(CopulaFamily::Clayton),
            "gumbel" => Ok(CopulaFamily::Gumbel),
            "frank" => Ok(CopulaFamily::Frank),
            "joe" => Ok(CopulaFamily::Joe),
            _ => Err(Error::Config(format!("unknown copula family '{s}'"))),
        }
    }

    pub fn n_params(self) -> usize {
        match self {
            CopulaFamily::Independent => 0,
            CopulaFamily::StudentT => 2,
            _ => 1,
        }
    }
}

/// A copula family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CopulaModel {
    Independent,
    Gaussian { rho: f64 },
    StudentT { rho: f64, nu: f64 },
    Clayton { theta: f64 },
    Gumbel { theta: f64 },
    Frank { theta: f64 },
    Joe { theta: f64 },
}

/// Source of a tail-dependence estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSource {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub lambda_lower: f64,
    pub lambda_upper: f64,
    /// Scaling factor for empirical estimates.
    pub k: Option<usize>,
    pub source: TailSource,
}

/// ln(u^{−θ} + v^{−θ} − 1) without overflow.
fn clayton_log_sum(u: f64, v: f64, theta: f64) -> f64 {
    let a = -theta * u.ln();
    let b = -theta * v.ln();
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp() - (-m).exp()).ln()
}

impl CopulaModel {
    pub fn family(&self) -> CopulaFamily {
        match self {
            CopulaModel::Independent => CopulaFamily::Independent,
            CopulaModel::Gaussian { .. } => CopulaFamily::Gaussian,
            CopulaModel::StudentT { .. } => CopulaFamily::StudentT,
            CopulaModel::Clayton { .. } => CopulaFamily::Clayton,
            CopulaModel::Gumbel { .. } => CopulaFamily::Gumbel,
            CopulaModel::Frank { .. } => CopulaFamily::Frank,
            CopulaModel::Joe { .. } => CopulaFamily::Joe,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            CopulaModel::Independent => vec![],
            CopulaModel::Gaussian { rho } => vec![rho],
            CopulaModel::StudentT { rho, nu } => vec![rho, nu],
            CopulaModel::Clayton { theta }
            | CopulaModel::Gumbel { theta }
            | CopulaModel::Frank { theta }
            | CopulaModel::Joe { theta } => {
                vec![theta]
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            CopulaModel::Independent => Ok(()),
            CopulaModel::Gaussian { rho } if rho.abs() < 1.0 => Ok(()),
            CopulaModel::Gaussian { rho } => bad(format!("Gaussian copula needs |rho| < 1, got {rho}")),
            CopulaModel::StudentT { rho, nu } if rho.abs() < 1.0 && nu > 0.0 && nu.is_finite() => Ok(()),
            CopulaModel::StudentT { rho, nu } => {
                bad(format!("t copula needs |rho| < 1 and nu > 0, got rho={rho}, nu={nu}"))
            }
            CopulaModel::Clayton { theta } if theta > 0.0 && theta.is_finite() => Ok(()),
            CopulaModel::Clayton { theta } => bad(format!("Clayton copula needs theta > 0, got {theta}")),
            CopulaModel::Gumbel { theta } if theta >= 1.0 && theta.is_finite() => Ok(()),
            CopulaModel::Gumbel { theta } => bad(format!("Gumbel copula needs theta >= 1, got {theta}")),
            CopulaModel::Frank { theta } if theta != 0.0 && theta.is_finite() => Ok(()),
            CopulaModel::Frank { theta } => bad(format!("Frank copula needs a finite nonzero theta, got {theta}")),
            CopulaModel::Joe { theta } if theta >= 1.0 && theta.is_finite() => Ok(()),
            CopulaModel::Joe { theta } => bad(format!("Joe copula needs theta >= 1, got {theta}")),
        }
    }

    /// C(u, v) with the boundary conditions imposed exactly.
    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        if u <= 0.0 || v <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return v.min(1.0);
        }
        if v >= 1.0 {
            return u;
        }
        let c = match *self {
            CopulaModel::Independent => u * v,
            CopulaModel::Gaussian { rho } => {
                special::bvn_cdf(special::normal_quantile(u), special::normal_quantile(v), rho)
            }
            CopulaModel::StudentT { rho, nu } => {
                special::bvt_cdf(nu, special::student_t_quantile(u, nu), special::student_t_quantile(v, nu), rho)
            }
            CopulaModel::Clayton { theta } => (-clayton_log_sum(u, v, theta) / theta).exp(),
            CopulaModel::Gumbel { theta } => {
                let s = (-u.ln()).powf(theta) + (-v.ln()).powf(theta);
                (-s.powf(1.0 / theta)).exp()
            }
            CopulaModel::Frank { theta } => {
                -((-theta * u).exp_m1() * (-theta * v).exp_m1() / (-theta).exp_m1()).ln_1p() / theta
            }
            CopulaModel::Joe { theta } => {
                let a = (1.0 - u).powf(theta);
                let b = (1.0 - v).powf(theta);
                1.0 - (a + b - a * b).powf(1.0 / theta)
            }
        };
        // Fréchet–Hoeffding bounds
        c.clamp((u + v - 1.0).max(0.0), u.min(v))
    }

    pub fn pdf(&self, u: f64, v: f64) -> f64 {
        self.ln_pdf(u, v).exp()
    }

    pub fn ln_pdf(&self, u: f64, v: f64) -> f64 {
        if !(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0) {
            return f64::NEG_INFINITY;
        }
        match *self {
            CopulaModel::Independent => 0.0,
            CopulaModel::Gaussian { rho } => {
                gaussian_ln_pdf(special::normal_quantile(u), special::normal_quantile(v), rho)
            }
            CopulaModel::StudentT { rho, nu } => {
                let c = student_t_const(nu);
                student_t_ln_pdf(special::student_t_quantile(u, nu), special::student_t_quantile(v, nu), rho, nu, c)
            }
            CopulaModel::Clayton { theta } => {
                theta.ln_1p() - (theta + 1.0) * (u.ln() + v.ln()) - (2.0 + 1.0 / theta) * clayton_log_sum(u, v, theta)
            }
            CopulaModel::Gumbel { theta } => {
                let (x, y) = (-u.ln(), -v.ln());
                let s = x.powf(theta) + y.powf(theta);
                let sr = s.powf(1.0 / theta);
                -sr - u.ln() - v.ln()
                    + (theta - 1.0) * (x.ln() + y.ln())
                    + (2.0 / theta - 2.0) * s.ln()
                    + ((theta - 1.0) / sr).ln_1p()
            }
            CopulaModel::Frank { theta } => {
                let a = -(-theta).exp_m1();
                let den = a - (-theta * u).exp_m1() * (-theta * v).exp_m1();
                (theta * a).ln() - theta * (u + v) - 2.0 * den.abs().ln()
            }
            CopulaModel::Joe { theta } => {
                let (lu, lv) = ((-u).ln_1p(), (-v).ln_1p());
                let a = (theta * lu).exp();
                let b = (theta * lv).exp();
                let s = a + b - a * b;
                (1.0 / theta - 2.0) * s.ln() + (theta - 1.0) * (lu + lv) + (theta - 1.0 + s).ln()
            }
        }
    }

    /// Conditional distribution C(v | u) = ∂C(u, v)/∂u.
    pub fn h(&self, u: f64, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if v >= 1.0 {
            return 1.0;
        }
        let u = u.clamp(1e-300, 1.0 - 1e-16);
        let r = match *self {
            CopulaModel::Independent => v,
            CopulaModel::Gaussian { rho } => {
                let (x, y) = (special::normal_quantile(u), special::normal_quantile(v));
                special::normal_cdf((y - rho * x) / (1.0 - rho * rho).sqrt())
            }
            CopulaModel::StudentT { rho, nu } => {
                let (x, y) = (special::student_t_quantile(u, nu), special::student_t_quantile(v, nu));
                let scale = ((nu + x * x) * (1.0 - rho * rho) / (nu + 1.0)).sqrt();
                special::student_t_cdf((y - rho * x) / scale, nu + 1.0)
            }
            CopulaModel::Clayton { theta } => {
                (-(theta + 1.0) * u.ln() - (1.0 + 1.0 / theta) * clayton_log_sum(u, v, theta)).exp()
            }
            CopulaModel::Gumbel { theta } => {
                let (x, y) = (-u.ln(), -v.ln());
                let s = x.powf(theta) + y.powf(theta);
                let sr = s.powf(1.0 / theta);
                (-sr + (1.0 / theta - 1.0) * s.ln() + (theta - 1.0) * x.ln() + x).exp()
            }
            CopulaModel::Frank { theta } => {
                let (eu, ev) = ((-theta * u).exp_m1(), (-theta * v).exp_m1());
                (-theta * u).exp() * ev / ((-theta).exp_m1() + eu * ev)
            }
            CopulaModel::Joe { theta } => {
                let (a, b) = ((1.0 - u).powf(theta), (1.0 - v).powf(theta));
                (1.0 - u).powf(theta - 1.0) * (1.0 - b) * (a + b - a * b).powf(1.0 / theta - 1.0)
            }
        };
        r.clamp(0.0, 1.0)
    }

    /// Solve C(v | u) = w for v.
    pub fn h_inverse(&self, u: f64, w: f64) -> f64 {
        let v = match *self {
            CopulaModel::Independent => w,
            CopulaModel::Gaussian { rho } => {
                let x = special::normal_quantile(u);
                special::normal_cdf(rho * x + (1.0 - rho * rho).sqrt() * special::normal_quantile(w))
            }
            CopulaModel::StudentT { rho, nu } => {
                let x = special::student_t_quantile(u, nu);
                let scale = ((nu + x * x) * (1.0 - rho * rho) / (nu + 1.0)).sqrt();
                special::student_t_cdf(rho * x + scale * special::student_t_quantile(w, nu + 1.0), nu)
            }
            CopulaModel::Clayton { theta } => {
                let t = (w.powf(-theta / (1.0 + theta)) - 1.0) * u.powf(-theta) + 1.0;
                t.powf(-1.0 / theta)
            }
            CopulaModel::Frank { theta } => {
                let num = w * (-theta).exp_m1();
                let den = w + (1.0 - w) * (-theta * u).exp();
                -(num / den).ln_1p() / theta
            }
            CopulaModel::Gumbel { theta } => gumbel_h_inverse(u, w, theta),
            CopulaModel::Joe { .. } => {
                let g = |v: f64| self.h(u, v) - w;
                let lo = 1e-300;
                let hi = 1.0 - 1e-16;
                if g(lo) >= 0.0 {
                    lo
                } else if g(hi) <= 0.0 {
                    hi
                } else {
                    brent_root(g, lo, hi, 1e-15).unwrap_or(0.5)
                }
            }
        };
        v.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
    }

    /// Population Kendall's τ.
    pub fn tau(&self) -> f64 {
        match *self {
            CopulaModel::Independent => 0.0,
            CopulaModel::Gaussian { rho } | CopulaModel::StudentT { rho, .. } => 2.0 * rho.asin() / PI,
            CopulaModel::Clayton { theta } => theta / (theta + 2.0),
            CopulaModel::Gumbel { theta } => 1.0 - 1.0 / theta,
            CopulaModel::Frank { theta } => frank_tau(theta),
            CopulaModel::Joe { theta } => joe_tau(theta),
        }
    }

    /// Closed-form lower and upper tail-dependence coefficients.
    pub fn tail_coefficients(&self) -> TailEstimate {
        let (lo, up) = match *self {
            CopulaModel::Independent | CopulaModel::Gaussian { .. } | CopulaModel::Frank { .. } => (0.0, 0.0),
            CopulaModel::StudentT { rho, nu } => {
                let l = 2.0 * special::student_t_cdf(-((nu + 1.0) * (1.0 - rho) / (1.0 + rho)).sqrt(), nu + 1.0);
                (l, l)
            }
            CopulaModel::Clayton { theta } => (2f64.powf(-1.0 / theta), 0.0),
            CopulaModel::Gumbel { theta } | CopulaModel::Joe { theta } => (0.0, 2.0 - 2f64.powf(1.0 / theta)),
        };
        TailEstimate { lambda_lower: lo, lambda_upper: up, k: None, source: TailSource::Analytic }
    }

    /// Draw `n` pairs reproducibly from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<PseudoSample> {
        self.validate()?;
        let mut rng = stream(seed, 0);
        let (u, v) = self.sample_with(&mut rng, n);
        PseudoSample::new(u, v)
    }

    /// Elliptical families use the correlation transform, the others the
    /// conditional-distribution method.
    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> (Vec<f64>, Vec<f64>) {
        let lo = f64::MIN_POSITIVE;
        let hi = 1.0 - f64::EPSILON / 2.0;
        let mut us = Vec::with_capacity(n);
        let mut vs = Vec::with_capacity(n);
        match *self {
            CopulaModel::Gaussian { rho } => {
                let s = (1.0 - rho * rho).sqrt();
                for _ in 0..n {
                    let z1: f64 = rng.sample(StandardNormal);
                    let z2: f64 = rng.sample(StandardNormal);
                    us.push(special::normal_cdf(z1).clamp(lo, hi));
                    vs.push(special::normal_cdf(rho * z1 + s * z2).clamp(lo, hi));
                }
            }
            CopulaModel::StudentT { rho, nu } => {
                let s = (1.0 - rho * rho).sqrt();
                let chi = ChiSquared::new(nu).expect("validated degrees of freedom");
                for _ in 0..n {
                    let z1: f64 = rng.sample(StandardNormal);
                    let z2: f64 = rng.sample(StandardNormal);
                    let w = (chi.sample(rng) / nu).sqrt();
                    us.push(special::student_t_cdf(z1 / w, nu).clamp(lo, hi));
                    vs.push(special::student_t_cdf((rho * z1 + s * z2) / w, nu).clamp(lo, hi));
                }
            }
            _ => {
                for _ in 0..n {
                    let u = open01(rng);
                    let w = open01(rng);
                    us.push(u);
                    vs.push(self.h_inverse(u, w));
                }
            }
        }
        (us, vs)
    }
}

pub(crate) fn gaussian_ln_pdf(x: f64, y: f64, rho: f64) -> f64 {
    let r2 = 1.0 - rho * rho;
    -0.5 * r2.ln() - (rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * r2)
}

/// ln of the bivariate t normalizing constant, excluding the ρ term.
pub(crate) fn student_t_const(nu: f64) -> f64 {
    ln_gamma(0.5 * (nu + 2.0)).unwrap_or(f64::NAN) - ln_gamma(0.5 * nu).unwrap_or(f64::NAN) - (nu * PI).ln()
}

/// t-copula log-density at t-quantiles (x, y).
pub(crate) fn student_t_ln_pdf(x: f64, y: f64, rho: f64, nu: f64, c: f64) -> f64 {
    let r2 = 1.0 - rho * rho;
    let q = (x * x - 2.0 * rho * x * y + y * y) / (nu * r2);
    let joint = c - 0.5 * r2.ln() - 0.5 * (nu + 2.0) * q.ln_1p();
    joint - special::student_t_ln_pdf(x, nu) - special::student_t_ln_pdf(y, nu)
}

/// Solve z + (θ−1) ln z = x + (θ−1) ln x − ln w for z ≥ x, then map back.
fn gumbel_h_inverse(u: f64, w: f64, theta: f64) -> f64 {
    let x = -u.ln();
    if theta == 1.0 {
        return w;
    }
    let c = x + (theta - 1.0) * x.ln() - w.ln();
    let mut z = x;
    for _ in 0..200 {
        let g = z + (theta - 1.0) * z.ln() - c;
        let step = g / (1.0 + (theta - 1.0) / z);
        let next = (z - step).max(x);
        if (next - z).abs() <= 1e-15 * next.max(1e-300) {
            z = next;
            break;
        }
        z = next;
    }
    let y = (z.powf(theta) - x.powf(theta)).max(0.0).powf(1.0 / theta);
    (-y).exp()
}

pub(crate) fn frank_tau(theta: f64) -> f64 {
    if theta.abs() < 1e-2 {
        let t2 = theta * theta;
        return theta * (1.0 / 9.0 - t2 / 900.0 + t2 * t2 / 52920.0);
    }
    // 1 − D₁(a) = (1/a) ∫₀^a (1 − t/(eᵗ−1)) dt has no cancellation near 0
    let a = theta.abs();
    let integrand = |t: f64| if t == 0.0 { 0.0 } else { 1.0 - t / t.exp_m1() };
    let one_minus_d1 = crate::quad::integrate(integrand, 0.0, a, 1e-300, 1e-14) / a;
    theta.signum() * (1.0 - 4.0 / a * one_minus_d1)
}

pub(crate) fn joe_tau(theta: f64) -> f64 {
    if theta == 1.0 {
        return 0.0;
    }
    let a = 1.0 + 2.0 / theta;
    if (theta - 2.0).abs() < 0.1 {
        // removable singularity at θ = 2: (ψ(a) − ψ(2))/(a − 2) = Σ_k 1/((k+2)(k+a)),
        // summed directly to N and closed with an Euler–Maclaurin tail
        const N: usize = 200;
        let f = |k: f64| 1.0 / ((k + 2.0) * (k + a));
        let head: f64 = (0..N).map(|k| f(k as f64)).sum();
        let n = N as f64;
        let y = (a - 2.0) / (n + 2.0);
        let ln1p_ratio = if y.abs() < 1e-8 { 1.0 - 0.5 * y } else { y.ln_1p() / y };
        let df = -(1.0 / ((n + 2.0).powi(2) * (n + a)) + 1.0 / ((n + 2.0) * (n + a).powi(2)));
        let tail = ln1p_ratio / (n + 2.0) + 0.5 * f(n) - df / 12.0;
        return 1.0 - 2.0 / theta * (head + tail);
    }
    1.0 + 2.0 / (2.0 - theta) * (special::digamma(2.0) - special::digamma(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;

    fn grid() -> Vec<CopulaModel> {
        vec![
            CopulaModel::Independent,
            CopulaModel::Gaussian { rho: 0.6 },
            CopulaModel::Gaussian { rho: -0.4 },
            CopulaModel::StudentT { rho: 0.5, nu: 4.0 },
            CopulaModel::StudentT { rho: -0.3, nu: 7.5 },
            CopulaModel::Clayton { theta: 0.5 },
            CopulaModel::Clayton { theta: 5.0 },
            CopulaModel::Gumbel { theta: 1.0 },
            CopulaModel::Gumbel { theta: 2.5 },
            CopulaModel::Frank { theta: -5.0 },
            CopulaModel::Frank { theta: 10.0 },
            CopulaModel::Joe { theta: 1.5 },
            CopulaModel::Joe { theta: 3.0 },
        ]
    }

    #[test]
    fn clayton_hand_value() {
        let c = CopulaModel::Clayton { theta: 2.0 }.cdf(0.5, 0.5);
        assert!((c - 7f64.powf(-0.5)).abs() < 1e-14);
        assert!((CopulaModel::Independent.cdf(0.3, 0.7) - 0.21).abs() < 1e-15);
    }

    #[test]
    fn margins() {
        for m in grid() {
            for &u in &[1e-6, 0.1, 0.37, 0.9, 1.0 - 1e-9] {
                assert!((m.cdf(u, 1.0) - u).abs() < 1e-12);
                assert!((m.cdf(1.0, u) - u).abs() < 1e-12);
                assert_eq!(m.cdf(u, 0.0), 0.0);
                assert_eq!(m.cdf(0.0, u), 0.0);
                // near-boundary continuity of the closed forms
                assert!((m.cdf(u, 1.0 - 1e-12) - u).abs() < 1e-9, "{m:?} u={u}");
            }
        }
    }

    #[test]
    fn density_integrates_to_cdf() {
        // C(a, b) = ∫₀^a ∫₀^b c(u, v) dv du, checked by nested quadrature
        for m in grid() {
            let (a, b) = (0.35, 0.8);
            let inner = |u: f64| quad::integrate(|v| m.pdf(u, v), 1e-12, b, 1e-11, 1e-9);
            let c = quad::integrate(inner, 1e-12, a, 1e-10, 1e-8);
            assert!((c - m.cdf(a, b)).abs() < 2e-6, "{m:?}: {c} vs {}", m.cdf(a, b));
        }
    }

    #[test]
    fn h_is_derivative_of_cdf() {
        for m in grid() {
            for &(u, v) in &[(0.2, 0.3), (0.7, 0.4), (0.5, 0.95)] {
                let e = 1e-6;
                let num = (m.cdf(u + e, v) - m.cdf(u - e, v)) / (2.0 * e);
                assert!((num - m.h(u, v)).abs() < 1e-5, "{m:?} at ({u},{v}): {num} vs {}", m.h(u, v));
                let w = m.h(u, v);
                assert!((m.h_inverse(u, w) - v).abs() < 1e-7, "{m:?} inverse");
            }
        }
    }

    #[test]
    fn tau_matches_integral_definition() {
        // τ = 4 ∫∫ C dC − 1 = 1 − 4 ∫∫ (∂C/∂u)(∂C/∂v) du dv
        for m in grid() {
            let f = |u: f64| {
                quad::integrate(
                    |v| {
                        let hu = m.h(u, v);
                        let hv = match m {
                            CopulaModel::Independent => u,
                            _ => {
                                let e = 1e-7 * v.min(1.0 - v).max(1e-9);
                                (m.cdf(u, v + e) - m.cdf(u, v - e)) / (2.0 * e)
                            }
                        };
                        hu * hv
                    },
                    1e-9,
                    1.0 - 1e-9,
                    1e-9,
                    1e-7,
                )
            };
            let tau = 1.0 - 4.0 * quad::integrate(f, 1e-9, 1.0 - 1e-9, 1e-8, 1e-6);
            assert!((tau - m.tau()).abs() < 2e-4, "{m:?}: {tau} vs {}", m.tau());
        }
    }

    #[test]
    fn joe_tau_continuous_through_two() {
        let at = joe_tau(2.0);
        assert!((at - (2.0 - PI * PI / 6.0)).abs() < 1e-12);
        // reference values from 40-digit evaluation of the digamma form
        let reference = [
            (1.9991, 0.354_866_572_968_875_5),
            (2.0009, 0.355_265_162_461_54),
            (2.0002, 0.355_110_217_636_956_3),
            (1.5, 0.219_272_460_477_093_8),
            (3.0, 0.517_962_498_229_888_8),
        ];
        for (t, want) in reference {
            assert!((joe_tau(t) - want).abs() < 1e-11, "theta {t}: {}", joe_tau(t));
        }
    }

    #[test]
    fn frank_tau_series_joins_closed_form() {
        // closed form through the Debye function on both sides of the switch
        let closed = |t: f64| 1.0 - 4.0 / t * (1.0 - special::debye1(t));
        for &t in &[0.0099, 0.0101, 0.5, -2.0] {
            assert!((frank_tau(t) - closed(t)).abs() < 1e-10, "theta {t}");
        }
        assert!((frank_tau(-3.0) + frank_tau(3.0)).abs() < 1e-12);
    }

    #[test]
    fn analytic_tails() {
        let g = CopulaModel::Gumbel { theta: 1.080 }.tail_coefficients();
        assert!((g.lambda_upper - 0.1000).abs() < 5e-4);
        let c = CopulaModel::Clayton { theta: 2.0 }.tail_coefficients();
        assert!((c.lambda_lower - 0.5f64.sqrt()).abs() < 1e-15);
        let n = CopulaModel::Gaussian { rho: 0.9 }.tail_coefficients();
        assert_eq!((n.lambda_lower, n.lambda_upper), (0.0, 0.0));
    }
}
