//! Standardized innovation laws (mean 0, variance 1) for the GARCH filter:
//! Normal, Student-t, GED and the standardized generalized hyperbolic.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optim::brent_min;
use crate::quad;
use crate::rng::{open01, stream};
use crate::special::{self, ln_bessel_k};

/// Innovation distribution family with its shape parameters.
///
/// `Sghyd` uses the (shape ζ, skew ρ, index λ) parametrization: ζ > 0 is
/// δ·√(α²−β²), ρ = β/α ∈ (−1, 1), and λ is the GH index. The remaining GH
/// parameters follow from the mean-zero, unit-variance constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InnovationDist {
    Normal,
    StudentT { nu: f64 },
    Ged { shape: f64 },
    Sghyd { shape: f64, skew: f64, lambda: f64 },
}

/// Family tag without parameters, used in model specifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum DistFamily {
    Normal,
    StudentT,
    Ged,
    Sghyd,
}

impl DistFamily {
    pub fn name(self) -> &'static str {
        match self {
            DistFamily::Normal => "normal",
            DistFamily::StudentT => "student_t",
            DistFamily::Ged => "ged",
            DistFamily::Sghyd => "sghyd",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "norm" | "gaussian" => Ok(DistFamily::Normal),
            "student_t" | "std" | "t" | "student" => Ok(DistFamily::StudentT),
            "ged" => Ok(DistFamily::Ged),
            "sghyd" | "ghyp" | "gh" => Ok(DistFamily::Sghyd),
            other => Err(Error::Config(format!("unknown distribution family '{other}'"))),
        }
    }

    /// Number of shape parameters.
    pub fn n_params(self) -> usize {
        match self {
            DistFamily::Normal => 0,
            DistFamily::StudentT | DistFamily::Ged => 1,
            DistFamily::Sghyd => 3,
        }
    }

    /// Map an unconstrained vector onto a valid distribution.
    pub(crate) fn with_free(self, z: &[f64]) -> InnovationDist {
        match self {
            DistFamily::Normal => InnovationDist::Normal,
            DistFamily::StudentT => InnovationDist::StudentT { nu: 2.0 + z[0].clamp(-30.0, 30.0).exp() },
            DistFamily::Ged => InnovationDist::Ged { shape: z[0].clamp(-30.0, 30.0).exp() },
            DistFamily::Sghyd => InnovationDist::Sghyd {
                shape: z[0].clamp(-30.0, 30.0).exp(),
                skew: z[1].tanh() * 0.999_999,
                lambda: 10.0 * (z[2] / 10.0).tanh(),
            },
        }
    }

    /// Starting point (unconstrained) for estimation.
    pub(crate) fn free_start(self) -> Vec<f64> {
        match self {
            DistFamily::Normal => vec![],
            DistFamily::StudentT => vec![(8.0f64 - 2.0).ln()],
            DistFamily::Ged => vec![1.5f64.ln()],
            DistFamily::Sghyd => vec![1.0f64.ln(), 0.0, -0.5],
        }
    }
}

impl InnovationDist {
    pub fn family(&self) -> DistFamily {
        match self {
            InnovationDist::Normal => DistFamily::Normal,
            InnovationDist::StudentT { .. } => DistFamily::StudentT,
            InnovationDist::Ged { .. } => DistFamily::Ged,
            InnovationDist::Sghyd { .. } => DistFamily::Sghyd,
        }
    }

    /// Parameter values in a fixed order (empty for Normal).
    pub fn params(&self) -> Vec<f64> {
        match *self {
            InnovationDist::Normal => vec![],
            InnovationDist::StudentT { nu } => vec![nu],
            InnovationDist::Ged { shape } => vec![shape],
            InnovationDist::Sghyd { shape, skew, lambda } => vec![shape, skew, lambda],
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            InnovationDist::Normal => &[],
            InnovationDist::StudentT { .. } => &["nu"],
            InnovationDist::Ged { .. } => &["shape"],
            InnovationDist::Sghyd { .. } => &["shape", "skew", "lambda"],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InnovationDist::Normal => Ok(()),
            InnovationDist::StudentT { nu } if nu > 2.0 && nu.is_finite() => Ok(()),
            InnovationDist::StudentT { nu } => {
                Err(Error::InvalidParameter(format!("standardized Student-t needs nu > 2, got {nu}")))
            }
            InnovationDist::Ged { shape } if shape > 0.0 && shape.is_finite() => Ok(()),
            InnovationDist::Ged { shape } => {
                Err(Error::InvalidParameter(format!("GED shape must be > 0, got {shape}")))
            }
            InnovationDist::Sghyd { shape, skew, lambda } => {
                if !(shape > 0.0 && shape.is_finite()) {
                    return Err(Error::InvalidParameter(format!("SGHYD shape must be > 0, got {shape}")));
                }
                if !(skew.abs() < 1.0) {
                    return Err(Error::InvalidParameter(format!("SGHYD skew must lie in (-1, 1), got {skew}")));
                }
                if !(lambda.abs() <= 18.0) {
                    return Err(Error::InvalidParameter(format!(
                        "SGHYD lambda must satisfy |lambda| <= 18, got {lambda}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Classical generalized-hyperbolic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhParams {
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub mu: f64,
}

impl GhParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > self.beta.abs()) || !(self.delta > 0.0) || !self.mu.is_finite() {
            return Err(Error::InvalidParameter(format!("invalid GH parameters {self:?}")));
        }
        Ok(())
    }

    fn gamma(&self) -> f64 {
        (self.alpha * self.alpha - self.beta * self.beta).sqrt()
    }

    /// Mean from the GH moment formula.
    pub fn mean(&self) -> Result<f64> {
        let g = self.gamma();
        let z = self.delta * g;
        let r1 = (ln_bessel_k(self.lambda + 1.0, z)? - ln_bessel_k(self.lambda, z)?).exp();
        Ok(self.mu + self.beta * self.delta * r1 / g)
    }

    /// Variance from the GH moment formula.
    pub fn variance(&self) -> Result<f64> {
        let g = self.gamma();
        let z = self.delta * g;
        let lk = ln_bessel_k(self.lambda, z)?;
        let r1 = (ln_bessel_k(self.lambda + 1.0, z)? - lk).exp();
        let r2 = (ln_bessel_k(self.lambda + 2.0, z)? - lk).exp();
        Ok(self.delta * r1 / g + self.beta * self.beta * self.delta * self.delta / (g * g) * (r2 - r1 * r1))
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        self.ln_norm_const().map(|c| self.ln_kernel(c, x)).unwrap_or(f64::NEG_INFINITY)
    }

    fn ln_norm_const(&self) -> Result<f64> {
        let g = self.gamma();
        Ok(self.lambda * (g / self.delta).ln() - 0.5 * (2.0 * PI).ln() - ln_bessel_k(self.lambda, self.delta * g)?)
    }

    fn ln_kernel(&self, c: f64, x: f64) -> f64 {
        let dx = x - self.mu;
        let q = (self.delta * self.delta + dx * dx).sqrt();
        match ln_bessel_k(self.lambda - 0.5, self.alpha * q) {
            Ok(lk) => c + lk - (0.5 - self.lambda) * (q / self.alpha).ln() + self.beta * dx,
            Err(_) => f64::NEG_INFINITY,
        }
    }
}

/// Map (shape ζ, skew ρ, index λ) to the classical GH parameters of the
/// mean-zero, unit-variance member of the family.
///
/// With R₁ = K_{λ+1}(ζ)/K_λ(ζ) and R₂ = K_{λ+2}(ζ)/K_λ(ζ) the unit-variance
/// condition has the closed form
/// α² = ζR₁/(1−ρ²) + ρ²ζ²(R₂−R₁²)/(1−ρ²)², after which β = ρα,
/// δ = ζ/(α√(1−ρ²)) and μ = −ρδR₁/√(1−ρ²).
pub fn standardize_gh(shape: f64, skew: f64, lambda: f64) -> Result<GhParams> {
    InnovationDist::Sghyd { shape, skew, lambda }.validate()?;
    let zeta = shape;
    let s2 = 1.0 - skew * skew;
    let lk = ln_bessel_k(lambda, zeta)?;
    let r1 = (ln_bessel_k(lambda + 1.0, zeta)? - lk).exp();
    let r2 = (ln_bessel_k(lambda + 2.0, zeta)? - lk).exp();
    let a2 = zeta * r1 / s2 + skew * skew * zeta * zeta * (r2 - r1 * r1) / (s2 * s2);
    if !(a2 > 0.0) || !a2.is_finite() {
        return Err(Error::NoSolution(format!(
            "no standardized GH member for shape={shape}, skew={skew}, lambda={lambda}"
        )));
    }
    let alpha = a2.sqrt();
    let beta = skew * alpha;
    let delta = zeta / (alpha * s2.sqrt());
    let mu = -skew * delta * r1 / s2.sqrt();
    let p = GhParams { lambda, alpha, beta, delta, mu };
    if p.validate().is_err() || !beta.is_finite() || !delta.is_finite() {
        return Err(Error::NoSolution(format!("standardization produced {p:?}")));
    }
    Ok(p)
}

/// A distribution with its normalizing constants precomputed.
#[derive(Debug, Clone)]
pub struct Prepared {
    dist: InnovationDist,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Normal,
    StudentT { nu: f64, scale: f64, ln_c: f64 },
    Ged { shape: f64, lambda: f64, ln_c: f64 },
    Gh { p: GhParams, ln_c: f64, mode: f64, cdf_mode: f64 },
}

const CDF_TOL: f64 = 1e-13;

impl Prepared {
    pub fn new(dist: InnovationDist) -> Result<Self> {
        dist.validate()?;
        let kind = match dist {
            InnovationDist::Normal => Kind::Normal,
            InnovationDist::StudentT { nu } => {
                let scale = (nu / (nu - 2.0)).sqrt();
                let ln_c = special::ln_gamma(0.5 * (nu + 1.0))? - special::ln_gamma(0.5 * nu)? - 0.5 * (nu * PI).ln()
                    + scale.ln();
                Kind::StudentT { nu, scale, ln_c }
            }
            InnovationDist::Ged { shape } => {
                let lambda = (2f64.powf(-2.0 / shape)
                    * (special::ln_gamma(1.0 / shape)? - special::ln_gamma(3.0 / shape)?).exp())
                .sqrt();
                let ln_c = shape.ln() - lambda.ln() - (1.0 + 1.0 / shape) * 2f64.ln() - special::ln_gamma(1.0 / shape)?;
                Kind::Ged { shape, lambda, ln_c }
            }
            InnovationDist::Sghyd { shape, skew, lambda } => {
                let p = standardize_gh(shape, skew, lambda)?;
                let ln_c = p.ln_norm_const()?;
                let kern = |x: f64| -p.ln_kernel(ln_c, x);
                // GH densities are unimodal; search a generous window
                let (mode, _) = brent_min(kern, -20.0, 20.0, 1e-10);
                let mut prep = Prepared { dist, kind: Kind::Gh { p, ln_c, mode, cdf_mode: 0.0 } };
                let left = quad::integrate_lower(|x| prep.pdf(x), mode, 1e-15, CDF_TOL);
                if let Kind::Gh { cdf_mode, .. } = &mut prep.kind {
                    *cdf_mode = left;
                }
                return Ok(prep);
            }
        };
        Ok(Prepared { dist, kind })
    }

    pub fn dist(&self) -> InnovationDist {
        self.dist
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Normal => -0.5 * x * x - 0.5 * (2.0 * PI).ln(),
            Kind::StudentT { nu, scale, ln_c } => {
                let y = x * scale;
                ln_c - 0.5 * (nu + 1.0) * (y * y / nu).ln_1p()
            }
            Kind::Ged { shape, lambda, ln_c } => ln_c - 0.5 * (x / lambda).abs().powf(*shape),
            Kind::Gh { p, ln_c, .. } => p.ln_kernel(*ln_c, x),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x == f64::NEG_INFINITY {
            return 0.0;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        match &self.kind {
            Kind::Normal => special::normal_cdf(x),
            Kind::StudentT { nu, scale, .. } => special::student_t_cdf(x * scale, *nu),
            Kind::Ged { shape, lambda, .. } => {
                let z = 0.5 * (x.abs() / lambda).powf(*shape);
                let half = 0.5 * special::gamma_lr(1.0 / shape, z);
                if x >= 0.0 {
                    0.5 + half
                } else {
                    0.5 - half
                }
            }
            Kind::Gh { mode, cdf_mode, .. } => {
                let f = |t: f64| self.pdf(t);
                let v = if x <= *mode {
                    quad::integrate_lower(f, x, 1e-300, CDF_TOL)
                } else {
                    let tail = quad::integrate_upper(f, x, 1e-300, CDF_TOL);
                    // choose the numerically smaller piece
                    if tail < 0.5 {
                        1.0 - tail
                    } else {
                        cdf_mode + quad::integrate(f, *mode, x, 1e-16, CDF_TOL)
                    }
                };
                v.clamp(0.0, 1.0)
            }
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile probability must lie in (0,1), got {p}")));
        }
        match &self.kind {
            Kind::Normal => Ok(special::normal_quantile(p)),
            Kind::StudentT { nu, scale, .. } => Ok(special::student_t_quantile(p, *nu) / scale),
            Kind::Ged { .. } => {
                let start = special::normal_quantile(p);
                special::invert_cdf(|x| self.cdf(x), p, start, 1.0, 1e-14)
            }
            Kind::Gh { mode, .. } => {
                let start = *mode + special::normal_quantile(p);
                special::invert_cdf(|x| self.cdf(x), p, start, 1.0, 1e-14)
            }
        }
    }

    /// Quantiles for a sorted, increasing probability vector. For laws whose
    /// CDF needs quadrature this sweeps left to right and integrates the
    /// density only between neighbouring quantiles.
    pub fn quantiles_sorted(&self, ps: &[f64]) -> Result<Vec<f64>> {
        if !matches!(self.kind, Kind::Gh { .. }) {
            return ps.iter().map(|&p| self.quantile(p)).collect();
        }
        let mut out = Vec::with_capacity(ps.len());
        let mut anchor: Option<(f64, f64)> = None;
        for &p in ps {
            let x = match anchor {
                None => self.quantile(p)?,
                Some((xa, ca)) => {
                    if p <= ca {
                        self.quantile(p)?
                    } else {
                        let g = |x: f64| ca + quad::integrate(|t| self.pdf(t), xa, x, 1e-16, 1e-12) - p;
                        let mut hi = xa + 0.1;
                        let mut step = 0.1;
                        while g(hi) < 0.0 {
                            step *= 2.0;
                            hi += step;
                            if step > 1e6 {
                                return Err(Error::NoSolution(format!("cannot bracket quantile p={p}")));
                            }
                        }
                        crate::optim::brent_root(g, xa, hi, 1e-12)?
                    }
                }
            };
            anchor = Some((x, p));
            out.push(x);
        }
        Ok(out)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Normal => rng.sample(StandardNormal),
            Kind::StudentT { nu, scale, .. } => {
                let z: f64 = rng.sample(StandardNormal);
                let g = Gamma::new(0.5 * nu, 2.0).expect("valid gamma");
                let w: f64 = g.sample(rng);
                z / (w / nu).sqrt() / scale
            }
            Kind::Ged { shape, lambda, .. } => {
                let g = Gamma::new(1.0 / shape, 1.0).expect("valid gamma");
                let z: f64 = g.sample(rng);
                let mag = lambda * (2.0 * z).powf(1.0 / shape);
                if rng.random::<bool>() {
                    mag
                } else {
                    -mag
                }
            }
            Kind::Gh { .. } => unreachable!("GH draws go through the ratio-of-uniforms sampler"),
        }
    }

    /// Draw `n` reproducible innovations.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = stream(seed, 0);
        match &self.kind {
            Kind::Gh { mode, .. } => {
                let rou = RatioOfUniforms::new(|x| self.ln_pdf(x), *mode)?;
                Ok((0..n).map(|_| rou.draw(&mut rng)).collect())
            }
            _ => Ok((0..n).map(|_| self.sample_with(&mut rng)).collect()),
        }
    }
}

/// Mode-shifted ratio-of-uniforms sampler for a unimodal log-density.
pub(crate) struct RatioOfUniforms<F: Fn(f64) -> f64> {
    ln_f: F,
    mode: f64,
    ln_umax: f64,
    vmin: f64,
    vmax: f64,
}

impl<F: Fn(f64) -> f64> RatioOfUniforms<F> {
    pub(crate) fn new(ln_f: F, mode: f64) -> Result<Self> {
        let ln_umax = 0.5 * ln_f(mode);
        // maximise ln|y| + ½ ln f(mode + y) on each side of the mode
        let side = |sign: f64| -> Result<f64> {
            let g = |t: f64| {
                let y = sign * t.exp();
                -(y.abs().ln() + 0.5 * ln_f(mode + y))
            };
            let (t, v) = brent_min(g, -20.0, 6.0, 1e-9);
            if !v.is_finite() {
                return Err(Error::Evaluation("ratio-of-uniforms bound".into()));
            }
            let _ = t;
            Ok((-v).exp() * 1.000_001)
        };
        let vmax = side(1.0)?;
        let vmin = -side(-1.0)?;
        Ok(Self { ln_f, mode, ln_umax, vmin, vmax })
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u = open01(rng) * self.ln_umax.exp();
            let v = self.vmin + (self.vmax - self.vmin) * open01(rng);
            let x = self.mode + v / u;
            if 2.0 * u.ln() <= (self.ln_f)(x) {
                return x;
            }
        }
    }
}

pub fn pdf(d: InnovationDist, x: f64) -> Result<f64> {
    Ok(Prepared::new(d)?.pdf(x))
}

pub fn cdf(d: InnovationDist, x: f64) -> Result<f64> {
    Ok(Prepared::new(d)?.cdf(x))
}

pub fn quantile(d: InnovationDist, p: f64) -> Result<f64> {
    Prepared::new(d)?.quantile(p)
}

pub fn sample(d: InnovationDist, n: usize, seed: u64) -> Result<Vec<f64>> {
    Prepared::new(d)?.sample(n, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<InnovationDist> {
        vec![
            InnovationDist::Normal,
            InnovationDist::StudentT { nu: 3.363 },
            InnovationDist::StudentT { nu: 8.0 },
            InnovationDist::Ged { shape: 0.8 },
            InnovationDist::Ged { shape: 1.5 },
            InnovationDist::Sghyd { shape: 0.25, skew: 0.0035, lambda: 0.3665 },
            InnovationDist::Sghyd { shape: 0.2501, skew: -0.032714, lambda: -1.1811 },
            InnovationDist::Sghyd { shape: 2.0, skew: 0.5, lambda: -0.5 },
        ]
    }

    fn moment(p: &Prepared, k: i32) -> f64 {
        let f = |x: f64| x.powi(k) * p.pdf(x);
        quad::integrate_lower(f, 0.0, 1e-14, 1e-12) + quad::integrate_upper(f, 0.0, 1e-14, 1e-12)
    }

    #[test]
    fn standardized_moments_by_quadrature() {
        for d in grid() {
            let p = Prepared::new(d).unwrap();
            let mass = moment(&p, 0);
            let mean = moment(&p, 1);
            let var = moment(&p, 2) - mean * mean;
            assert!((mass - 1.0).abs() < 1e-8, "{d:?} mass {mass}");
            assert!(mean.abs() < 1e-6, "{d:?} mean {mean}");
            assert!((var - 1.0).abs() < 1e-4, "{d:?} var {var}");
        }
    }

    #[test]
    fn cdf_quantile_round_trip() {
        for d in grid() {
            let p = Prepared::new(d).unwrap();
            for &q in &[1e-6, 0.01, 0.2, 0.5, 0.77, 0.99] {
                let x = p.quantile(q).unwrap();
                assert!((p.cdf(x) - q).abs() < 1e-8, "{d:?} q={q}");
            }
            let mut last = 0.0;
            for i in -60..=60 {
                let x = i as f64 / 10.0;
                let c = p.cdf(x);
                assert!(c >= last - 1e-15, "{d:?} non-monotone at {x}");
                last = c;
                let back = p.quantile(c.clamp(1e-300, 1.0 - 1e-16));
                if c > 1e-12 && c < 1.0 - 1e-12 {
                    assert!((back.unwrap() - x).abs() < 1e-6, "{d:?} x={x}");
                }
            }
        }
    }

    #[test]
    fn quantiles_sorted_agrees_with_pointwise() {
        let p = Prepared::new(InnovationDist::Sghyd { shape: 0.25, skew: 0.3665, lambda: -0.5 }).unwrap();
        let ps: Vec<f64> = (1..40).map(|i| i as f64 / 40.0).collect();
        let a = p.quantiles_sorted(&ps).unwrap();
        for (pp, x) in ps.iter().zip(&a) {
            assert!((p.quantile(*pp).unwrap() - x).abs() < 1e-7);
        }
    }

    #[test]
    fn symmetric_anchors() {
        assert_eq!(cdf(InnovationDist::Normal, 0.0).unwrap(), 0.5);
        assert!(quantile(InnovationDist::StudentT { nu: 3.363 }, 0.5).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ged_two_is_normal() {
        let g = Prepared::new(InnovationDist::Ged { shape: 2.0 }).unwrap();
        let n = Prepared::new(InnovationDist::Normal).unwrap();
        for i in -50..=50 {
            let x = i as f64 / 8.0;
            assert!((g.pdf(x) - n.pdf(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Prepared::new(InnovationDist::StudentT { nu: 2.0 }).is_err());
        assert!(Prepared::new(InnovationDist::Ged { shape: 0.0 }).is_err());
        assert!(Prepared::new(InnovationDist::Sghyd { shape: -1.0, skew: 0.0, lambda: 1.0 }).is_err());
        assert!(Prepared::new(InnovationDist::Sghyd { shape: 1.0, skew: 1.0, lambda: 1.0 }).is_err());
    }

    #[test]
    fn symmetric_gh_has_zero_beta_and_mu() {
        for &shape in &[0.1, 0.25, 1.0, 5.0] {
            let p = standardize_gh(shape, 0.0, -0.5).unwrap();
            assert_eq!(p.beta, 0.0);
            assert_eq!(p.mu, 0.0);
            assert!(p.mean().unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn standardized_gh_moments() {
        for &(shape, skew, lambda) in
            &[(0.25, 0.3665, -0.5), (0.25, 0.3665, 0.3665), (1.5, -0.6, 2.0), (0.7, 0.1, -3.0)]
        {
            let p = standardize_gh(shape, skew, lambda).unwrap();
            assert!(p.mean().unwrap().abs() < 1e-12);
            assert!((p.variance().unwrap() - 1.0).abs() < 1e-10);
            // quadrature check of the analytic moments
            let prep = Prepared::new(InnovationDist::Sghyd { shape, skew, lambda }).unwrap();
            let m = moment(&prep, 1);
            let v = moment(&prep, 2) - m * m;
            assert!(m.abs() < 1e-6, "mean {m}");
            assert!((v - 1.0).abs() < 1e-4, "var {v}");
        }
    }

    #[test]
    fn samples_are_reproducible() {
        for d in grid() {
            let a = sample(d, 50, 9).unwrap();
            let b = sample(d, 50, 9).unwrap();
            assert_eq!(a, b);
            let c = sample(d, 50, 10).unwrap();
            assert_ne!(a, c);
        }
    }
}
