//! Model selection rules.
//!
//! Margins: a candidate must pass residual Ljung–Box gates on ε and ε² at
//! every configured lag and a KS gate on the PIT, then candidates are ranked
//! by (gates passed, BIC, AIC, parameter count, label).
//!
//! Copulas: the family with the highest GoF p-value is selected, ties broken
//! by BIC then parameter count. The t copula nests the Gaussian (ν → ∞) and
//! competes only when a likelihood-ratio test rejects the Gaussian limit.
//! A BIC choice among families with p ≥ the gate level is reported too.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::copula::CopulaFamily;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::special::chi2_sf;
use crate::stattests;
use crate::tsmodel::{self, FittedModel, ModelSpec};

/// One row of the model-selection table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub asset: String,
    pub model: String,
    pub n_params: usize,
    pub loglik: Option<f64>,
    pub aic: Option<f64>,
    pub bic: Option<f64>,
    /// Smallest Ljung–Box p-value over ε and ε² at the gate lags.
    pub min_ljung_box_p: Option<f64>,
    pub pit_ks_p: Option<f64>,
    pub gates_passed: bool,
    pub converged: bool,
    /// 1-based rank among successful fits; `None` when the fit failed.
    pub rank: Option<usize>,
    pub selected: bool,
    pub error: Option<String>,
}

/// Residual gate statistics for a fitted model.
#[derive(Debug, Clone, PartialEq)]
pub struct Gates {
    pub ljung_box: Vec<(usize, &'static str, f64)>,
    pub pit_ks_p: f64,
}

impl Gates {
    pub fn min_ljung_box_p(&self) -> f64 {
        self.ljung_box.iter().map(|g| g.2).fold(f64::INFINITY, f64::min)
    }

    pub fn passed(&self, level: f64) -> bool {
        self.ljung_box.iter().all(|g| g.2 > level) && self.pit_ks_p >= level
    }
}

pub fn residual_gates(m: &FittedModel, lags: &[usize]) -> Result<Gates> {
    let eps = &m.output.eps;
    let sq: Vec<f64> = eps.iter().map(|e| e * e).collect();
    let mut ljung_box = Vec::new();
    for &h in lags {
        ljung_box.push((h, "eps", stattests::ljung_box(eps, h)?.p_value));
        ljung_box.push((h, "eps2", stattests::ljung_box(&sq, h)?.p_value));
    }
    let pit = tsmodel::pit_series(m.params.dist, eps)?;
    Ok(Gates { ljung_box, pit_ks_p: stattests::ks_uniform(&pit)?.p_value })
}

/// Fit every candidate and pick one by the gates-then-BIC rule.
pub fn select_model(
    asset: &str,
    r: &[f64],
    specs: &[ModelSpec],
    lags: &[usize],
    level: f64,
    exec: Execution,
) -> Result<(FittedModel, Vec<CandidateRow>)> {
    let results: Vec<Result<(FittedModel, Gates)>> = exec.map_slice(specs, |spec| {
        let m = tsmodel::fit(spec, r)?;
        let g = residual_gates(&m, lags)?;
        Ok((m, g))
    });
    let mut rows: Vec<CandidateRow> = Vec::with_capacity(specs.len());
    let mut ok: Vec<(usize, FittedModel, bool)> = Vec::new();
    for (i, (spec, res)) in specs.iter().zip(results).enumerate() {
        match res {
            Ok((m, g)) => {
                let passed = g.passed(level);
                rows.push(CandidateRow {
                    asset: asset.to_string(),
                    model: spec.label(),
                    n_params: spec.n_params(),
                    loglik: Some(m.loglik),
                    aic: Some(m.aic),
                    bic: Some(m.bic),
                    min_ljung_box_p: Some(g.min_ljung_box_p()),
                    pit_ks_p: Some(g.pit_ks_p),
                    gates_passed: passed,
                    converged: m.converged,
                    rank: None,
                    selected: false,
                    error: None,
                });
                ok.push((i, m, passed));
            }
            Err(e) => rows.push(CandidateRow {
                asset: asset.to_string(),
                model: spec.label(),
                n_params: spec.n_params(),
                loglik: None,
                aic: None,
                bic: None,
                min_ljung_box_p: None,
                pit_ks_p: None,
                gates_passed: false,
                converged: false,
                rank: None,
                selected: false,
                error: Some(e.to_string()),
            }),
        }
    }
    ok.sort_by(|a, b| {
        b.2.cmp(&a.2)
            .then(a.1.bic.total_cmp(&b.1.bic))
            .then(a.1.aic.total_cmp(&b.1.aic))
            .then(a.1.n_params().cmp(&b.1.n_params()))
            .then(a.1.spec.label().cmp(&b.1.spec.label()))
    });
    for (rank, (i, _, _)) in ok.iter().enumerate() {
        rows[*i].rank = Some(rank + 1);
    }
    let Some((best_idx, best, _)) = ok.into_iter().next() else {
        let reasons: Vec<String> =
            rows.iter().filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.model))).collect();
        return Err(Error::InfeasibleFit(format!(
            "no candidate model could be fitted for {asset}: {}",
            reasons.join("; ")
        )));
    };
    rows[best_idx].selected = true;
    Ok((best, rows))
}

/// Per-family inputs to the copula selection rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyScore {
    pub family: CopulaFamily,
    pub p_value: f64,
    pub loglik: f64,
    pub bic: f64,
    pub aic: f64,
}

/// Outcome of the copula selection rule for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CopulaChoice {
    pub by_gof: Option<CopulaFamily>,
    pub by_bic: Option<CopulaFamily>,
    /// p-value of the LR test of the Gaussian limit inside the t family.
    pub t_vs_gaussian_p: Option<f64>,
}

/// LR test of ν = ∞ against finite ν. The null sits on the boundary, so
/// the reference law is ½χ²₀ + ½χ²₁.
pub fn t_vs_gaussian_pvalue(loglik_t: f64, loglik_gaussian: f64) -> f64 {
    let lr = (2.0 * (loglik_t - loglik_gaussian)).max(0.0);
    if lr == 0.0 {
        1.0
    } else {
        0.5 * chi2_sf(lr, 1.0)
    }
}

fn by_params(a: &FamilyScore, b: &FamilyScore) -> Ordering {
    a.family.n_params().cmp(&b.family.n_params())
}

pub fn choose_copula(scores: &[FamilyScore], level: f64) -> CopulaChoice {
    let gauss = scores.iter().find(|s| s.family == CopulaFamily::Gaussian);
    let t = scores.iter().find(|s| s.family == CopulaFamily::StudentT);
    let t_vs_gaussian_p = match (t, gauss) {
        (Some(t), Some(g)) => Some(t_vs_gaussian_pvalue(t.loglik, g.loglik)),
        _ => None,
    };
    let t_eligible = t_vs_gaussian_p.is_none_or(|p| p < level);
    let eligible = |s: &&FamilyScore| s.p_value.is_finite() && (s.family != CopulaFamily::StudentT || t_eligible);

    let by_gof = scores
        .iter()
        .filter(eligible)
        .min_by(|a, b| b.p_value.total_cmp(&a.p_value).then(a.bic.total_cmp(&b.bic)).then(by_params(a, b)))
        .map(|s| s.family);

    let rank_ic = |a: &&FamilyScore, b: &&FamilyScore| {
        a.bic.total_cmp(&b.bic).then(a.aic.total_cmp(&b.aic)).then(by_params(a, b))
    };
    let passing: Vec<&FamilyScore> = scores.iter().filter(|s| s.p_value >= level && s.bic.is_finite()).collect();
    let by_bic = if passing.is_empty() {
        scores.iter().filter(|s| s.bic.is_finite()).min_by(rank_ic)
    } else {
        passing.into_iter().min_by(rank_ic)
    }
    .map(|s| s.family);

    CopulaChoice { by_gof, by_bic, t_vs_gaussian_p }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn score(family: CopulaFamily, p: f64, ll: f64) -> FamilyScore {
        let k = family.n_params() as f64;
        FamilyScore { family, p_value: p, loglik: ll, aic: 2.0 * k - 2.0 * ll, bic: k * 1000f64.ln() - 2.0 * ll }
    }

    #[test]
    fn t_needs_significant_likelihood_gain() {
        let scores = [score(CopulaFamily::Gaussian, 0.3, 40.0), score(CopulaFamily::StudentT, 0.5, 40.5)];
        let c = choose_copula(&scores, 0.05);
        assert_eq!(c.by_gof, Some(CopulaFamily::Gaussian));
        let scores = [score(CopulaFamily::Gaussian, 0.3, 40.0), score(CopulaFamily::StudentT, 0.5, 50.0)];
        assert_eq!(choose_copula(&scores, 0.05).by_gof, Some(CopulaFamily::StudentT));
    }

    #[test]
    fn ties_fall_to_bic() {
        let scores = [score(CopulaFamily::Frank, 0.2, 10.0), score(CopulaFamily::Gumbel, 0.2, 12.0)];
        let c = choose_copula(&scores, 0.05);
        assert_eq!(c.by_gof, Some(CopulaFamily::Gumbel));
        assert_eq!(c.by_bic, Some(CopulaFamily::Gumbel));
    }

    #[test]
    fn bic_choice_prefers_families_passing_gof() {
        let scores = [score(CopulaFamily::Frank, 0.01, 30.0), score(CopulaFamily::Clayton, 0.4, 20.0)];
        assert_eq!(choose_copula(&scores, 0.05).by_bic, Some(CopulaFamily::Clayton));
    }

    #[test]
    fn lr_pvalue_boundary_mixture() {
        assert_eq!(t_vs_gaussian_pvalue(1.0, 1.0), 1.0);
        // 2·ΔLL = 2.705543 is the 90% χ²₁ point, so the mixture gives 0.05
        let p = t_vs_gaussian_pvalue(2.705_543_454_095_404 / 2.0, 0.0);
        assert!((p - 0.05).abs() < 1e-9);
    }
}
