//! Bivariate copulas: rank transforms, parametric families, estimation,
//! empirical and tail copulas, and goodness of fit.

mod empirical;
mod family;
mod fit;
mod gof;
mod pseudo;

pub use empirical::{
    default_k, empirical_copula, empirical_copula_at_sample, empirical_survival, k_grid, tail_coeff_estimates,
    tail_copula_lower, tail_copula_upper,
};
pub use family::{CopulaFamily, CopulaModel, TailEstimate, TailSource};
pub use fit::{aic_bic, fit, fit_inverse_tau, fit_mle, invert_tau, loglik, CopulaFit, Estimator};
pub use gof::{
    cvm_statistic, gof_bootstrap, gof_bootstrap_at, independence_permutation_test, GofOptions, GofResult,
    DEFAULT_N_BOOT,
};
pub use pseudo::{
    average_ranks, kendall_tau, kendall_tau_xy, pseudo_obs, rho_s_to_rho, spearman_rho, tau_to_rho, PseudoSample,
};
