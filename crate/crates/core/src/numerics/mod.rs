//! Special functions used by the constructions and the potential method.

mod faulhaber;
mod phi;
mod ratios;

pub use faulhaber::{
    a_fn, a_fn_inverse, a_hat, bernoulli_numbers, faulhaber_exact, faulhaber_pathologies, s_hat, s_trunc,
    BernoulliTable, FaulhaberPoly, Pathologies, MAX_EXACT_DEGREE,
};
pub use phi::{
    beta_envelope, gamma_d, lambert_w, lower_bound_params, phi_residual, solve_phi, LowerBoundParams, MIN_LB_DEGREE,
};
pub use ratios::{
    exp_potential, exp_potential_ratio, finite_n_general, general_ratio, singleton_bound, singleton_limit, singleton_w,
    PredictedRatios,
};
