//! Closed-form ratio predictions and the exponential potential.

use alloc::format;
use core::f64::consts::E;
#[allow(unused_imports)]
use num_traits::Float;

use super::phi::{lower_bound_params, LowerBoundParams};
use crate::error::NumericsError;

/// `S(x) = (e^{x+1} - 1)/(e - 1)`, the continuous extension of `sum_{j<=x} e^j`.
pub fn exp_potential(x: f64) -> f64 {
    (x.exp() * E - 1.0) / (E - 1.0)
}

/// `(S(x+w) - S(x)) / (w e^{x+w})`, which is the same for every `x`:
/// `(e/(e-1)) (1 - e^{-w}) / w`.
pub fn exp_potential_ratio(w: f64) -> f64 {
    E / (E - 1.0) * (-(-w).exp_m1()) / w
}

/// `(β_d Φ_d)^{d+1}`, the large-`n` ratio of the general construction.
pub fn general_ratio(p: &LowerBoundParams) -> f64 {
    p.alpha.powi(p.d as i32 + 1)
}

/// Exact equilibrium-to-optimum cost ratio of the general construction with
/// `n` players past the first `μ`: `α^{d+1} n / (n + Φ(Φ+1)β(α+1)^d)`.
pub fn finite_n_general(p: &LowerBoundParams, n: u32) -> f64 {
    let d = p.d as i32;
    let nf = f64::from(n);
    p.alpha.powi(d + 1) * nf / (nf + p.phi * (p.phi + 1.0) * p.beta * (p.alpha + 1.0).powi(d))
}

fn check_singleton(d: u32, alpha: f64, gamma: f64) -> Result<(), NumericsError> {
    let df = f64::from(d);
    if d == 0 {
        return Err(NumericsError::Domain { what: "d", value: 0.0, domain: "[1, inf)".into() });
    }
    if !(alpha >= 1.0 && alpha < df) {
        return Err(NumericsError::Domain { what: "alpha", value: alpha, domain: format!("[1, {d})") });
    }
    if !(gamma > alpha && gamma < df) {
        return Err(NumericsError::Domain { what: "gamma", value: gamma, domain: format!("({alpha}, {d})") });
    }
    Ok(())
}

/// Weight ratio `w = γ(d+1)/(d-γ)` of the singleton construction.
pub fn singleton_w(d: u32, gamma: f64) -> f64 {
    let df = f64::from(d);
    gamma * (df + 1.0) / (df - gamma)
}

/// `(1/(e(d+1))) (1 + 1/α)^{d+1}`.
pub fn singleton_bound(d: u32, alpha: f64) -> Result<f64, NumericsError> {
    if d == 0 || !(alpha >= 1.0) {
        return Err(NumericsError::Domain { what: "alpha", value: alpha, domain: "[1, inf) with d >= 1".into() });
    }
    let d1 = f64::from(d) + 1.0;
    Ok((1.0 + 1.0 / alpha).powf(d1) / (E * d1))
}

/// `(w/γ - 1)(1+w)^d / w^{d+1}` with `w = singleton_w(d, γ)`.
pub fn singleton_limit(d: u32, alpha: f64, gamma: f64) -> Result<f64, NumericsError> {
    check_singleton(d, alpha, gamma)?;
    let w = singleton_w(d, gamma);
    let di = d as i32;
    Ok((w / gamma - 1.0) * (1.0 + w).powi(di) / w.powi(di + 1))
}

/// All closed-form predictions for one parameter choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictedRatios {
    /// `(β_d Φ_d)^{d+1}`; absent below degree 9.
    pub general: Option<f64>,
    pub singleton_bound: f64,
    pub singleton_limit: f64,
    /// Exact finite-`n` general ratio; absent below degree 9.
    pub finite_n_general: Option<f64>,
}

impl PredictedRatios {
    pub fn compute(d: u32, alpha: f64, gamma: f64, n: u32) -> Result<Self, NumericsError> {
        let params = lower_bound_params(d).ok();
        Ok(PredictedRatios {
            general: params.as_ref().map(general_ratio),
            singleton_bound: singleton_bound(d, alpha)?,
            singleton_limit: singleton_limit(d, alpha, gamma)?,
            finite_n_general: params.as_ref().map(|p| finite_n_general(p, n)),
        })
    }
}
