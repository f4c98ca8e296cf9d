//! The optimum as an approximate equilibrium, and the trade-off between
//! approximation factor and stability bound for the potential method.

use alloc::format;

use super::deviation::deviation_report;
use super::enumerate::check_enumerable;
use crate::error::AnalysisError;
use crate::model::{Game, Profile, ProfileIter};

#[derive(Debug, Clone, PartialEq)]
pub struct OptimumCheck {
    pub opt_profile: Profile,
    pub opt_cost: f64,
    pub alpha_star: f64,
    /// `d + 1`.
    pub bound: f64,
    /// `alpha_star <= (d+1)(1 + 1e-9)`.
    pub holds: bool,
}

/// Finds the optimum by enumeration (first in lexicographic order on ties)
/// and measures how far it is from an equilibrium.
pub fn verify_optimum_approx(game: &Game, cap: u64) -> Result<OptimumCheck, AnalysisError> {
    if let Some(resource) = game.resources().iter().position(|l| l.is_exponential()) {
        return Err(AnalysisError::Model(crate::error::ModelError::ExponentialResource { resource }));
    }
    check_enumerable(game, 1.0, cap)?;
    let radix = (0..game.players()).map(|i| game.strategy_count(i)).collect();
    let mut best: Option<(f64, alloc::vec::Vec<usize>)> = None;
    for choice in ProfileIter::new(radix) {
        let c = game.social_cost_on(&game.loads_unchecked(&choice));
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, choice));
        }
    }
    let (opt_cost, choice) = best.expect("nonempty profile space");
    let opt_profile = Profile::new(choice);
    let alpha_star = deviation_report(game, &opt_profile)?.alpha_star;
    let bound = game.degree() as f64 + 1.0;
    Ok(OptimumCheck { opt_profile, opt_cost, alpha_star, bound, holds: alpha_star <= bound * (1.0 + 1e-9) })
}

fn check_dw(d: u32, w: f64) -> Result<(), AnalysisError> {
    if d < 1 || !(w >= 1.0) {
        return Err(AnalysisError::Precondition(format!("need d >= 1 and W >= 1, got d = {d}, W = {w}")));
    }
    Ok(())
}

/// Range of approximation factors the potential method can target:
/// `[2(d+1)W/(2W+d+1), d+1]`.
pub fn tradeoff_alpha_domain(d: u32, w: f64) -> Result<(f64, f64), AnalysisError> {
    check_dw(d, w)?;
    let d1 = f64::from(d) + 1.0;
    Ok((2.0 * d1 * w / (2.0 * w + d1), d1))
}

/// `γ = α(d+1) / (2W(d+1-α))` for `α` inside the domain (and below `d+1`).
pub fn gamma_for_alpha(d: u32, w: f64, alpha: f64) -> Result<f64, AnalysisError> {
    let (lo, hi) = tradeoff_alpha_domain(d, w)?;
    if !(alpha >= lo * (1.0 - 1e-12) && alpha < hi) {
        return Err(AnalysisError::Precondition(format!("alpha = {alpha} outside [{lo}, {hi})")));
    }
    let d1 = f64::from(d) + 1.0;
    Ok((alpha * d1 / (2.0 * w * (d1 - alpha))).max(1.0))
}

/// `α = A_d(γW)` for `γ >= 1`.
pub fn alpha_for_gamma(d: u32, w: f64, gamma: f64) -> Result<f64, AnalysisError> {
    check_dw(d, w)?;
    Ok(crate::numerics::a_fn(d, gamma * w)?)
}

/// Stability bound `1 + ((d+1)/α - 1) W` paired with approximation factor `α`.
pub fn tradeoff_pos_bound(d: u32, w: f64, alpha: f64) -> Result<f64, AnalysisError> {
    check_dw(d, w)?;
    Ok(1.0 + ((f64::from(d) + 1.0) / alpha - 1.0) * w)
}
