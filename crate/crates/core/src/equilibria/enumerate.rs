//! Exhaustive analysis over all pure profiles.
//!
//! Profiles are ranked lexicographically (last player varies fastest). The
//! space can be split into contiguous rank ranges, analysed independently
//! with [`enumerate_range`], and combined with [`RangeSummary::merge`] in
//! rank order; ties always go to the lower rank.

use alloc::vec::Vec;

use super::deviation::{alpha_star_on, qualifies};
use crate::error::AnalysisError;
use crate::model::{Game, Profile, ProfileIter};
use crate::tolerance::REL_TOL;

/// Default ceiling on the number of profiles visited.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// An α-approximate equilibrium found by enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumEntry {
    pub profile: Profile,
    pub cost: f64,
    pub alpha_star: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub alpha: f64,
    pub equilibria: Vec<EquilibriumEntry>,
    pub opt_cost: f64,
    pub opt_profile: Profile,
    /// `None` when no profile qualifies.
    pub best_eq: Option<EquilibriumEntry>,
    pub worst_eq: Option<EquilibriumEntry>,
    /// Best equilibrium over optimum; infinite when there is no equilibrium.
    pub pos: f64,
    /// Worst equilibrium over optimum; infinite when there is no equilibrium.
    pub poa: f64,
    pub profile_count: u128,
    /// Profiles whose `alpha_star` lies within the relative tolerance of `α`,
    /// on either side. Their classification is not robust.
    pub marginal: Vec<Profile>,
    /// Smallest `α / alpha_star` among equilibria (slack of the tightest one).
    pub min_eq_margin: Option<f64>,
    /// Largest `α / alpha_star` among non-equilibria (how close the nearest miss came).
    pub max_non_eq_margin: Option<f64>,
}

impl AnalysisReport {
    pub fn has_equilibrium(&self) -> bool {
        !self.equilibria.is_empty()
    }

    pub fn equilibrium_profiles(&self) -> impl Iterator<Item = &Profile> {
        self.equilibria.iter().map(|e| &e.profile)
    }
}

/// Partial result over a range of ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeSummary {
    pub visited: u128,
    pub opt: Option<(f64, Profile)>,
    pub equilibria: Vec<EquilibriumEntry>,
    pub marginal: Vec<Profile>,
    pub max_non_eq_margin: Option<f64>,
}

impl RangeSummary {
    fn empty() -> Self {
        RangeSummary { visited: 0, opt: None, equilibria: Vec::new(), marginal: Vec::new(), max_non_eq_margin: None }
    }

    /// Appends a summary of the range that directly follows this one.
    pub fn merge(mut self, next: RangeSummary) -> RangeSummary {
        self.visited += next.visited;
        self.opt = match (self.opt, next.opt) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        self.equilibria.extend(next.equilibria);
        self.marginal.extend(next.marginal);
        self.max_non_eq_margin = max_opt(self.max_non_eq_margin, next.max_non_eq_margin);
        self
    }
}

fn max_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    }
}

/// Checks `α >= 1` and the profile cap; returns the profile count.
pub fn check_enumerable(game: &Game, alpha: f64, cap: u64) -> Result<u128, AnalysisError> {
    if !(alpha >= 1.0) {
        return Err(AnalysisError::Precondition(alloc::format!("alpha = {alpha} must be at least 1")));
    }
    let count = game.profile_count();
    if count > u128::from(cap) {
        return Err(AnalysisError::CapExceeded { count, cap });
    }
    Ok(count)
}

/// Analyses the profiles with ranks `start .. start + len`.
pub fn enumerate_range(game: &Game, alpha: f64, start: u128, len: u128) -> RangeSummary {
    let radix: Vec<usize> = (0..game.players()).map(|i| game.strategy_count(i)).collect();
    let mut s = RangeSummary::empty();
    for choice in ProfileIter::starting_at(radix, start).take(len as usize) {
        s.visited += 1;
        let x = game.loads_unchecked(&choice);
        let cost = game.social_cost_on(&x);
        if s.opt.as_ref().is_none_or(|(best, _)| cost < *best) {
            s.opt = Some((cost, Profile::new(choice.clone())));
        }
        let a = alpha_star_on(game, &choice, &x);
        if (a - alpha).abs() <= REL_TOL * alpha.max(a) {
            s.marginal.push(Profile::new(choice.clone()));
        }
        if qualifies(a, alpha) {
            s.equilibria.push(EquilibriumEntry { profile: Profile::new(choice), cost, alpha_star: a });
        } else {
            s.max_non_eq_margin = max_opt(s.max_non_eq_margin, Some(alpha / a));
        }
    }
    s
}

/// Ratio of an equilibrium cost to the optimum with `0/0 = 1`.
pub(crate) fn cost_ratio(cost: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        cost / opt
    } else if cost > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Turns the summary of the whole rank space into a report.
pub fn finish(alpha: f64, summary: RangeSummary) -> AnalysisReport {
    let (opt_cost, opt_profile) = summary.opt.expect("at least one profile");
    let mut best: Option<&EquilibriumEntry> = None;
    let mut worst: Option<&EquilibriumEntry> = None;
    for e in &summary.equilibria {
        if best.is_none_or(|b| e.cost < b.cost) {
            best = Some(e);
        }
        if worst.is_none_or(|w| e.cost > w.cost) {
            worst = Some(e);
        }
    }
    let best_eq = best.cloned();
    let worst_eq = worst.cloned();
    let pos = best_eq.as_ref().map_or(f64::INFINITY, |e| cost_ratio(e.cost, opt_cost));
    let poa = worst_eq.as_ref().map_or(f64::INFINITY, |e| cost_ratio(e.cost, opt_cost));
    let min_eq_margin = summary.equilibria.iter().map(|e| alpha / e.alpha_star).reduce(f64::min);
    AnalysisReport {
        alpha,
        equilibria: summary.equilibria,
        opt_cost,
        opt_profile,
        best_eq,
        worst_eq,
        pos,
        poa,
        profile_count: summary.visited,
        marginal: summary.marginal,
        min_eq_margin,
        max_non_eq_margin: summary.max_non_eq_margin,
    }
}

/// Visits every profile, classifies α-approximate equilibria and computes
/// the optimum, PoS and PoA.
pub fn enumerate_analysis(game: &Game, alpha: f64, cap: u64) -> Result<AnalysisReport, AnalysisError> {
    let count = check_enumerable(game, alpha, cap)?;
    Ok(finish(alpha, enumerate_range(game, alpha, 0, count)))
}
