//! Equilibrium analysis: deviation scans, enumeration, dominance, the
//! potential method and the optimum check.

mod deviation;
mod dominance;
mod dominate;
mod enumerate;
mod optimum;
mod potential;

pub use deviation::{deviation_report, DeviationReport, PlayerDeviation};
pub use dominance::{iterated_dominance, iterated_dominance_default, DominanceResult, Elimination};
pub use dominate::{check_dominate, dominate_procedure, DominateCheck};
pub use enumerate::{
    check_enumerable, enumerate_analysis, enumerate_range, finish, AnalysisReport, EquilibriumEntry, RangeSummary,
    DEFAULT_CAP,
};
pub use optimum::{
    alpha_for_gamma, gamma_for_alpha, tradeoff_alpha_domain, tradeoff_pos_bound, verify_optimum_approx, OptimumCheck,
};
pub use potential::{
    potential_minimize, potential_value, MinimizeMode, PotentialConfig, PotentialResult, MAX_MOVES, MOVE_FLOOR,
};
