//! Best-response scans and the approximation factor of a profile.

use alloc::vec::Vec;

use crate::error::AnalysisError;
use crate::model::{Game, Profile};
use crate::tolerance::REL_TOL;

/// One player's best unilateral deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerDeviation {
    /// Cheapest strategy given the others; the current one when nothing is cheaper.
    pub best_alternative: usize,
    pub current_cost: f64,
    pub best_cost: f64,
    /// `current_cost / best_cost`, at least 1.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub players: Vec<PlayerDeviation>,
    /// Smallest `α` for which the profile is an α-approximate equilibrium.
    pub alpha_star: f64,
}

impl DeviationReport {
    /// `alpha_star <= α (1 + 1e-9)`.
    pub fn is_alpha_equilibrium(&self, alpha: f64) -> bool {
        qualifies(self.alpha_star, alpha)
    }

    /// `α / alpha_star`: above 1 means slack, below 1 means violation.
    pub fn margin(&self, alpha: f64) -> f64 {
        alpha / self.alpha_star
    }
}

pub(crate) fn qualifies(alpha_star: f64, alpha: f64) -> bool {
    alpha_star <= alpha * (1.0 + REL_TOL)
}

/// `current / best` with the zero conventions: `0/0 = 1`, `c/0 = inf`.
pub(crate) fn deviation_ratio(current: f64, best: f64) -> f64 {
    if current <= 0.0 {
        1.0
    } else if best <= 0.0 {
        f64::INFINITY
    } else {
        (current / best).max(1.0)
    }
}

/// Scan of player `i` against precomputed loads `x` of the full profile.
pub(crate) fn scan_player(game: &Game, choice: &[usize], x: &[f64], i: usize) -> PlayerDeviation {
    let cur = choice[i];
    let current_cost = game.cost_on(x, game.strategy(i, cur));
    let mut best_alternative = cur;
    let mut best_cost = current_cost;
    for alt in 0..game.strategy_count(i) {
        if alt == cur {
            continue;
        }
        let c = game.deviation_cost_on(x, i, cur, alt);
        if c < best_cost {
            best_cost = c;
            best_alternative = alt;
        }
    }
    PlayerDeviation { best_alternative, current_cost, best_cost, ratio: deviation_ratio(current_cost, best_cost) }
}

/// `alpha_star` of a profile given its loads.
pub(crate) fn alpha_star_on(game: &Game, choice: &[usize], x: &[f64]) -> f64 {
    (0..game.players()).map(|i| scan_player(game, choice, x, i).ratio).fold(1.0, f64::max)
}

/// Exact best-response scan for every player.
pub fn deviation_report(game: &Game, p: &Profile) -> Result<DeviationReport, AnalysisError> {
    game.validate_profile(p)?;
    let choice = p.as_slice();
    let x = game.loads_unchecked(choice);
    let players: Vec<PlayerDeviation> = (0..game.players()).map(|i| scan_player(game, choice, &x, i)).collect();
    let alpha_star = players.iter().map(|d| d.ratio).fold(1.0, f64::max);
    Ok(DeviationReport { players, alpha_star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Latency;
    use alloc::vec;

    fn two_roads() -> Game {
        Game::new(
            vec![1.0],
            vec![Latency::polynomial([0.0, 1.0]), Latency::polynomial([0.0, 2.0])],
            vec![vec![vec![0], vec![1]]],
        )
        .unwrap()
    }

    #[test]
    fn single_player_ratios() {
        let g = two_roads();
        let a = deviation_report(&g, &Profile::new(vec![0])).unwrap();
        assert_eq!(a.alpha_star, 1.0);
        assert_eq!(a.players[0].best_alternative, 0);
        let b = deviation_report(&g, &Profile::new(vec![1])).unwrap();
        assert_eq!(b.alpha_star, 2.0);
        assert_eq!(b.players[0].best_alternative, 0);
        assert!(b.is_alpha_equilibrium(2.0));
        assert!(!b.is_alpha_equilibrium(1.9));
    }

    #[test]
    fn zero_cost_conventions() {
        assert_eq!(deviation_ratio(0.0, 0.0), 1.0);
        assert_eq!(deviation_ratio(1.0, 0.0), f64::INFINITY);
        let g =
            Game::new(vec![1.0], vec![Latency::constant(1.0), Latency::zero()], vec![vec![vec![0], vec![1]]]).unwrap();
        let r = deviation_report(&g, &Profile::new(vec![0])).unwrap();
        assert_eq!(r.alpha_star, f64::INFINITY);
        assert_eq!(deviation_report(&g, &Profile::new(vec![1])).unwrap().alpha_star, 1.0);
    }

    #[test]
    fn shared_resource_deviation_uses_current_load() {
        // Strategy {0,1} -> {0}: resource 0 keeps its load.
        let g = Game::new(
            vec![1.0, 1.0],
            vec![Latency::polynomial([0.0, 1.0]), Latency::constant(5.0)],
            vec![vec![vec![0, 1], vec![0]], vec![vec![0]]],
        )
        .unwrap();
        let r = deviation_report(&g, &Profile::new(vec![0, 0])).unwrap();
        assert_eq!(r.players[0].current_cost, 7.0);
        assert_eq!(r.players[0].best_cost, 2.0);
        assert_eq!(r.alpha_star, 3.5);
    }
}
