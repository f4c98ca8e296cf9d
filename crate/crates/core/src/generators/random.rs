//! Seeded random games for property tests.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeneratorError;
use crate::model::{Game, Latency};

pub const MAX_RANDOM_PLAYERS: usize = 4;
pub const MAX_RANDOM_RESOURCES: usize = 5;
pub const MAX_RANDOM_DEGREE: usize = 3;
pub const MAX_RANDOM_STRATEGIES: usize = 4;

/// Shape of a random game. Each bound is a maximum; the actual counts are
/// exactly these values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGameConfig {
    pub players: usize,
    pub resources: usize,
    /// Highest degree a resource may get; each resource draws its own degree.
    pub max_degree: usize,
    /// Weights are uniform in `[1, weight_range]`.
    pub weight_range: f64,
    pub strategies_per_player: usize,
}

impl Default for RandomGameConfig {
    fn default() -> Self {
        RandomGameConfig { players: 3, resources: 4, max_degree: 3, weight_range: 2.0, strategies_per_player: 2 }
    }
}

impl RandomGameConfig {
    fn check(&self) -> Result<(), GeneratorError> {
        let bad = |msg: &str| Err(GeneratorError::Parameter(msg.into()));
        if self.players == 0 || self.players > MAX_RANDOM_PLAYERS {
            return bad(&format!("players must be in 1..={MAX_RANDOM_PLAYERS}, got {}", self.players));
        }
        if self.resources == 0 || self.resources > MAX_RANDOM_RESOURCES {
            return bad(&format!("resources must be in 1..={MAX_RANDOM_RESOURCES}, got {}", self.resources));
        }
        if self.max_degree > MAX_RANDOM_DEGREE {
            return bad(&format!("degree must be at most {MAX_RANDOM_DEGREE}, got {}", self.max_degree));
        }
        if !(self.weight_range >= 1.0 && self.weight_range.is_finite()) {
            return bad(&format!("weight range must be at least 1, got {}", self.weight_range));
        }
        let subsets = (1usize << self.resources) - 1;
        if self.strategies_per_player == 0
            || self.strategies_per_player > MAX_RANDOM_STRATEGIES
            || self.strategies_per_player > subsets
        {
            return bad(&format!(
                "strategies per player must be in 1..={}, got {}",
                MAX_RANDOM_STRATEGIES.min(subsets),
                self.strategies_per_player
            ));
        }
        Ok(())
    }
}

fn weights(rng: &mut ChaCha8Rng, cfg: &RandomGameConfig) -> Vec<f64> {
    (0..cfg.players)
        .map(|_| if cfg.weight_range == 1.0 { 1.0 } else { rng.random_range(1.0..=cfg.weight_range) })
        .collect()
}

fn strategies(rng: &mut ChaCha8Rng, cfg: &RandomGameConfig) -> Vec<Vec<Vec<usize>>> {
    (0..cfg.players)
        .map(|_| {
            let mut seen = BTreeSet::new();
            let mut set = Vec::with_capacity(cfg.strategies_per_player);
            while set.len() < cfg.strategies_per_player {
                let mask: u32 = rng.random_range(1..(1u32 << cfg.resources));
                if seen.insert(mask) {
                    set.push((0..cfg.resources).filter(|&e| mask & (1 << e) != 0).collect());
                }
            }
            set
        })
        .collect()
}

/// Polynomial game: each resource gets a degree in `0..=max_degree` and
/// coefficients uniform in `[0, 2]`, redrawn until one is positive.
pub fn random_game(seed: u64, cfg: &RandomGameConfig) -> Result<Game, GeneratorError> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = weights(&mut rng, cfg);
    let resources = (0..cfg.resources)
        .map(|_| {
            let deg = rng.random_range(0..=cfg.max_degree);
            loop {
                let coeffs: Vec<f64> = (0..=deg).map(|_| rng.random_range(0.0..=2.0)).collect();
                if coeffs.iter().any(|&a| a > 0.0) {
                    break Latency::Polynomial(coeffs);
                }
            }
        })
        .collect();
    let s = strategies(&mut rng, cfg);
    Ok(Game::new(w, resources, s)?)
}

/// Game whose resources are all `scale e^x` with scale uniform in `[0.1, 2]`;
/// `max_degree` is ignored.
pub fn random_exponential_game(seed: u64, cfg: &RandomGameConfig) -> Result<Game, GeneratorError> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = weights(&mut rng, cfg);
    let resources = (0..cfg.resources).map(|_| Latency::exponential(rng.random_range(0.1..=2.0))).collect();
    let s = strategies(&mut rng, cfg);
    Ok(Game::new(w, resources, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let cfg = RandomGameConfig::default();
        assert_eq!(random_game(7, &cfg).unwrap(), random_game(7, &cfg).unwrap());
        assert_ne!(random_game(7, &cfg).unwrap(), random_game(8, &cfg).unwrap());
    }

    #[test]
    fn unit_weight_range() {
        let cfg = RandomGameConfig { weight_range: 1.0, ..Default::default() };
        for seed in 0..20 {
            assert!(random_game(seed, &cfg).unwrap().weights().iter().all(|&w| w == 1.0));
        }
    }

    #[test]
    fn respects_shape() {
        let cfg =
            RandomGameConfig { players: 4, resources: 5, max_degree: 3, weight_range: 4.0, strategies_per_player: 4 };
        for seed in 0..50 {
            let g = random_game(seed, &cfg).unwrap();
            assert_eq!(g.players(), 4);
            assert!(g.degree() <= 3);
            assert!(g.weights().iter().all(|&w| (1.0..=4.0).contains(&w)));
            for set in g.strategies() {
                assert_eq!(set.len(), 4);
                let distinct: BTreeSet<_> = set.iter().collect();
                assert_eq!(distinct.len(), 4);
            }
            assert!(g.resources().iter().all(|l| !l.is_dummy()));
        }
    }

    #[test]
    fn rejects_out_of_bounds() {
        let base = RandomGameConfig::default();
        assert!(random_game(0, &RandomGameConfig { players: 5, ..base }).is_err());
        assert!(random_game(0, &RandomGameConfig { resources: 6, ..base }).is_err());
        assert!(random_game(0, &RandomGameConfig { max_degree: 4, ..base }).is_err());
        assert!(random_game(0, &RandomGameConfig { weight_range: 0.5, ..base }).is_err());
        assert!(random_game(0, &RandomGameConfig { resources: 1, strategies_per_player: 2, ..base }).is_err());
    }
}
