//! Approximate potential minimisation.
//!
//! For polynomial games the potential is `sum_e sum_m a_{e,m} S_m(γ x_e) / S_m(γ)`
//! on the canonically scaled game, i.e. every monomial of every resource is
//! treated as its own resource and normalised by `S_m(γ)`. The normalisation
//! puts monomials of different degree on a common footing, which is what
//! makes a minimiser an `A_d(γW)`-approximate equilibrium costing at most
//! `(d+1)/A_d(γ)` times the optimum.
//!
//! With [`PotentialConfig::exact`] the truncation `S_m` is replaced by the
//! exact power-sum polynomial `Ŝ_m` and `A` by `Â`, which is only allowed up
//! to degree 4. Since `Â_d(1) = 1` the guarantees then start from `Â_d(W)`.
//!
//! For exponential games (`c(x) = a e^x`, no rescaling) the potential is
//! `sum_e a S(x_e)` with `S(x) = (e^{x+1} - 1)/(e - 1)`, an exact weighted
//! potential.

use alloc::format;
use alloc::vec::Vec;

use super::deviation::{deviation_report, DeviationReport};
use super::enumerate::check_enumerable;
use crate::error::AnalysisError;
use crate::model::{Game, Latency, Profile, ProfileIter};
use crate::numerics::{a_fn, a_hat, exp_potential, s_hat, s_trunc, MAX_EXACT_DEGREE};

/// Smallest potential decrease accepted as a move.
pub const MOVE_FLOOR: f64 = 1e-12;
/// Local descent gives up after this many moves.
pub const MAX_MOVES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialConfig {
    gamma: f64,
    exact: bool,
}

impl PotentialConfig {
    /// Potential built on the two-term truncation `S_m`.
    pub fn new(gamma: f64) -> Result<Self, AnalysisError> {
        if !(gamma >= 1.0 && gamma.is_finite()) {
            return Err(AnalysisError::Precondition(format!("gamma = {gamma} must be at least 1")));
        }
        Ok(PotentialConfig { gamma, exact: false })
    }

    /// Potential built on the exact `Ŝ_m`; games must have degree at most 4.
    pub fn exact(gamma: f64) -> Result<Self, AnalysisError> {
        Ok(PotentialConfig { exact: true, ..Self::new(gamma)? })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    fn ratio(&self, d: u32, x: f64) -> f64 {
        let r = if self.exact { a_hat(d, x) } else { a_fn(d, x) };
        r.unwrap_or(f64::NAN)
    }

    /// `A_d(γW)` (or `Â_d(γW)`) with `W` the weight range and `d` the degree of `game`.
    pub fn alpha_guarantee(&self, game: &Game) -> f64 {
        self.ratio(game.degree() as u32, self.gamma * game.weight_range())
    }

    /// `(d+1) / A_d(γ)` (or with `Â_d`).
    pub fn pos_guarantee(&self, game: &Game) -> f64 {
        let d = game.degree() as u32;
        f64::from(d + 1) / self.ratio(d, self.gamma)
    }

    fn s(&self, m: u32, x: f64) -> f64 {
        if self.exact {
            s_hat(m, x).unwrap_or(f64::NAN)
        } else {
            s_trunc(m, x)
        }
    }
}

impl Default for PotentialConfig {
    fn default() -> Self {
        PotentialConfig { gamma: 1.0, exact: false }
    }
}

/// Per-resource potential terms, prepared once per game.
#[derive(Debug, Clone)]
enum Terms {
    /// `(coefficient / S_m(γ), m)` pairs per resource, on the scaled game.
    Polynomial {
        cfg: PotentialConfig,
        per_resource: Vec<Vec<(f64, u32)>>,
        scale: f64,
    },
    Exponential {
        scales: Vec<f64>,
    },
}

impl Terms {
    fn new(game: &Game, cfg: &PotentialConfig) -> Result<Self, AnalysisError> {
        match (game.has_polynomial(), game.has_exponential()) {
            (true, true) => Err(AnalysisError::MixedLatencies),
            (false, _) => Ok(Terms::Exponential {
                scales: game
                    .resources()
                    .iter()
                    .map(|l| match l {
                        Latency::Exponential { scale } => *scale,
                        Latency::Polynomial(_) => 0.0,
                    })
                    .collect(),
            }),
            (true, false) => {
                if cfg.exact && game.degree() as u32 > MAX_EXACT_DEGREE {
                    return Err(AnalysisError::Precondition(format!(
                        "the exact potential needs degree at most {MAX_EXACT_DEGREE}, game has {}",
                        game.degree()
                    )));
                }
                let scaled = game.canonical_scale()?;
                let g = cfg.gamma;
                let per_resource = scaled
                    .resources()
                    .iter()
                    .map(|l| match l {
                        Latency::Polynomial(c) => c
                            .iter()
                            .enumerate()
                            .filter(|(_, &a)| a != 0.0)
                            .map(|(m, &a)| (a / cfg.s(m as u32, g), m as u32))
                            .collect(),
                        Latency::Exponential { .. } => Vec::new(),
                    })
                    .collect();
                Ok(Terms::Polynomial { cfg: *cfg, per_resource, scale: 1.0 / game.min_weight() })
            }
        }
    }

    fn resource(&self, e: usize, load: f64) -> f64 {
        match self {
            Terms::Polynomial { cfg, per_resource, scale } => {
                let x = load * scale;
                if x <= 0.0 {
                    return 0.0;
                }
                per_resource[e].iter().map(|&(a, m)| a * cfg.s(m, cfg.gamma * x)).sum()
            }
            Terms::Exponential { scales } => scales[e] * exp_potential(load),
        }
    }

    fn total(&self, loads: &[f64]) -> f64 {
        loads.iter().enumerate().map(|(e, &x)| self.resource(e, x)).sum()
    }
}

/// Value of the potential at `p`.
pub fn potential_value(game: &Game, cfg: &PotentialConfig, p: &Profile) -> Result<f64, AnalysisError> {
    game.validate_profile(p)?;
    let terms = Terms::new(game, cfg)?;
    Ok(terms.total(&game.loads_unchecked(p.as_slice())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizeMode {
    /// Enumerate every profile; ties go to the lexicographically first.
    Global { cap: u64 },
    /// Round-robin first-improvement descent from `start` (all zeros if `None`).
    Local,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialResult {
    pub profile: Profile,
    pub potential: f64,
    pub certificate: DeviationReport,
    /// Accepted moves (local mode) or profiles visited (global mode).
    pub steps: u64,
    /// `A_d(γW)`; `1` for exponential games, which reach exact equilibria.
    pub alpha_guarantee: f64,
    /// `(d+1)/A_d(γ)`; absent for exponential games.
    pub pos_guarantee: Option<f64>,
}

/// Minimises the potential globally or by local descent and certifies the
/// result with a deviation report.
pub fn potential_minimize(
    game: &Game,
    cfg: &PotentialConfig,
    mode: MinimizeMode,
    start: Option<&Profile>,
) -> Result<PotentialResult, AnalysisError> {
    let terms = Terms::new(game, cfg)?;
    let (profile, potential, steps) = match mode {
        MinimizeMode::Global { cap } => {
            let count = check_enumerable(game, 1.0, cap)?;
            let radix = (0..game.players()).map(|i| game.strategy_count(i)).collect();
            let mut best: Option<(f64, Vec<usize>)> = None;
            for choice in ProfileIter::new(radix) {
                let v = terms.total(&game.loads_unchecked(&choice));
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, choice));
                }
            }
            let (v, choice) = best.expect("nonempty profile space");
            (Profile::new(choice), v, count as u64)
        }
        MinimizeMode::Local => {
            let mut p = match start {
                Some(s) => {
                    game.validate_profile(s)?;
                    s.clone()
                }
                None => Profile::uniform(game.players(), 0),
            };
            let moves = local_descent(game, &terms, &mut p)?;
            let v = terms.total(&game.loads_unchecked(p.as_slice()));
            (p, v, moves)
        }
    };
    let certificate = deviation_report(game, &profile)?;
    let (alpha_guarantee, pos_guarantee) = match terms {
        Terms::Exponential { .. } => (1.0, None),
        Terms::Polynomial { .. } => (cfg.alpha_guarantee(game), Some(cfg.pos_guarantee(game))),
    };
    Ok(PotentialResult { profile, potential, certificate, steps, alpha_guarantee, pos_guarantee })
}

fn local_descent(game: &Game, terms: &Terms, p: &mut Profile) -> Result<u64, AnalysisError> {
    let mut moves = 0u64;
    let mut x = game.loads_unchecked(p.as_slice());
    loop {
        let mut moved = false;
        for i in 0..game.players() {
            let cur = p.choice(i);
            let w = game.weight(i);
            for alt in 0..game.strategy_count(i) {
                if alt == cur {
                    continue;
                }
                let delta = move_delta(terms, &x, w, game.strategy(i, cur), game.strategy(i, alt));
                if delta < -MOVE_FLOOR {
                    p.set(i, alt);
                    x = game.loads_unchecked(p.as_slice());
                    moves += 1;
                    if moves >= MAX_MOVES {
                        return Err(AnalysisError::NoConvergence(moves));
                    }
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            return Ok(moves);
        }
    }
}

/// Potential change when a player of weight `w` moves from `from` to `to`.
fn move_delta(terms: &Terms, x: &[f64], w: f64, from: &[usize], to: &[usize]) -> f64 {
    let mut delta = 0.0;
    for &e in to {
        if from.binary_search(&e).is_err() {
            delta += terms.resource(e, x[e] + w) - terms.resource(e, x[e]);
        }
    }
    for &e in from {
        if to.binary_search(&e).is_err() {
            delta += terms.resource(e, (x[e] - w).max(0.0)) - terms.resource(e, x[e]);
        }
    }
    delta
}
