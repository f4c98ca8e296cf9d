//! The general lower-bound instance: `n + μ` players with geometric weights
//! whose unique pure equilibrium costs about `(β_d Φ_d)^{d+1}` times the optimum.
//!
//! Players and facilities are numbered from 1 in the construction and stored
//! 0-based: player `i` is index `i - 1`, facility `j` is index `j - 1`.
//! Every player has two strategies: index [`OPT`] is the singleton `{i}`,
//! index [`NASH`] is the window played at equilibrium.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeneratorError;
use crate::model::{Game, Latency, Profile};
use crate::numerics::{lower_bound_params, LowerBoundParams};

/// Strategy index of the optimum strategy `s*_i`.
pub const OPT: usize = 0;
/// Strategy index of the equilibrium strategy `s̃_i`.
pub const NASH: usize = 1;

pub const MAX_DEGREE: u32 = 30;
pub const MAX_PLAYERS: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLBInstance {
    pub game: Game,
    pub params: LowerBoundParams,
    pub n: u32,
    pub opt_profile: Profile,
    pub nash_profile: Profile,
}

/// Facilities (1-based, inclusive range) of `s̃_i`.
pub(crate) fn nash_window(i: u32, n: u32, mu: u32) -> (u32, u32) {
    if i <= mu {
        (mu + 1, mu + i)
    } else if i <= n {
        (i + 1, i + mu)
    } else {
        (i + 1, n + mu + 1)
    }
}

/// Checks the caps shared by the general and network constructions.
pub(crate) fn check_size(d: u32, n: u32) -> Result<LowerBoundParams, GeneratorError> {
    if d > MAX_DEGREE {
        return Err(GeneratorError::Cap(format!("d = {d} exceeds {MAX_DEGREE}")));
    }
    if n < 1 {
        return Err(GeneratorError::Parameter(format!("n must be at least 1, got {n}")));
    }
    let params = lower_bound_params(d)?;
    let mu = params.mu;
    if n + 1 < mu {
        return Err(GeneratorError::Parameter(format!(
            "n = {n} is below mu - 1 = {} for d = {d}; the equilibrium windows would overlap inconsistently",
            mu - 1
        )));
    }
    if n + mu > MAX_PLAYERS {
        return Err(GeneratorError::Cap(format!("n + mu = {} exceeds {MAX_PLAYERS}", n + mu)));
    }
    Ok(params)
}

/// Builds the instance for `d >= 9` and `n >= μ - 1`.
pub fn gen_general_lb(d: u32, n: u32) -> Result<GeneralLBInstance, GeneratorError> {
    let params = check_size(d, n)?;
    let (mu, w, phi, beta, alpha) = (params.mu, params.w, params.phi, params.beta, params.alpha);
    let players = n + mu;
    let di = d as i32;

    let weights = (1..=players).map(|i| w.powi(i as i32)).collect();

    let mut resources = Vec::with_capacity(players as usize + 1);
    let constant = phi * (1.0 - beta) * (alpha + 1.0).powi(di);
    for _ in 1..=mu {
        resources.push(Latency::constant(constant));
    }
    for j in (mu + 1)..=players {
        resources.push(Latency::monomial(w.powi(-(j as i32) * (di + 1)), d as usize));
    }
    resources.push(Latency::zero());

    let strategies = (1..=players)
        .map(|i| {
            let (lo, hi) = nash_window(i, n, mu);
            vec![vec![i as usize - 1], ((lo - 1) as usize..hi as usize).collect()]
        })
        .collect();

    let game = Game::new(weights, resources, strategies)?;
    Ok(GeneralLBInstance {
        game,
        params,
        n,
        opt_profile: Profile::uniform(players as usize, OPT),
        nash_profile: Profile::uniform(players as usize, NASH),
    })
}

impl GeneralLBInstance {
    pub fn players(&self) -> u32 {
        self.n + self.params.mu
    }

    /// `Φ(1-β)(α+1)^d (Φ+1) β/(1-β) + n`, the optimum's social cost.
    pub fn opt_cost_closed_form(&self) -> f64 {
        let p = &self.params;
        p.phi * (1.0 - p.beta) * (p.alpha + 1.0).powi(p.d as i32) * (p.phi + 1.0) * p.beta / (1.0 - p.beta)
            + f64::from(self.n)
    }

    /// `α^{d+1} n`, the equilibrium's cost on facilities `μ+1..=n+μ` (which is
    /// all of it: the constant facilities are unused there and the last is free).
    pub fn nash_cost_closed_form(&self) -> f64 {
        self.params.alpha.powi(self.params.d as i32 + 1) * f64::from(self.n)
    }

    /// `(α+1) w^j`: no profile loads facility `j >= μ+1` beyond this (1-based `j`).
    pub fn load_bound(&self, j: u32) -> f64 {
        (self.params.alpha + 1.0) * self.params.w.powi(j as i32)
    }

    /// Weight `w_i = w^i` of 1-based player `i`.
    pub fn weight_of(&self, i: u32) -> f64 {
        self.params.w.powi(i as i32)
    }

    /// Facilities of `s̃_i` as a 1-based inclusive range.
    pub fn nash_facilities(&self, i: u32) -> (u32, u32) {
        nash_window(i, self.n, self.params.mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_at_nine() {
        let inst = gen_general_lb(9, 4).unwrap();
        assert_eq!(inst.params.mu, 3);
        assert_eq!(inst.game.players(), 7);
        assert_eq!(inst.game.resources().len(), 8);
        assert!(inst.game.resources()[7].is_dummy());
        assert_eq!(inst.game.strategy(0, NASH), &[3]);
        assert_eq!(inst.game.strategy(2, NASH), &[3, 4, 5]);
        assert_eq!(inst.game.strategy(3, NASH), &[4, 5, 6]);
        assert_eq!(inst.game.strategy(5, NASH), &[6, 7]);
        assert_eq!(inst.game.strategy(6, NASH), &[7]);
    }

    #[test]
    fn small_n_boundary() {
        // n = μ - 1: the first and last window cases meet at player μ.
        let inst = gen_general_lb(9, 2).unwrap();
        assert_eq!(inst.game.strategy(2, NASH), &[3, 4, 5]);
        assert!(matches!(gen_general_lb(9, 1), Err(GeneratorError::Parameter(_))));
        assert!(matches!(gen_general_lb(8, 4), Err(GeneratorError::Numerics(_))));
        assert!(matches!(gen_general_lb(31, 4), Err(GeneratorError::Cap(_))));
        assert!(matches!(gen_general_lb(9, 62), Err(GeneratorError::Cap(_))));
    }

    #[test]
    fn window_identities() {
        for (d, n) in [(9, 4), (12, 6), (20, 8)] {
            let inst = gen_general_lb(d, n).unwrap();
            let p = &inst.params;
            for i in (p.mu + 1)..=(n + p.mu) {
                let sum: f64 = ((i - p.mu)..i).map(|j| inst.weight_of(j)).sum();
                let target = p.alpha * inst.weight_of(i);
                assert!((sum - target).abs() <= 1e-9 * target, "d = {d}, i = {i}");
            }
        }
    }

    #[test]
    fn nash_loads_and_costs() {
        let inst = gen_general_lb(9, 4).unwrap();
        let p = &inst.params;
        let x = inst.game.loads(&inst.nash_profile).unwrap();
        for j in (p.mu + 1)..=(inst.n + p.mu) {
            let want = p.alpha * inst.weight_of(j);
            assert!((x.get(j as usize - 1) - want).abs() <= 1e-9 * want);
        }
        let c = inst.game.social_cost(&inst.nash_profile).unwrap();
        assert!((c - inst.nash_cost_closed_form()).abs() <= 1e-9 * c);
        let opt = inst.game.social_cost(&inst.opt_profile).unwrap();
        assert!((opt - inst.opt_cost_closed_form()).abs() <= 1e-9 * opt);
    }

    #[test]
    fn opt_deviation_cost_matches() {
        // C_i(s*_i, s̃_{-i}) = (α+1)^d w^{-i} for μ+1 <= i <= n
        let inst = gen_general_lb(9, 4).unwrap();
        let p = &inst.params;
        for i in (p.mu + 1)..=inst.n {
            let prof = inst.nash_profile.with(i as usize - 1, OPT);
            let got = inst.game.player_cost(&prof, i as usize - 1).unwrap();
            let want = (p.alpha + 1.0).powi(9) * p.w.powi(-(i as i32));
            assert!((got - want).abs() <= 1e-9 * want);
        }
    }
}
