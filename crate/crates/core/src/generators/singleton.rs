//! The singleton lower-bound instance: `n` players on a line of `n + 1`
//! facilities, each choosing its own facility or the next one.
//!
//! Strategy index 0 is `{i}` (the optimum), index 1 is `{i+1}` (the unique
//! approximate equilibrium).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::general::{NASH, OPT};
use crate::error::GeneratorError;
use crate::model::{Game, Latency, Profile};
use crate::numerics::singleton_w;

#[derive(Debug, Clone, PartialEq)]
pub struct SingletonLBInstance {
    pub game: Game,
    pub d: u32,
    pub alpha: f64,
    pub gamma: f64,
    pub n: u32,
    pub w: f64,
    pub opt_profile: Profile,
    pub nash_profile: Profile,
}

/// Builds the instance for `1 <= α < γ < d` and `n >= 2`.
pub fn gen_singleton_lb(d: u32, alpha: f64, gamma: f64, n: u32) -> Result<SingletonLBInstance, GeneratorError> {
    let df = f64::from(d);
    if d < 1 {
        return Err(GeneratorError::Parameter(format!("d must be at least 1, got {d}")));
    }
    if !(alpha >= 1.0) {
        return Err(GeneratorError::Parameter(format!("alpha = {alpha} must be at least 1")));
    }
    if !(alpha < df) {
        return Err(GeneratorError::Parameter(format!("alpha = {alpha} must be below d = {d}")));
    }
    if !(gamma > alpha) {
        return Err(GeneratorError::Parameter(format!("gamma = {gamma} must exceed alpha = {alpha}")));
    }
    if !(gamma < df) {
        return Err(GeneratorError::Parameter(format!("gamma = {gamma} must be below d = {d}")));
    }
    if n < 2 {
        return Err(GeneratorError::Parameter(format!("n must be at least 2, got {n}")));
    }

    let w = singleton_w(d, gamma);
    let di = d as i32;
    let gwd = gamma * w.powi(di);
    let edge = w.powi(di) * (w + 1.0).powi(di);

    let mut resources = Vec::with_capacity(n as usize + 1);
    resources.push(Latency::constant(gamma * edge));
    for j in 2..=n {
        resources.push(Latency::monomial(gwd.powi(2 - j as i32), d as usize));
    }
    resources.push(Latency::constant(gamma.powi(1 - n as i32) * edge));
    let weights: Vec<f64> = (1..=n).map(|i| w.powi(i as i32)).collect();

    let bad = resources.iter().any(|l| match l {
        Latency::Polynomial(c) => c.iter().any(|a| !a.is_finite()) || c.iter().all(|&a| a == 0.0),
        Latency::Exponential { .. } => false,
    }) || weights.iter().any(|x| !x.is_finite());
    if bad {
        return Err(GeneratorError::Cap(format!("n = {n} with d = {d}, gamma = {gamma} leaves the double range")));
    }

    let strategies = (0..n as usize).map(|i| vec![vec![i], vec![i + 1]]).collect();
    let game = Game::new(weights, resources, strategies)?;
    Ok(SingletonLBInstance {
        game,
        d,
        alpha,
        gamma,
        n,
        w,
        opt_profile: Profile::uniform(n as usize, OPT),
        nash_profile: Profile::uniform(n as usize, NASH),
    })
}

impl SingletonLBInstance {
    /// `(w/γ)^n γ w^d (1+w)^d`: the last player's share of the equilibrium
    /// cost, a lower bound on all of it.
    pub fn nash_cost_lower_bound(&self) -> f64 {
        let di = self.d as i32;
        (self.w / self.gamma).powi(self.n as i32) * self.gamma * self.w.powi(di) * (1.0 + self.w).powi(di)
    }

    /// Latency of 1-based facility `j` at load `t`.
    pub fn latency(&self, j: u32, t: f64) -> f64 {
        self.game.resources()[j as usize - 1].eval(t)
    }

    /// Weight of 1-based player `i`.
    pub fn weight_of(&self, i: u32) -> f64 {
        self.game.weight(i as usize - 1)
    }
}
