//! The right-to-left rewriting used to bound an intermediate player's
//! equilibrium cost in the general lower-bound instance.
//!
//! Players are 1-based here, matching [`GeneralLBInstance::nash_facilities`].

use alloc::format;

use crate::error::AnalysisError;
use crate::generators::{GeneralLBInstance, NASH, OPT};
use crate::model::Profile;
use crate::tolerance::{strictly_less, Verdict};

fn at(p: &Profile, player: u32) -> usize {
    p.choice(player as usize - 1)
}

fn set(p: &mut Profile, player: u32, strategy: usize) {
    p.set(player as usize - 1, strategy);
}

fn check_input(inst: &GeneralLBInstance, partial: &Profile, i: u32) -> Result<(), AnalysisError> {
    inst.game.validate_profile(partial)?;
    let mu = inst.params.mu;
    if i < mu + 1 || i > inst.n {
        return Err(AnalysisError::Precondition(format!("player {i} outside [{}, {}]", mu + 1, inst.n)));
    }
    if let Some(j) = (1..i).find(|&j| at(partial, j) != NASH) {
        return Err(AnalysisError::Precondition(format!("player {j} < {i} is not on its equilibrium strategy")));
    }
    Ok(())
}

/// Moves player `i + μ` to its optimum strategy, then walks `k` down from
/// `i + μ - 1`, putting player `k` on its equilibrium strategy while some
/// player strictly between `i` and `k` is still on its optimum strategy.
pub fn dominate_procedure(inst: &GeneralLBInstance, partial: &Profile, i: u32) -> Result<Profile, AnalysisError> {
    check_input(inst, partial, i)?;
    let mu = inst.params.mu;
    let mut out = partial.clone();
    set(&mut out, i + mu, OPT);
    let mut k = i + mu - 1;
    while (i + 1..k).any(|j| at(&out, j) == OPT) {
        set(&mut out, k, NASH);
        k -= 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominateCheck {
    /// Untouched outside `(i, i+μ]`, player `i+μ` on its optimum strategy,
    /// and at most one of `i+1 .. i+μ-1` off its equilibrium strategy.
    pub shape_ok: bool,
    /// The one player of `i+1 .. i+μ-1` not on its equilibrium strategy.
    pub odd_player: Option<u32>,
    /// `C_i(s̃_i, partial)`.
    pub cost_before: f64,
    /// `C_i(s̃_i, output)`.
    pub cost_after: f64,
    /// Verdict on `cost_before < cost_after`; marginal counts as equality.
    pub verdict: Verdict,
}

impl DominateCheck {
    /// Shape holds and the cost did not decrease beyond tolerance.
    pub fn passed(&self) -> bool {
        self.shape_ok && self.verdict.not_failed()
    }
}

/// Checks an output of [`dominate_procedure`] against its input.
pub fn check_dominate(
    inst: &GeneralLBInstance,
    partial: &Profile,
    output: &Profile,
    i: u32,
) -> Result<DominateCheck, AnalysisError> {
    check_input(inst, partial, i)?;
    inst.game.validate_profile(output)?;
    let mu = inst.params.mu;
    let players = inst.players();
    let outside_same = (1..=players).filter(|&j| j <= i || j > i + mu).all(|j| at(partial, j) == at(output, j));
    let last_opt = at(output, i + mu) == OPT;
    let odd: alloc::vec::Vec<u32> = (i + 1..i + mu).filter(|&j| at(output, j) != NASH).collect();
    let shape_ok = outside_same && last_opt && odd.len() <= 1;

    let idx = i as usize - 1;
    let cost_before = inst.game.player_cost(&partial.with(idx, NASH), idx)?;
    let cost_after = inst.game.player_cost(&output.with(idx, NASH), idx)?;
    Ok(DominateCheck {
        shape_ok,
        odd_player: odd.first().copied(),
        cost_before,
        cost_after,
        verdict: strictly_less(cost_before, cost_after),
    })
}
