//! Iterated elimination of strictly α-dominated strategies.

use alloc::vec;
use alloc::vec::Vec;

use super::enumerate::DEFAULT_CAP;
use crate::error::AnalysisError;
use crate::model::{Game, Profile, ProfileIter};

/// One removal: `removed` was beaten by `dominated_by` against every
/// surviving opponent profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Elimination {
    pub player: usize,
    pub removed: usize,
    pub dominated_by: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceResult {
    /// The single surviving profile, if every player kept exactly one strategy.
    pub survivor: Option<Profile>,
    pub trace: Vec<Elimination>,
    /// Surviving strategy indices per player.
    pub remaining: Vec<Vec<usize>>,
}

/// Whether `alpha * C_i(t, s_-i) < C_i(s, s_-i) - margin |C_i(s, s_-i)|`
/// for every opponent profile drawn from `alive`.
fn dominates(game: &Game, alive: &[Vec<usize>], i: usize, s: usize, t: usize, alpha: f64, margin: f64) -> bool {
    let others: Vec<usize> = (0..game.players()).filter(|&j| j != i).collect();
    let radix: Vec<usize> = others.iter().map(|&j| alive[j].len()).collect();
    let w = game.weight(i);
    let mut x = vec![0.0; game.resources().len()];
    for digits in ProfileIter::new(radix) {
        x.iter_mut().for_each(|v| *v = 0.0);
        for (k, &j) in others.iter().enumerate() {
            let wj = game.weight(j);
            for &e in game.strategy(j, alive[j][digits[k]]) {
                x[e] += wj;
            }
        }
        let cost = |strategy: usize| -> f64 {
            game.strategy(i, strategy).iter().map(|&e| game.resources()[e].eval(x[e] + w)).sum()
        };
        let (cs, ct) = (cost(s), cost(t));
        if !(alpha * ct < cs - margin * cs.abs()) {
            return false;
        }
    }
    true
}

/// Repeatedly removes a strictly α-dominated strategy, rescanning from the
/// first player after every removal. `cap` bounds the opponent profiles
/// examined per dominance check.
pub fn iterated_dominance(game: &Game, alpha: f64, margin: f64, cap: u64) -> Result<DominanceResult, AnalysisError> {
    if !(alpha >= 1.0) {
        return Err(AnalysisError::Precondition(alloc::format!("alpha = {alpha} must be at least 1")));
    }
    let mut alive: Vec<Vec<usize>> = (0..game.players()).map(|i| (0..game.strategy_count(i)).collect()).collect();
    let mut trace = Vec::new();
    'scan: loop {
        for i in 0..game.players() {
            if alive[i].len() < 2 {
                continue;
            }
            let opponents = (0..game.players())
                .filter(|&j| j != i)
                .fold(1u128, |acc, j| acc.saturating_mul(alive[j].len() as u128));
            if opponents > u128::from(cap) {
                return Err(AnalysisError::CapExceeded { count: opponents, cap });
            }
            for &s in &alive[i] {
                for &t in &alive[i] {
                    if t != s && dominates(game, &alive, i, s, t, alpha, margin) {
                        trace.push(Elimination { player: i, removed: s, dominated_by: t });
                        alive[i].retain(|&k| k != s);
                        continue 'scan;
                    }
                }
            }
        }
        break;
    }
    let survivor = alive.iter().all(|a| a.len() == 1).then(|| Profile::new(alive.iter().map(|a| a[0]).collect()));
    Ok(DominanceResult { survivor, trace, remaining: alive })
}

/// [`iterated_dominance`] with zero margin and the default cap.
pub fn iterated_dominance_default(game: &Game, alpha: f64) -> Result<DominanceResult, AnalysisError> {
    iterated_dominance(game, alpha, 0.0, DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Latency;

    #[test]
    fn cyclic_game_has_no_dominance() {
        // Two players, two identical links: each link is the best reply to
        // the other player sitting on the opposite one.
        let g = Game::new(
            vec![1.0, 1.0],
            vec![Latency::polynomial([0.0, 1.0]), Latency::polynomial([0.0, 1.0])],
            vec![vec![vec![0], vec![1]], vec![vec![0], vec![1]]],
        )
        .unwrap();
        let r = iterated_dominance(&g, 1.0, 0.0, DEFAULT_CAP).unwrap();
        assert_eq!(r.survivor, None);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn strictly_dominated_removed() {
        let g = Game::new(
            vec![1.0, 1.0],
            vec![Latency::constant(1.0), Latency::constant(3.0), Latency::polynomial([0.0, 1.0])],
            vec![vec![vec![0], vec![1]], vec![vec![2], vec![1]]],
        )
        .unwrap();
        let r = iterated_dominance(&g, 1.0, 0.0, DEFAULT_CAP).unwrap();
        assert_eq!(r.survivor, Some(Profile::new(vec![0, 0])));
        assert_eq!(r.trace[0], Elimination { player: 0, removed: 1, dominated_by: 0 });
        // With α = 4 nothing is strictly α-dominated any more.
        let r = iterated_dominance(&g, 4.0, 0.0, DEFAULT_CAP).unwrap();
        assert!(r.trace.is_empty());
    }
}
