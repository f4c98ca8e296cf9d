//! Weighted congestion games: latencies, games, profiles and the cost
//! functions evaluated on them.
//!
//! A [`Game`] is immutable once built. [`Game::new`] checks every structural
//! invariant and reports the first violation together with the player or
//! resource index it concerns.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::ModelError;

/// Cost function attached to a resource.
#[derive(Debug, Clone, PartialEq)]
pub enum Latency {
    /// `c(x) = coeffs[0] + coeffs[1] x + ... + coeffs[d] x^d`, all coefficients nonnegative.
    Polynomial(Vec<f64>),
    /// `c(x) = scale * e^x`.
    Exponential { scale: f64 },
}

impl Latency {
    pub fn polynomial(coeffs: impl Into<Vec<f64>>) -> Self {
        Latency::Polynomial(coeffs.into())
    }

    /// Degree-0 polynomial with the given value.
    pub fn constant(value: f64) -> Self {
        Latency::Polynomial(vec![value])
    }

    /// `coeff * x^degree`.
    pub fn monomial(coeff: f64, degree: usize) -> Self {
        let mut coeffs = vec![0.0; degree + 1];
        coeffs[degree] = coeff;
        Latency::Polynomial(coeffs)
    }

    /// The explicit zero-cost resource.
    pub fn zero() -> Self {
        Latency::Polynomial(vec![0.0])
    }

    pub fn exponential(scale: f64) -> Self {
        Latency::Exponential { scale }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Latency::Polynomial(coeffs) => coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a),
            Latency::Exponential { scale } => scale * x.exp(),
        }
    }

    /// True for an all-zero polynomial: a resource that never costs anything.
    pub fn is_dummy(&self) -> bool {
        matches!(self, Latency::Polynomial(c) if c.iter().all(|&a| a == 0.0))
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self, Latency::Exponential { .. })
    }

    /// Index of the highest nonzero coefficient; 0 for dummies and exponentials.
    pub fn degree(&self) -> usize {
        match self {
            Latency::Polynomial(c) => c.iter().rposition(|&a| a != 0.0).unwrap_or(0),
            Latency::Exponential { .. } => 0,
        }
    }

    fn validate(&self, resource: usize) -> Result<(), ModelError> {
        match self {
            Latency::Polynomial(coeffs) => {
                if coeffs.is_empty() {
                    return Err(ModelError::EmptyPolynomial { resource });
                }
                for (degree, &value) in coeffs.iter().enumerate() {
                    if !(value.is_finite() && value >= 0.0) {
                        return Err(ModelError::NegativeCoefficient { resource, degree, value });
                    }
                }
                Ok(())
            }
            &Latency::Exponential { scale } => {
                if scale.is_finite() && scale > 0.0 {
                    Ok(())
                } else {
                    Err(ModelError::BadExponentialScale { resource, scale })
                }
            }
        }
    }
}

/// A pure strategy profile: one strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(choice: Vec<usize>) -> Self {
        Profile(choice)
    }

    /// Every player on their `index`-th strategy.
    pub fn uniform(players: usize, index: usize) -> Self {
        Profile(vec![index; players])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn choice(&self, player: usize) -> usize {
        self.0[player]
    }

    /// Copy of this profile with `player` switched to `strategy`.
    pub fn with(&self, player: usize, strategy: usize) -> Profile {
        let mut next = self.0.clone();
        next[player] = strategy;
        Profile(next)
    }

    pub fn set(&mut self, player: usize, strategy: usize) {
        self.0[player] = strategy;
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Per-resource loads `x_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadVector(Vec<f64>);

impl LoadVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, resource: usize) -> f64 {
        self.0[resource]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// A weighted congestion game.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    weights: Vec<f64>,
    resources: Vec<Latency>,
    strategies: Vec<Vec<Vec<usize>>>,
    degree: usize,
}

impl Game {
    /// Validates and builds a game. Strategies are sorted; a resource listed
    /// twice in one strategy is rejected.
    pub fn new(
        weights: Vec<f64>,
        resources: Vec<Latency>,
        mut strategies: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, ModelError> {
        if weights.is_empty() {
            return Err(ModelError::NoPlayers);
        }
        if weights.len() != strategies.len() {
            return Err(ModelError::PlayerCountMismatch { weights: weights.len(), strategies: strategies.len() });
        }
        if resources.is_empty() {
            return Err(ModelError::NoResources);
        }
        for (player, &weight) in weights.iter().enumerate() {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(ModelError::NonPositiveWeight { player, weight });
            }
        }
        for (resource, latency) in resources.iter().enumerate() {
            latency.validate(resource)?;
        }
        for (player, set) in strategies.iter_mut().enumerate() {
            if set.is_empty() {
                return Err(ModelError::NoStrategies { player });
            }
            for (strategy, s) in set.iter_mut().enumerate() {
                if s.is_empty() {
                    return Err(ModelError::EmptyStrategy { player, strategy });
                }
                s.sort_unstable();
                for k in 0..s.len() {
                    if s[k] >= resources.len() {
                        return Err(ModelError::UnknownResource { player, strategy, resource: s[k] });
                    }
                    if k > 0 && s[k] == s[k - 1] {
                        return Err(ModelError::DuplicateResource { player, strategy, resource: s[k] });
                    }
                }
            }
        }
        let degree = resources.iter().map(Latency::degree).max().unwrap_or(0);
        Ok(Game { weights, resources, strategies, degree })
    }

    pub fn players(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, player: usize) -> f64 {
        self.weights[player]
    }

    pub fn resources(&self) -> &[Latency] {
        &self.resources
    }

    pub fn strategies(&self) -> &[Vec<Vec<usize>>] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize, index: usize) -> &[usize] {
        &self.strategies[player][index]
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.strategies[player].len()
    }

    /// Largest polynomial degree present.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// Ratio `max w / min w`, the `W` of the canonical game.
    pub fn weight_range(&self) -> f64 {
        self.max_weight() / self.min_weight()
    }

    pub fn has_exponential(&self) -> bool {
        self.resources.iter().any(Latency::is_exponential)
    }

    pub fn has_polynomial(&self) -> bool {
        self.resources.iter().any(|l| !l.is_exponential())
    }

    /// Number of pure profiles, saturating.
    pub fn profile_count(&self) -> u128 {
        self.strategies.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    pub fn validate_profile(&self, p: &Profile) -> Result<(), ModelError> {
        if p.len() != self.players() {
            return Err(ModelError::ProfileLength { expected: self.players(), got: p.len() });
        }
        for (player, &choice) in p.as_slice().iter().enumerate() {
            let available = self.strategies[player].len();
            if choice >= available {
                return Err(ModelError::ProfileChoice { player, choice, available });
            }
        }
        Ok(())
    }

    fn check_player(&self, player: usize) -> Result<(), ModelError> {
        if player < self.players() {
            Ok(())
        } else {
            Err(ModelError::PlayerIndex { player, players: self.players() })
        }
    }

    /// `x_e(p)`: total weight on each resource.
    pub fn loads(&self, p: &Profile) -> Result<LoadVector, ModelError> {
        self.validate_profile(p)?;
        Ok(LoadVector(self.loads_unchecked(p.as_slice())))
    }

    pub(crate) fn loads_unchecked(&self, choice: &[usize]) -> Vec<f64> {
        let mut x = vec![0.0; self.resources.len()];
        for (player, &c) in choice.iter().enumerate() {
            let w = self.weights[player];
            for &e in &self.strategies[player][c] {
                x[e] += w;
            }
        }
        x
    }

    /// `C_i(p)`: sum of latencies over player `i`'s chosen resources.
    pub fn player_cost(&self, p: &Profile, player: usize) -> Result<f64, ModelError> {
        self.validate_profile(p)?;
        self.check_player(player)?;
        let x = self.loads_unchecked(p.as_slice());
        Ok(self.cost_on(&x, &self.strategies[player][p.choice(player)]))
    }

    /// All player costs at once.
    pub fn player_costs(&self, p: &Profile) -> Result<Vec<f64>, ModelError> {
        self.validate_profile(p)?;
        let x = self.loads_unchecked(p.as_slice());
        Ok((0..self.players()).map(|i| self.cost_on(&x, &self.strategies[i][p.choice(i)])).collect())
    }

    /// `C(p) = sum_e x_e c_e(x_e)`.
    pub fn social_cost(&self, p: &Profile) -> Result<f64, ModelError> {
        self.validate_profile(p)?;
        Ok(self.social_cost_on(&self.loads_unchecked(p.as_slice())))
    }

    pub(crate) fn social_cost_on(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.resources).filter(|(&load, _)| load > 0.0).map(|(&load, c)| load * c.eval(load)).sum()
    }

    #[inline]
    pub(crate) fn cost_on(&self, x: &[f64], strategy: &[usize]) -> f64 {
        strategy.iter().map(|&e| self.resources[e].eval(x[e])).sum()
    }

    /// Cost player `i` would pay on strategy `alt` while everyone else keeps
    /// the loads `x` (which include `i` on strategy `current`).
    pub(crate) fn deviation_cost_on(&self, x: &[f64], player: usize, current: usize, alt: usize) -> f64 {
        if current == alt {
            return self.cost_on(x, &self.strategies[player][current]);
        }
        let w = self.weights[player];
        let cur = &self.strategies[player][current];
        self.strategies[player][alt]
            .iter()
            .map(|&e| {
                let load = if cur.binary_search(&e).is_ok() { x[e] } else { x[e] + w };
                self.resources[e].eval(load)
            })
            .sum()
    }

    /// Rescales so the smallest weight is exactly 1. Coefficient `a_j` is
    /// multiplied by `(min w)^j`, which leaves every latency value, and so
    /// every player cost, unchanged.
    pub fn canonical_scale(&self) -> Result<Game, ModelError> {
        let m = self.min_weight();
        if let Some(resource) = self.resources.iter().position(Latency::is_exponential) {
            if m != 1.0 {
                return Err(ModelError::ExponentialResource { resource });
            }
        }
        if m == 1.0 {
            return Ok(self.clone());
        }
        let weights = self.weights.iter().map(|w| w / m).collect();
        let resources = self
            .resources
            .iter()
            .map(|l| match l {
                Latency::Polynomial(c) => {
                    Latency::Polynomial(c.iter().enumerate().map(|(j, &a)| a * m.powi(j as i32)).collect())
                }
                other => other.clone(),
            })
            .collect();
        Game::new(weights, resources, self.strategies.clone())
    }

    /// Splits each polynomial resource into one resource per nonzero
    /// monomial. An all-zero resource is kept as a single zero resource so
    /// that no strategy becomes empty.
    pub fn expand_to_monomials(&self) -> Result<Game, ModelError> {
        let mut resources = Vec::new();
        let mut replicas: Vec<Vec<usize>> = Vec::with_capacity(self.resources.len());
        for (resource, latency) in self.resources.iter().enumerate() {
            let Latency::Polynomial(coeffs) = latency else {
                return Err(ModelError::ExponentialResource { resource });
            };
            let mut ids = Vec::new();
            for (j, &a) in coeffs.iter().enumerate() {
                if a != 0.0 {
                    ids.push(resources.len());
                    resources.push(Latency::monomial(a, j));
                }
            }
            if ids.is_empty() {
                ids.push(resources.len());
                resources.push(Latency::zero());
            }
            replicas.push(ids);
        }
        let strategies = self
            .strategies
            .iter()
            .map(|set| set.iter().map(|s| s.iter().flat_map(|&e| replicas[e].iter().copied()).collect()).collect())
            .collect();
        Game::new(self.weights.clone(), resources, strategies)
    }

    /// Iterates every profile in lexicographic order of the choice vector.
    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(self.strategies.iter().map(Vec::len).collect())
    }
}

/// Mixed-radix counter over all profiles; the last player varies fastest so
/// the sequence is lexicographic.
#[derive(Debug, Clone)]
pub struct ProfileIter {
    radix: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(radix: Vec<usize>) -> Self {
        let next = if radix.iter().all(|&r| r > 0) { Some(vec![0; radix.len()]) } else { None };
        ProfileIter { radix, next }
    }

    /// Starts at the profile with the given lexicographic rank.
    pub fn starting_at(radix: Vec<usize>, mut rank: u128) -> Self {
        let mut digits = vec![0; radix.len()];
        for k in (0..radix.len()).rev() {
            let r = radix[k] as u128;
            digits[k] = (rank % r) as usize;
            rank /= r;
        }
        let next = if rank == 0 && radix.iter().all(|&r| r > 0) { Some(digits) } else { None };
        ProfileIter { radix, next }
    }
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.radix[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn linear_shared() -> Game {
        Game::new(vec![1.0, 1.0], vec![Latency::polynomial([0.0, 1.0])], vec![vec![vec![0]], vec![vec![0]]]).unwrap()
    }

    #[test]
    fn loads_sum_weights() {
        let g = Game::new(vec![1.0, 2.0], vec![Latency::polynomial([0.0, 1.0])], vec![vec![vec![0]], vec![vec![0]]])
            .unwrap();
        let x = g.loads(&Profile::new(vec![0, 0])).unwrap();
        assert_eq!(x.as_slice(), &[3.0]);

        let g = Game::new(vec![5.0], vec![Latency::polynomial([0.0, 1.0]); 3], vec![vec![vec![1, 0]]]).unwrap();
        assert_eq!(g.loads(&Profile::new(vec![0])).unwrap().as_slice(), &[5.0, 5.0, 0.0]);
    }

    #[test]
    fn player_and_social_costs() {
        let single = Game::new(vec![1.0], vec![Latency::polynomial([0.0, 1.0])], vec![vec![vec![0]]]).unwrap();
        assert_eq!(single.player_cost(&Profile::new(vec![0]), 0).unwrap(), 1.0);

        let sq =
            Game::new(vec![1.0, 1.0], vec![Latency::monomial(1.0, 2)], vec![vec![vec![0]], vec![vec![0]]]).unwrap();
        let p = Profile::new(vec![0, 0]);
        assert_eq!(sq.player_cost(&p, 0).unwrap(), 4.0);
        assert_eq!(sq.player_cost(&p, 1).unwrap(), 4.0);

        assert_eq!(linear_shared().social_cost(&p).unwrap(), 4.0);

        let dummies =
            Game::new(vec![1.0, 3.0], vec![Latency::zero(), Latency::zero()], vec![vec![vec![0]], vec![vec![1]]])
                .unwrap();
        assert_eq!(dummies.social_cost(&p).unwrap(), 0.0);
    }

    #[test]
    fn validation_reports_index() {
        let err = Game::new(vec![1.0, -2.0], vec![Latency::zero()], vec![vec![vec![0]], vec![vec![0]]]);
        assert_eq!(err, Err(ModelError::NonPositiveWeight { player: 1, weight: -2.0 }));
        let err = Game::new(vec![1.0], vec![Latency::zero()], vec![vec![vec![]]]);
        assert_eq!(err, Err(ModelError::EmptyStrategy { player: 0, strategy: 0 }));
        let err = Game::new(vec![1.0], vec![Latency::zero()], vec![vec![vec![0, 0]]]);
        assert_eq!(err, Err(ModelError::DuplicateResource { player: 0, strategy: 0, resource: 0 }));
        let err = Game::new(vec![1.0], vec![Latency::zero()], vec![vec![vec![0], vec![3]]]);
        assert_eq!(err, Err(ModelError::UnknownResource { player: 0, strategy: 1, resource: 3 }));
        let err = Game::new(vec![1.0], vec![Latency::polynomial([0.0, -1.0])], vec![vec![vec![0]]]);
        assert_eq!(err, Err(ModelError::NegativeCoefficient { resource: 0, degree: 1, value: -1.0 }));
        let err = Game::new(vec![1.0], vec![Latency::exponential(0.0)], vec![vec![vec![0]]]);
        assert!(matches!(err, Err(ModelError::BadExponentialScale { resource: 0, .. })));
    }

    #[test]
    fn invalid_profile_rejected() {
        let g = linear_shared();
        assert_eq!(
            g.loads(&Profile::new(vec![0, 1])),
            Err(ModelError::ProfileChoice { player: 1, choice: 1, available: 1 })
        );
        assert_eq!(g.loads(&Profile::new(vec![0])), Err(ModelError::ProfileLength { expected: 2, got: 1 }));
        assert_eq!(g.player_cost(&Profile::new(vec![0, 0]), 2), Err(ModelError::PlayerIndex { player: 2, players: 2 }));
    }

    #[test]
    fn degree_and_dummy() {
        let g = Game::new(
            vec![1.0],
            vec![Latency::polynomial([1.0, 0.0, 3.0, 0.0]), Latency::zero()],
            vec![vec![vec![0, 1]]],
        )
        .unwrap();
        assert_eq!(g.degree(), 2);
        assert!(g.resources()[1].is_dummy());
        assert!(!g.resources()[0].is_dummy());
    }

    #[test]
    fn canonical_scale_examples() {
        let g = Game::new(vec![2.0, 4.0], vec![Latency::polynomial([0.0, 1.0])], vec![vec![vec![0]], vec![vec![0]]])
            .unwrap();
        let s = g.canonical_scale().unwrap();
        assert_eq!(s.weights(), &[1.0, 2.0]);
        assert_eq!(s.resources()[0], Latency::polynomial([0.0, 2.0]));

        let fixed =
            Game::new(vec![1.0, 3.0], vec![Latency::polynomial([1.0, 1.0])], vec![vec![vec![0]], vec![vec![0]]])
                .unwrap();
        assert_eq!(fixed.canonical_scale().unwrap(), fixed);
    }

    #[test]
    fn canonical_scale_preserves_best_responses() {
        // weights (0.5, 1.5), c(x) = x^2 on two resources, plus a constant resource
        let g = Game::new(
            vec![0.5, 1.5],
            vec![Latency::monomial(1.0, 2), Latency::monomial(1.0, 2), Latency::constant(0.3)],
            vec![vec![vec![0], vec![1], vec![2]], vec![vec![0], vec![1, 2]]],
        )
        .unwrap();
        let s = g.canonical_scale().unwrap();
        assert_eq!(s.weights(), &[1.0, 3.0]);
        assert_eq!(s.resources()[0], Latency::polynomial([0.0, 0.0, 0.25]));
        for choice in g.profiles() {
            let p = Profile::new(choice);
            for i in 0..2 {
                let costs = |game: &Game| -> Vec<f64> {
                    (0..game.strategy_count(i)).map(|k| game.player_cost(&p.with(i, k), i).unwrap()).collect()
                };
                let (a, b) = (costs(&g), costs(&s));
                let argmin = |v: &[f64]| v.iter().enumerate().min_by(|x, y| x.1.partial_cmp(y.1).unwrap()).unwrap().0;
                let argmax = |v: &[f64]| v.iter().enumerate().max_by(|x, y| x.1.partial_cmp(y.1).unwrap()).unwrap().0;
                assert_eq!(argmin(&a), argmin(&b));
                assert_eq!(argmax(&a), argmax(&b));
            }
        }
    }

    #[test]
    fn expand_splits_polynomial() {
        let g = Game::new(vec![1.0], vec![Latency::polynomial([1.0, 0.0, 3.0])], vec![vec![vec![0]]]).unwrap();
        let e = g.expand_to_monomials().unwrap();
        assert_eq!(e.resources(), &[Latency::constant(1.0), Latency::monomial(3.0, 2)]);
        assert_eq!(e.strategy(0, 0), &[0, 1]);

        let mono =
            Game::new(vec![1.0, 2.0], vec![Latency::monomial(2.0, 1)], vec![vec![vec![0]], vec![vec![0]]]).unwrap();
        assert_eq!(mono.expand_to_monomials().unwrap(), mono);

        let exp = Game::new(vec![1.0], vec![Latency::exponential(1.0)], vec![vec![vec![0]]]).unwrap();
        assert_eq!(exp.expand_to_monomials(), Err(ModelError::ExponentialResource { resource: 0 }));
    }

    #[test]
    fn profile_iteration_is_lexicographic() {
        let all: Vec<_> = ProfileIter::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
        let tail: Vec<_> = ProfileIter::starting_at(vec![2, 3], 4).collect();
        assert_eq!(tail, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(ProfileIter::starting_at(vec![2, 3], 6).count(), 0);
    }
}
