//! JSON game files.
//!
//! ```json
//! { "weights": [1, 2],
//!   "resources": [{"kind": "poly", "coeffs": [0, 1]}, {"kind": "exp", "scale": 1}],
//!   "strategies": [[[0], [1]], [[0, 1]]] }
//! ```
//!
//! Generated instances add a `labels` object carrying the 1-based names of
//! players and resources used by the constructions, the weights before and
//! after canonical scaling, and the two reference profiles.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wpos_core::generators::{GeneralLBInstance, NetworkLBInstance, SingletonLBInstance};
use wpos_core::{Game, Latency, ModelError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ResourceSpec {
    Poly { coeffs: Vec<f64> },
    Exp { scale: f64 },
}

impl From<&Latency> for ResourceSpec {
    fn from(l: &Latency) -> Self {
        match l {
            Latency::Polynomial(c) => ResourceSpec::Poly { coeffs: c.clone() },
            Latency::Exponential { scale } => ResourceSpec::Exp { scale: *scale },
        }
    }
}

impl From<&ResourceSpec> for Latency {
    fn from(r: &ResourceSpec) -> Self {
        match r {
            ResourceSpec::Poly { coeffs } => Latency::polynomial(coeffs.clone()),
            ResourceSpec::Exp { scale } => Latency::exponential(*scale),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Labels {
    /// Which generator produced the game.
    pub construction: String,
    /// 1-based player numbers, in player order.
    pub players: Vec<u32>,
    /// Resource names, in resource order.
    pub resources: Vec<String>,
    pub original_weights: Vec<f64>,
    /// Weights after dividing by the smallest one.
    pub canonical_weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_profile: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nash_profile: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub weights: Vec<f64>,
    pub resources: Vec<ResourceSpec>,
    pub strategies: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(io::Error),
    Json(serde_json::Error),
    Invalid(ModelError),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "{e}"),
            LoadError::Json(e) => write!(f, "malformed game file: {e}"),
            LoadError::Invalid(e) => write!(f, "invalid game: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl GameFile {
    pub fn from_game(game: &Game) -> Self {
        GameFile {
            weights: game.weights().to_vec(),
            resources: game.resources().iter().map(ResourceSpec::from).collect(),
            strategies: game.strategies().to_vec(),
            labels: None,
        }
    }

    pub fn to_game(&self) -> Result<Game, ModelError> {
        Game::new(self.weights.clone(), self.resources.iter().map(Latency::from).collect(), self.strategies.clone())
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        serde_json::from_str(text).map_err(LoadError::Json)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("game files always serialise");
        s.push('\n');
        s
    }
}

/// Reads and validates a game file; errors name the first offending
/// player, strategy or resource.
pub fn load_game(path: &Path) -> Result<(Game, GameFile), LoadError> {
    let text = fs::read_to_string(path).map_err(LoadError::Io)?;
    let file = GameFile::parse(&text)?;
    let game = file.to_game().map_err(LoadError::Invalid)?;
    Ok((game, file))
}

fn canonical(weights: &[f64]) -> Vec<f64> {
    let m = weights.iter().copied().fold(f64::INFINITY, f64::min);
    weights.iter().map(|w| w / m).collect()
}

fn labels(game: &Game, construction: &str, resources: Vec<String>, opt: &[usize], nash: &[usize]) -> Labels {
    Labels {
        construction: construction.into(),
        players: (1..=game.players() as u32).collect(),
        resources,
        original_weights: game.weights().to_vec(),
        canonical_weights: canonical(game.weights()),
        opt_profile: Some(opt.to_vec()),
        nash_profile: Some(nash.to_vec()),
    }
}

pub fn general_file(inst: &GeneralLBInstance) -> GameFile {
    let names = (1..=inst.game.resources().len()).map(|j| j.to_string()).collect();
    let mut f = GameFile::from_game(&inst.game);
    f.labels = Some(labels(&inst.game, "general", names, inst.opt_profile.as_slice(), inst.nash_profile.as_slice()));
    f
}

pub fn singleton_file(inst: &SingletonLBInstance) -> GameFile {
    let names = (1..=inst.game.resources().len()).map(|j| j.to_string()).collect();
    let mut f = GameFile::from_game(&inst.game);
    f.labels = Some(labels(&inst.game, "singleton", names, inst.opt_profile.as_slice(), inst.nash_profile.as_slice()));
    f
}

/// Edge-level game of the network instance; resources are named `from->to`.
pub fn network_file(net: &NetworkLBInstance) -> Result<GameFile, wpos_core::GeneratorError> {
    let game = net.to_game()?;
    let names =
        net.edges.iter().map(|e| format!("{}->{}", net.nodes[e.from].label(), net.nodes[e.to].label())).collect();
    let mut f = GameFile::from_game(&game);
    f.labels = Some(labels(&game, "network", names, net.base.opt_profile.as_slice(), net.base.nash_profile.as_slice()));
    Ok(f)
}
