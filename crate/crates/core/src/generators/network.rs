//! Network form of the general lower-bound instance.
//!
//! Facilities `1..=μ` become edges `u_{μ+1} -> u_j`. Facilities
//! `μ+1..=n+μ+1` sit between `u_j` and `u_{j+1}` and are used in both
//! directions, so each is replaced by a direction gadget
//! `a -> p, b -> p, p -> q, q -> a, q -> b` whose middle edge carries the
//! latency. Any two players crossing the gadget share `p -> q` in the same
//! direction. Every other edge costs nothing.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::general::{check_size, gen_general_lb, GeneralLBInstance, NASH, OPT};
use crate::error::GeneratorError;
use crate::model::{Game, Latency};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// Chain node `u_j` (1-based).
    Hub(u32),
    /// Sink `t_i` of player `i` (1-based).
    Sink(u32),
    /// Entry node `p` of the gadget replacing facility `j`.
    GadgetIn(u32),
    /// Exit node `q` of the gadget replacing facility `j`.
    GadgetOut(u32),
}

impl Node {
    pub fn label(&self) -> String {
        match self {
            Node::Hub(j) => format!("u{j}"),
            Node::Sink(i) => format!("t{i}"),
            Node::GadgetIn(j) => format!("p{j}"),
            Node::GadgetOut(j) => format!("q{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Carries the latency of 1-based facility `j`.
    Facility(u32),
    /// Zero-cost connector inside the gadget of facility `j`.
    Gadget(u32),
    /// Zero-cost edge into a sink.
    Sink,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub latency: Latency,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Commodity {
    pub source: usize,
    pub sink: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkLBInstance {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub commodities: Vec<Commodity>,
    /// The resource-level instance this network encodes.
    pub base: GeneralLBInstance,
}

struct Builder {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
}

impl Builder {
    fn node(&mut self, n: Node) -> usize {
        match self.nodes.iter().position(|&m| m == n) {
            Some(k) => k,
            None => {
                self.nodes.push(n);
                self.nodes.len() - 1
            }
        }
    }

    fn edge(&mut self, from: Node, to: Node, latency: Latency, kind: EdgeKind) {
        let (from, to) = (self.node(from), self.node(to));
        self.edges.push(Edge { from, to, latency, kind });
    }
}

/// Builds the digraph for `d >= 9`, `n >= μ - 1`, and checks that every
/// commodity has exactly the two expected paths.
pub fn gen_network_lb(d: u32, n: u32) -> Result<NetworkLBInstance, GeneratorError> {
    check_size(d, n)?;
    let base = gen_general_lb(d, n)?;
    let mu = base.params.mu;
    let players = n + mu;
    let resources = base.game.resources();
    let zero = Latency::zero;

    let mut b = Builder { nodes: Vec::new(), edges: Vec::new() };
    for j in 1..=players + 2 {
        b.node(Node::Hub(j));
    }
    for j in 1..=mu {
        b.edge(Node::Hub(mu + 1), Node::Hub(j), resources[j as usize - 1].clone(), EdgeKind::Facility(j));
    }
    for j in (mu + 1)..=(players + 1) {
        let (a, bb, p, q) = (Node::Hub(j), Node::Hub(j + 1), Node::GadgetIn(j), Node::GadgetOut(j));
        b.edge(a, p, zero(), EdgeKind::Gadget(j));
        b.edge(bb, p, zero(), EdgeKind::Gadget(j));
        b.edge(p, q, resources[j as usize - 1].clone(), EdgeKind::Facility(j));
        b.edge(q, a, zero(), EdgeKind::Gadget(j));
        b.edge(q, bb, zero(), EdgeKind::Gadget(j));
    }
    for i in 1..=players {
        b.edge(Node::Hub(i), Node::Sink(i), zero(), EdgeKind::Sink);
        let far = if i <= n { mu + 1 + i } else { players + 2 };
        b.edge(Node::Hub(far), Node::Sink(i), zero(), EdgeKind::Sink);
    }

    let commodities = (1..=players)
        .map(|i| {
            let source = if i <= mu { Node::Hub(mu + 1) } else { Node::Hub(i + 1) };
            Commodity { source: b.node(source), sink: b.node(Node::Sink(i)), weight: base.weight_of(i) }
        })
        .collect();

    let inst = NetworkLBInstance { nodes: b.nodes, edges: b.edges, commodities, base };
    inst.player_paths()?;
    Ok(inst)
}

impl NetworkLBInstance {
    /// All simple paths from `source` to `sink` as edge-index lists, in DFS order.
    pub fn simple_paths(&self, source: usize, sink: usize) -> Vec<Vec<usize>> {
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (k, e) in self.edges.iter().enumerate() {
            out_edges[e.from].push(k);
        }
        let mut found = Vec::new();
        let mut visited = vec![false; self.nodes.len()];
        let mut path = Vec::new();
        visited[source] = true;
        self.dfs(source, sink, &out_edges, &mut visited, &mut path, &mut found);
        found
    }

    fn dfs(
        &self,
        at: usize,
        sink: usize,
        out_edges: &[Vec<usize>],
        visited: &mut [bool],
        path: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if at == sink {
            found.push(path.clone());
            return;
        }
        for &k in &out_edges[at] {
            let next = self.edges[k].to;
            if visited[next] {
                continue;
            }
            visited[next] = true;
            path.push(k);
            self.dfs(next, sink, out_edges, visited, path, found);
            path.pop();
            visited[next] = false;
        }
    }

    /// Facilities (1-based) whose latency edges lie on a path.
    pub fn facilities_on(&self, path: &[usize]) -> BTreeSet<u32> {
        path.iter()
            .filter_map(|&k| match self.edges[k].kind {
                EdgeKind::Facility(j) => Some(j),
                _ => None,
            })
            .collect()
    }

    /// For each player, its two paths ordered as `[optimum, equilibrium]`.
    /// Fails unless every commodity has exactly two simple paths matching
    /// `s*_i` and `s̃_i`.
    pub fn player_paths(&self) -> Result<Vec<[Vec<usize>; 2]>, GeneratorError> {
        let game = &self.base.game;
        let mut out = Vec::with_capacity(self.commodities.len());
        for (idx, c) in self.commodities.iter().enumerate() {
            let i = idx + 1;
            let paths = self.simple_paths(c.source, c.sink);
            if paths.len() != 2 {
                return Err(GeneratorError::Network(format!("player {i} has {} simple paths", paths.len())));
            }
            let want = |s: usize| -> BTreeSet<u32> { game.strategy(idx, s).iter().map(|&e| e as u32 + 1).collect() };
            let (opt, nash) = (want(OPT), want(NASH));
            let sets = [self.facilities_on(&paths[0]), self.facilities_on(&paths[1])];
            let ordered = if sets[0] == opt && sets[1] == nash {
                [paths[0].clone(), paths[1].clone()]
            } else if sets[1] == opt && sets[0] == nash {
                [paths[1].clone(), paths[0].clone()]
            } else {
                return Err(GeneratorError::Network(format!(
                    "player {i}: path facilities {:?} do not match the strategies",
                    sets
                )));
            };
            for path in &ordered {
                self.check_gadget_direction(path).map_err(|j| {
                    GeneratorError::Network(format!("player {i} bypasses the latency edge of gadget {j}"))
                })?;
            }
            out.push(ordered);
        }
        Ok(out)
    }

    /// Every path touching a gadget must cross its `p -> q` edge.
    fn check_gadget_direction(&self, path: &[usize]) -> Result<(), u32> {
        let crossed: BTreeSet<u32> = self.facilities_on(path);
        for &k in path {
            if let EdgeKind::Gadget(j) = self.edges[k].kind {
                if !crossed.contains(&j) {
                    return Err(j);
                }
            }
        }
        Ok(())
    }

    /// The edge-level game: resources are edges, strategies are the two paths
    /// of each player (optimum first).
    pub fn to_game(&self) -> Result<Game, GeneratorError> {
        let paths = self.player_paths()?;
        let weights = self.commodities.iter().map(|c| c.weight).collect();
        let resources = self.edges.iter().map(|e| e.latency.clone()).collect();
        let strategies = paths.into_iter().map(|[a, b]| vec![a, b]).collect();
        Ok(Game::new(weights, resources, strategies)?)
    }

    pub fn is_gadget_edge(&self, k: usize) -> bool {
        matches!(self.edges[k].kind, EdgeKind::Gadget(_))
    }
}
