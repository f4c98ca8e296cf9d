//! Instance generators: the lower-bound constructions and a seeded fuzzer.

mod general;
mod network;
mod random;
mod singleton;

pub use general::{gen_general_lb, GeneralLBInstance, MAX_DEGREE, MAX_PLAYERS, NASH, OPT};
pub use network::{gen_network_lb, Commodity, Edge, EdgeKind, NetworkLBInstance, Node};
pub use random::{random_exponential_game, random_game, RandomGameConfig};
pub use singleton::{gen_singleton_lb, SingletonLBInstance};
