//! Price-of-stability machinery for weighted congestion games.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! front end and threaded enumeration live in the `wpos` companion crate.

#![no_std]
// `!(x >= lo)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod equilibria;
pub mod error;
pub mod generators;
pub mod model;
pub mod numerics;
pub mod tolerance;

pub use error::{AnalysisError, GeneratorError, ModelError, NumericsError};
pub use model::{Game, Latency, LoadVector, Profile, ProfileIter};
