//! Cover times and local times of the continuous-time simple random walk on
//! wired planar lattice domains, together with the discrete potential theory
//! and Gaussian free field machinery used to analyse them.
//!
//! Time conventions: the walk jumps along each edge at rate `edge_rate`
//! (default `1/(2π)`); "∂-time" is time measured by the local time
//! accumulated at the contracted boundary vertex.

pub mod clustering;
pub mod constants;
pub mod domain;
pub mod error;
pub mod gff;
pub mod harmonic;
pub mod isomorphism;
pub mod parallel;
pub mod rng;
pub mod stats;
pub mod walk;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
