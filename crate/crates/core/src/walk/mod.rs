//! Event-driven continuous-time simple random walk on a wired graph.
//!
//! Holding times are exponential with total rate `4 * edge_rate` at interior
//! vertices and `deg(∂) * edge_rate` at `∂`; the next vertex is a uniformly
//! chosen edge (multiplicity counts). Local times are accumulated exactly
//! from the holding times, so no trajectory is ever stored.

mod downcrossing;
mod engine;
mod observer;

pub use downcrossing::{gamma_radii, DowncrossingCounter, DowncrossingLog};
pub use engine::{
    inverse_boundary_time, run_to_cover, sample_local_time_field, simulate_excursion,
    BoundaryTimeline, CoverResult, ExcursionRecord, LocalTimeField, WalkConfig, Walker,
    DEFAULT_EDGE_RATE,
};
pub use observer::{NoObserver, WalkObserver};
