//! Random instances under the smoothed model and the perturbed-integer model.
//!
//! Every random draw tied to an edge comes from its own ChaCha stream keyed
//! by `(seed, purpose, edge index)`, so an edge's cost does not depend on how
//! many edges precede it or in which order they are visited.

mod cost_spec;
mod perturbed;
mod topology;

pub use cost_spec::{sample_costs, Convention, SmoothedCostSpec};
pub use perturbed::{perturb_integers, perturbed_integer, PerturbedInstance};
pub use topology::{random_topology, Shape, Topology, TopologyEdge};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::network::{EdgeId, NetworkError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("infeasible shape: {0}")]
    InfeasibleShape(String),
    #[error("edge {edge}: invalid interval [{lo}, {hi}]: {reason}")]
    InvalidInterval { edge: EdgeId, lo: f64, hi: f64, reason: String },
    #[error("cost spec line {line}: {message}")]
    BadSpec { line: usize, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Independent random streams per purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Purpose {
    Cost = 0,
    Placement = 1,
    Integer = 2,
    Noise = 3,
    Topology = 4,
}

pub(crate) fn edge_rng(seed: u64, purpose: Purpose, edge: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 48) | edge as u64);
    rng
}

/// A uniform draw from `[lo, hi]` for one edge.
pub(crate) fn uniform_cost(seed: u64, edge: usize, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    edge_rng(seed, Purpose::Cost, edge).gen_range(lo..=hi)
}
