//! Oracles and verifiers for SSP traces: an independent Bellman-Ford based
//! solver, flow reconstruction from a single arc, good/bad flow
//! classification, structural lemma checks and near-tie diagnostics.

mod bellman_ford;
mod classify;
mod gaps;
mod lemmas;
mod reconstruct;
mod reference;

pub use classify::{classify, FlowClassification, StepClass};
pub use gaps::{gap_report, GapReport};
pub use lemmas::{check_lemmas, check_lemmas_with, LemmaId, LemmaOptions, LemmaReport, Verdict};
pub use reconstruct::{
    check_reconstruct, harvest_triples, reconstruct, ReconstructCheck, ReconstructError, ReconstructTriple,
    Reconstruction,
};
pub use reference::reference_solve;

use crate::network::{residual, Flow, NetworkError, TransformedNetwork};

/// Absolute slack below which a cycle cost is not considered negative.
pub const OPTIMALITY_TOLERANCE: f64 = 1e-9;

/// Is `flow` a minimum-cost flow of its value, i.e. does its residual network
/// lack negative cycles?
pub fn verify_optimality(instance: &TransformedNetwork, flow: &Flow) -> Result<bool, NetworkError> {
    let view = residual(instance, flow)?;
    Ok(!bellman_ford::has_negative_cycle(&view, OPTIMALITY_TOLERANCE))
}
