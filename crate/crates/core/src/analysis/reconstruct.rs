use thiserror::Error;

use super::classify;
use crate::network::{ArcId, Flow, NetworkError, TransformedNetwork};
use crate::solver::{AugmentationTrace, SolveError, Solver, SspOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconstructError {
    #[error("arc {0} belongs to an auxiliary edge")]
    AuxiliaryArc(ArcId),
    #[error("modified network has no s-t path")]
    NoPath,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// Result of [`reconstruct`], with the path lengths around the returned flow
/// in the modified network `G'`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub flow: Flow,
    pub augmentations: usize,
    /// Length of the last path augmented in `G'` (`-∞` if none).
    pub sp_minus: f64,
    /// Length of the path that was rejected (`+∞` if none remained or `z` was
    /// reached).
    pub sp_plus: f64,
}

/// Replays SSP on the network with the cost of `arc`'s edge overwritten and
/// returns the flow at which the next shortest path first exceeds `d`.
///
/// A forward arc sets the edge cost to the scale's upper bound, a backward arc
/// sets it to 0. The original cost of that edge is never read.
pub fn reconstruct(
    instance: &TransformedNetwork,
    arc: ArcId,
    d: f64,
) -> Result<Reconstruction, ReconstructError> {
    if instance.edge(arc.edge).is_auxiliary() {
        return Err(ReconstructError::AuxiliaryArc(arc));
    }
    let cost = if arc.is_forward() { instance.network().cost_scale().upper() } else { 0.0 };
    let modified = instance.with_cost(arc.edge, cost)?;
    let options = SspOptions { record_distances: false, ..SspOptions::default() };
    let mut solver = Solver::new(&modified, options);
    let mut sp_minus = f64::NEG_INFINITY;
    let mut sp_plus = f64::INFINITY;
    while !solver.is_done() {
        let Some(path) = solver.shortest_path()? else {
            if solver.steps() == 0 {
                return Err(ReconstructError::NoPath);
            }
            break;
        };
        if path.length > d {
            sp_plus = path.length;
            break;
        }
        sp_minus = path.length;
        solver.augment(path);
    }
    Ok(Reconstruction { flow: solver.flow(), augmentations: solver.steps(), sp_minus, sp_plus })
}

/// One `(f*, e, d)` test case taken from a trace: `flow_index` names
/// `f* = f_{flow_index}`, whose next path contains the good arc `arc`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructTriple {
    pub flow_index: usize,
    pub arc: ArcId,
    pub d: f64,
    pub sp_minus: f64,
    pub sp_plus: f64,
}

/// Triples for every good arc on every path `P_i` with `i ≥ 2`, each with
/// `d` at `sp⁻`, at the midpoint, and just below `sp⁺`.
pub fn harvest_triples(
    instance: &TransformedNetwork,
    trace: &AugmentationTrace,
) -> Result<Vec<ReconstructTriple>, NetworkError> {
    let classes = classify(instance, trace)?;
    let mut out = Vec::new();
    for (w, class) in trace.steps.windows(2).zip(&classes.steps[1..]) {
        let (sp_minus, sp_plus) = (w[0].length, w[1].length);
        let mut ds = vec![sp_minus, 0.5 * (sp_minus + sp_plus)];
        if sp_plus - 1e-9 >= sp_minus {
            ds.push(sp_plus - 1e-9);
        }
        for &arc in &class.good_arcs {
            for &d in &ds {
                out.push(ReconstructTriple { flow_index: w[0].index, arc, d, sp_minus, sp_plus });
            }
        }
    }
    Ok(out)
}

/// Summary of running [`reconstruct`] on harvested triples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReconstructCheck {
    pub triples: usize,
    /// Triples whose output differs from `f*` on some edge.
    pub flow_mismatches: Vec<ReconstructTriple>,
    /// Triples violating `sp⁻_{G'} ≤ sp⁻ < sp⁺ ≤ sp⁺_{G'}`.
    pub chain_violations: Vec<ReconstructTriple>,
    /// Triples whose output changed after altering the arc's original cost.
    pub invariance_failures: Vec<ReconstructTriple>,
}

impl ReconstructCheck {
    pub fn passed(&self) -> bool {
        self.flow_mismatches.is_empty() && self.chain_violations.is_empty() && self.invariance_failures.is_empty()
    }
}

/// Solves `instance`, harvests triples and checks each one. `alternative`
/// gives the replacement cost of an edge for the invariance re-run.
pub fn check_reconstruct(
    instance: &TransformedNetwork,
    alternative: impl Fn(usize) -> f64,
) -> Result<ReconstructCheck, ReconstructError> {
    let trace = crate::solver::solve(instance, &SspOptions::retaining_flows())?;
    let flows = trace.flows(instance);
    let mut report = ReconstructCheck::default();
    for triple in harvest_triples(instance, &trace)? {
        report.triples += 1;
        let expected = &flows[triple.flow_index];
        let got = reconstruct(instance, triple.arc, triple.d)?;
        if got.flow.values() != expected.values() {
            report.flow_mismatches.push(triple.clone());
        }
        let slack = 1e-9 * (1.0 + triple.sp_plus.abs());
        let chain = got.sp_minus <= triple.sp_minus + slack
            && triple.sp_minus < triple.sp_plus
            && triple.sp_plus <= got.sp_plus + slack;
        if !chain {
            report.chain_violations.push(triple.clone());
        }
        let altered = instance.with_cost(triple.arc.edge, alternative(triple.arc.edge))?;
        if reconstruct(&altered, triple.arc, triple.d)? != got {
            report.invariance_failures.push(triple);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{transform, FlowNetwork};

    fn two_paths() -> TransformedNetwork {
        let mut b = FlowNetwork::builder(4);
        b.edge(0, 1, 1.0, 0.1);
        b.edge(1, 3, 1.0, 0.2);
        b.edge(0, 2, 1.0, 0.3);
        b.edge(2, 3, 1.0, 0.4);
        b.balance(0, 2.0).balance(3, -2.0);
        TransformedNetwork::with_terminals(b.build().unwrap(), 0, 3).unwrap()
    }

    #[test]
    fn below_every_length_returns_empty_flow() {
        let inst = two_paths();
        let r = reconstruct(&inst, ArcId::forward(0), -1.0).unwrap();
        assert_eq!(r.flow, Flow::zero(4));
        assert_eq!(r.augmentations, 0);
    }

    #[test]
    fn recovers_intermediate_flow() {
        // f1 routes along 0->1->3; the good arc e2 lies on the next path.
        let inst = two_paths();
        let r = reconstruct(&inst, ArcId::forward(2), 0.5).unwrap();
        assert_eq!(r.flow.values(), &[1.0, 1.0, 0.0, 0.0]);
        assert!((r.sp_plus - 1.4).abs() < 1e-12);
    }

    #[test]
    fn large_threshold_runs_to_z() {
        let inst = two_paths();
        let r = reconstruct(&inst, ArcId::forward(2), 100.0).unwrap();
        assert_eq!(r.flow.value(), 2.0);
        assert_eq!(r.sp_plus, f64::INFINITY);
    }

    #[test]
    fn ignores_original_cost() {
        let inst = two_paths();
        let other = inst.with_cost(2, 0.9).unwrap();
        assert_eq!(
            reconstruct(&inst, ArcId::forward(2), 0.5).unwrap(),
            reconstruct(&other, ArcId::forward(2), 0.5).unwrap()
        );
    }

    #[test]
    fn rejects_auxiliary_arc() {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 1.0, 0.5);
        b.balance(0, 1.0).balance(1, -1.0);
        let inst = transform(&b.build().unwrap()).unwrap();
        let aux = (0..inst.edge_count()).find(|&e| inst.edge(e).is_auxiliary()).unwrap();
        assert_eq!(
            reconstruct(&inst, ArcId::forward(aux), 1.0),
            Err(ReconstructError::AuxiliaryArc(ArcId::forward(aux)))
        );
    }

    #[test]
    fn harvested_triples_reconstruct_exactly() {
        let mut b = FlowNetwork::builder(5);
        b.edge(0, 1, 2.0, 0.11);
        b.edge(0, 2, 1.0, 0.52);
        b.edge(1, 2, 1.0, 0.07);
        b.edge(1, 3, 1.0, 0.61);
        b.edge(2, 3, 2.0, 0.13);
        b.edge(3, 4, 3.0, 0.05);
        b.edge(2, 4, 1.0, 0.83);
        b.balance(0, 3.0).balance(4, -3.0);
        let inst = TransformedNetwork::with_terminals(b.build().unwrap(), 0, 4).unwrap();
        let report = check_reconstruct(&inst, |e| 1.0 - inst.edge(e).cost).unwrap();
        assert!(report.triples > 0);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn no_path_at_start() {
        let mut b = FlowNetwork::builder(3);
        b.edge(0, 1, 1.0, 0.5);
        b.balance(0, 1.0).balance(2, -1.0);
        let inst = TransformedNetwork::with_terminals(b.build().unwrap(), 0, 2).unwrap();
        assert_eq!(reconstruct(&inst, ArcId::forward(0), 1.0), Err(ReconstructError::NoPath));
    }
}
