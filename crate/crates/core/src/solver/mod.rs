//! Successive shortest path solver.
//!
//! Starting from the empty flow, the solver repeatedly finds a shortest
//! `s`-`t` path in the residual network and augments along it until the flow
//! value reaches `z` or no augmenting path is left. Shortest paths come from
//! Dijkstra's algorithm on reduced costs `c'(u, v) + π(u) - π(v)`; after each
//! search the potentials absorb the computed distances so reduced costs stay
//! nonnegative even though backward arcs carry negative costs.

mod cost_function;
mod dijkstra;

pub use cost_function::{cost_function, CostFunction};

use std::fmt::Write as _;

use thiserror::Error;

use crate::network::{ArcId, EdgeId, Flow, NetworkError, NodeId, TransformedNetwork};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("iteration cap of {cap} augmentations exceeded")]
    IterationCapExceeded { cap: usize },
    #[error("reduced cost of arc {arc} is {reduced_cost} before step {step}")]
    NegativeReducedCost { arc: ArcId, reduced_cost: f64, step: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SspOptions {
    /// Overrides the instance's `z`.
    pub target: Option<f64>,
    /// Keep every intermediate flow `f_0, f_1, ...` in the trace.
    pub retain_flows: bool,
    /// Record `d_i(v)` and `d'_i(v)` for every node at every step.
    pub record_distances: bool,
    pub iteration_cap: Option<usize>,
}

impl Default for SspOptions {
    fn default() -> Self {
        SspOptions { target: None, retain_flows: false, record_distances: true, iteration_cap: None }
    }
}

impl SspOptions {
    pub fn retaining_flows() -> Self {
        SspOptions { retain_flows: true, ..SspOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    ReachedZ,
    MaxFlowBelowZ,
}

/// One augmentation `f_{i-1} -> f_i`.
///
/// Distances are those of the residual network the path was chosen in,
/// `G_{f_{i-1}}`; unreachable nodes hold `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationStep {
    /// 1-based step number `i`.
    pub index: usize,
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<ArcId>,
    /// Sum of the residual arc costs along the path, `sp⁻(f_i)`.
    pub length: f64,
    pub amount: f64,
    pub saturated: Vec<ArcId>,
    pub value_after: f64,
    pub contains_good_arc: bool,
    pub distances_from_source: Vec<f64>,
    pub distances_to_sink: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationTrace {
    pub steps: Vec<AugmentationStep>,
    pub final_flow: Flow,
    pub outcome: Outcome,
    pub z: f64,
    /// `f_0, f_1, ...` when [`SspOptions::retain_flows`] was set.
    pub intermediate_flows: Option<Vec<Flow>>,
    /// Residual arcs scanned by all shortest-path searches.
    pub arc_scans: usize,
}

impl AugmentationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.length).collect()
    }

    /// `f_0 .. f_last`, either retained or rebuilt by replaying the
    /// augmentations.
    pub fn flows(&self, instance: &TransformedNetwork) -> Vec<Flow> {
        if let Some(flows) = &self.intermediate_flows {
            return flows.clone();
        }
        let mut values = vec![0.0; instance.edge_count()];
        let mut value = 0.0;
        let mut out = vec![Flow::zero(instance.edge_count())];
        for step in &self.steps {
            apply(instance, &mut values, &step.arcs, step.amount, &step.saturated);
            value = if step.value_after == self.z { self.z } else { value + step.amount };
            out.push(Flow::from_parts(values.clone(), value));
        }
        out
    }

    /// Columns `iter,length,amount,value_after,n_saturated,good_arc`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,length,amount,value_after,n_saturated,good_arc\n");
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.index,
                s.length,
                s.amount,
                s.value_after,
                s.saturated.len(),
                s.contains_good_arc as u8
            );
        }
        out
    }
}

/// A shortest `s`-`t` path in the current residual network.
#[derive(Debug, Clone)]
pub struct ShortestPath {
    pub nodes: Vec<NodeId>,
    pub arcs: Vec<ArcId>,
    pub length: f64,
    pub distances_from_source: Vec<f64>,
    pub distances_to_sink: Vec<f64>,
    reduced: Vec<f64>,
}

/// Stepwise SSP state over one instance.
#[derive(Debug, Clone)]
pub struct Solver<'a> {
    instance: &'a TransformedNetwork,
    options: SspOptions,
    z: f64,
    flow: Vec<f64>,
    value: f64,
    potential: Vec<f64>,
    outgoing: Vec<Vec<ArcId>>,
    incoming: Vec<Vec<ArcId>>,
    steps: usize,
    retained: Vec<Flow>,
    scans: usize,
    max_cost: f64,
}

impl<'a> Solver<'a> {
    pub fn new(instance: &'a TransformedNetwork, options: SspOptions) -> Solver<'a> {
        let n = instance.node_count();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (id, e) in instance.network().edges().iter().enumerate() {
            outgoing[e.tail].push(ArcId::forward(id));
            outgoing[e.head].push(ArcId::backward(id));
            incoming[e.head].push(ArcId::forward(id));
            incoming[e.tail].push(ArcId::backward(id));
        }
        for list in outgoing.iter_mut().chain(incoming.iter_mut()) {
            list.sort();
        }
        let z = options.target.unwrap_or(instance.z());
        let m = instance.edge_count();
        let retained = if options.retain_flows { vec![Flow::zero(m)] } else { Vec::new() };
        let max_cost = instance.network().edges().iter().map(|e| e.cost).fold(0.0, f64::max);
        Solver {
            instance,
            options,
            z,
            flow: vec![0.0; m],
            value: 0.0,
            potential: vec![0.0; n],
            outgoing,
            incoming,
            steps: 0,
            retained,
            scans: 0,
            max_cost,
        }
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn flow(&self) -> Flow {
        Flow::from_parts(self.flow.clone(), self.value)
    }

    pub fn potentials(&self) -> &[f64] {
        &self.potential
    }

    fn residual_capacity(&self, a: ArcId) -> f64 {
        if a.is_forward() {
            self.instance.edge(a.edge).capacity - self.flow[a.edge]
        } else {
            self.flow[a.edge]
        }
    }

    fn reduced_cost(&self, a: ArcId) -> f64 {
        let (u, v) = a.endpoints(self.instance);
        a.cost(self.instance) + self.potential[u] - self.potential[v]
    }

    fn check_reduced_costs(&self) -> Result<(), SolveError> {
        let scale = self.potential.iter().fold(self.max_cost, |m, p| m.max(p.abs()));
        let tol = 1e-9 * (1.0 + scale);
        for e in 0..self.instance.edge_count() {
            for a in [ArcId::forward(e), ArcId::backward(e)] {
                if self.residual_capacity(a) > 0.0 {
                    let rc = self.reduced_cost(a);
                    if rc < -tol {
                        return Err(SolveError::NegativeReducedCost {
                            arc: a,
                            reduced_cost: rc,
                            step: self.steps + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Shortest `s`-`t` path in the current residual network, or `None` if
    /// the sink is unreachable.
    pub fn shortest_path(&mut self) -> Result<Option<ShortestPath>, SolveError> {
        self.check_reduced_costs()?;
        let n = self.instance.node_count();
        let (s, t) = (self.instance.source(), self.instance.sink());
        let forward = dijkstra::shortest_paths(n, s, |u| {
            self.outgoing[u]
                .iter()
                .filter(|&&a| self.residual_capacity(a) > 0.0)
                .map(|&a| (a, a.endpoints(self.instance).1, self.reduced_cost(a).max(0.0)))
                .collect::<Vec<_>>()
                .into_iter()
        });
        self.scans += forward.scans;
        if forward.dist[t].is_infinite() {
            return Ok(None);
        }
        let arcs = forward.arcs_to(t);
        let mut nodes = vec![s];
        nodes.extend(arcs.iter().map(|a| a.endpoints(self.instance).1));
        let length = arcs.iter().fold(0.0, |acc, a| acc + a.cost(self.instance));
        let from_source: Vec<f64> = forward
            .dist
            .iter()
            .zip(&self.potential)
            .map(|(d, p)| if d.is_finite() { d + p } else { f64::INFINITY })
            .collect();

        let to_sink = if self.options.record_distances {
            let backward = dijkstra::shortest_paths(n, t, |v| {
                self.incoming[v]
                    .iter()
                    .filter(|&&a| self.residual_capacity(a) > 0.0)
                    .map(|&a| (a, a.endpoints(self.instance).0, self.reduced_cost(a).max(0.0)))
                    .collect::<Vec<_>>()
                    .into_iter()
            });
            self.scans += backward.scans;
            let pt = self.potential[t];
            backward
                .dist
                .iter()
                .zip(&self.potential)
                .map(|(d, p)| if d.is_finite() { d - p + pt } else { f64::INFINITY })
                .collect()
        } else {
            Vec::new()
        };

        Ok(Some(ShortestPath {
            nodes,
            arcs,
            length,
            distances_from_source: if self.options.record_distances { from_source } else { Vec::new() },
            distances_to_sink: to_sink,
            reduced: forward.dist,
        }))
    }

    /// Augment along `path` as far as capacities and `z` allow.
    pub fn augment(&mut self, path: ShortestPath) -> AugmentationStep {
        let bottleneck = path
            .arcs
            .iter()
            .map(|&a| self.residual_capacity(a))
            .fold(f64::INFINITY, f64::min);
        let gap = self.z - self.value;
        let amount = bottleneck.min(gap);
        let contains_good_arc = path.arcs.iter().any(|&a| {
            self.residual_capacity(a.reverse()) <= 0.0 && !self.instance.edge(a.edge).is_auxiliary()
        });
        let saturated: Vec<ArcId> =
            path.arcs.iter().copied().filter(|&a| self.residual_capacity(a) == amount).collect();
        apply(self.instance, &mut self.flow, &path.arcs, amount, &saturated);
        self.value = if amount == gap { self.z } else { self.value + amount };

        let max_reached = path.reduced.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max);
        for (p, d) in self.potential.iter_mut().zip(&path.reduced) {
            *p += if d.is_finite() { *d } else { max_reached };
        }

        self.steps += 1;
        if self.options.retain_flows {
            self.retained.push(self.flow());
        }
        AugmentationStep {
            index: self.steps,
            nodes: path.nodes,
            arcs: path.arcs,
            length: path.length,
            amount,
            saturated,
            value_after: self.value,
            contains_good_arc,
            distances_from_source: path.distances_from_source,
            distances_to_sink: path.distances_to_sink,
        }
    }

    pub fn is_done(&self) -> bool {
        self.value >= self.z
    }

    /// Runs to completion.
    pub fn run(mut self) -> Result<AugmentationTrace, SolveError> {
        let mut steps = Vec::new();
        let outcome = loop {
            if self.is_done() {
                break Outcome::ReachedZ;
            }
            if let Some(cap) = self.options.iteration_cap {
                if self.steps >= cap {
                    return Err(SolveError::IterationCapExceeded { cap });
                }
            }
            match self.shortest_path()? {
                None => break Outcome::MaxFlowBelowZ,
                Some(path) => steps.push(self.augment(path)),
            }
        };
        Ok(AugmentationTrace {
            steps,
            final_flow: self.flow(),
            outcome,
            z: self.z,
            intermediate_flows: self.options.retain_flows.then_some(self.retained),
            arc_scans: self.scans,
        })
    }
}

/// Pushes `amount` along `arcs`; arcs listed in `saturated` are snapped to
/// exactly full or exactly empty.
pub(crate) fn apply(
    instance: &TransformedNetwork,
    flow: &mut [f64],
    arcs: &[ArcId],
    amount: f64,
    saturated: &[ArcId],
) {
    for &a in arcs {
        let e: EdgeId = a.edge;
        let snapped = saturated.contains(&a);
        flow[e] = match (a.is_forward(), snapped) {
            (true, true) => instance.edge(e).capacity,
            (true, false) => flow[e] + amount,
            (false, true) => 0.0,
            (false, false) => flow[e] - amount,
        };
    }
}

/// Runs SSP on `instance` until `|f| = z` or no augmenting path remains.
pub fn solve(instance: &TransformedNetwork, options: &SspOptions) -> Result<AugmentationTrace, SolveError> {
    Solver::new(instance, options.clone()).run()
}

/// Value of a maximum `s`-`t` flow.
pub fn max_flow_value(instance: &TransformedNetwork) -> Result<f64, SolveError> {
    let options = SspOptions {
        target: Some(instance.source_capacity()),
        record_distances: false,
        ..SspOptions::default()
    };
    Ok(solve(instance, &options)?.final_flow.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;

    fn terminals(net: FlowNetwork, s: NodeId, t: NodeId) -> TransformedNetwork {
        TransformedNetwork::with_terminals(net, s, t).unwrap()
    }

    fn single_edge() -> TransformedNetwork {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 5.0, 0.5);
        b.balance(0, 5.0).balance(1, -5.0);
        terminals(b.build().unwrap(), 0, 1)
    }

    fn two_paths() -> TransformedNetwork {
        let mut b = FlowNetwork::builder(4);
        b.edge(0, 1, 1.0, 0.1);
        b.edge(1, 3, 1.0, 0.2);
        b.edge(0, 2, 1.0, 0.3);
        b.edge(2, 3, 1.0, 0.4);
        b.balance(0, 2.0).balance(3, -2.0);
        terminals(b.build().unwrap(), 0, 3)
    }

    #[test]
    fn single_edge_one_step() {
        let trace = solve(&single_edge(), &SspOptions::default()).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.steps[0].length, 0.5);
        assert_eq!(trace.steps[0].amount, 5.0);
        assert_eq!(trace.outcome, Outcome::ReachedZ);
        assert_eq!(trace.final_flow.value(), 5.0);
        assert_eq!(trace.steps[0].saturated, vec![ArcId::forward(0)]);
    }

    #[test]
    fn disjoint_paths_in_length_order() {
        let trace = solve(&two_paths(), &SspOptions::default()).unwrap();
        let lengths = trace.lengths();
        assert_eq!(lengths.len(), 2);
        assert!((lengths[0] - 0.3).abs() < 1e-15);
        assert!((lengths[1] - 0.7).abs() < 1e-15);
        assert_eq!(trace.steps[0].nodes, vec![0, 1, 3]);
        assert_eq!(trace.steps[1].nodes, vec![0, 2, 3]);
    }

    #[test]
    fn zero_demand_gives_empty_trace() {
        let inst = single_edge().with_z(0.0);
        let trace = solve(&inst, &SspOptions::default()).unwrap();
        assert!(trace.is_empty());
        assert_eq!(trace.outcome, Outcome::ReachedZ);
    }

    #[test]
    fn demand_above_max_flow() {
        let inst = single_edge().with_z(7.0);
        let trace = solve(&inst, &SspOptions::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::MaxFlowBelowZ);
        assert_eq!(trace.final_flow.value(), 5.0);
    }

    #[test]
    fn partial_last_step_stops_at_z() {
        let inst = single_edge().with_z(2.5);
        let trace = solve(&inst, &SspOptions::default()).unwrap();
        assert_eq!(trace.steps[0].amount, 2.5);
        assert!(trace.steps[0].saturated.is_empty());
        assert_eq!(trace.final_flow.value(), 2.5);
    }

    #[test]
    fn iteration_cap() {
        let opts = SspOptions { iteration_cap: Some(1), ..SspOptions::default() };
        assert_eq!(
            solve(&two_paths(), &opts).unwrap_err(),
            SolveError::IterationCapExceeded { cap: 1 }
        );
    }

    #[test]
    fn max_flow_values() {
        assert_eq!(max_flow_value(&single_edge()).unwrap(), 5.0);
        assert_eq!(max_flow_value(&two_paths()).unwrap(), 2.0);
    }

    #[test]
    fn uses_backward_arcs() {
        // Classic crossing instance: the second path must cancel flow on 1->2.
        let mut b = FlowNetwork::builder(4);
        b.edge(0, 1, 1.0, 0.1);
        b.edge(1, 2, 1.0, 0.1);
        b.edge(2, 3, 1.0, 0.1);
        b.edge(0, 2, 1.0, 0.5);
        b.edge(1, 3, 1.0, 0.5);
        b.balance(0, 2.0).balance(3, -2.0);
        let inst = terminals(b.build().unwrap(), 0, 3);
        let trace = solve(&inst, &SspOptions::retaining_flows()).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.steps[1].nodes, vec![0, 2, 1, 3]);
        assert!(trace.steps[1].arcs.contains(&ArcId::backward(1)));
        assert_eq!(trace.final_flow.values(), &[1.0, 0.0, 1.0, 1.0, 1.0]);
        assert_eq!(trace.flows(&inst), trace.intermediate_flows.clone().unwrap());
    }

    #[test]
    fn replayed_flows_match_retained() {
        let inst = two_paths();
        let kept = solve(&inst, &SspOptions::retaining_flows()).unwrap();
        let bare = solve(&inst, &SspOptions::default()).unwrap();
        assert_eq!(bare.flows(&inst), kept.intermediate_flows.unwrap());
    }

    #[test]
    fn trace_csv_columns() {
        let trace = solve(&single_edge(), &SspOptions::default()).unwrap();
        assert_eq!(
            trace.to_csv(),
            "iter,length,amount,value_after,n_saturated,good_arc\n1,0.5,5,5,1,1\n"
        );
    }
}
