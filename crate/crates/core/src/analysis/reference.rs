use super::bellman_ford::{forward_arcs, reverse_arcs, shortest_paths};
use crate::network::{residual, Flow, TransformedNetwork};
use crate::solver::{apply, AugmentationStep, AugmentationTrace, Outcome, SolveError, SspOptions};

/// Independent SSP: rebuilds the residual network every iteration and finds
/// shortest paths with Bellman-Ford on raw residual costs.
///
/// Follows the same contract as [`crate::solver::solve`] and is meant as an
/// oracle on small instances.
pub fn reference_solve(
    instance: &TransformedNetwork,
    options: &SspOptions,
) -> Result<AugmentationTrace, SolveError> {
    let z = options.target.unwrap_or(instance.z());
    let (s, t) = (instance.source(), instance.sink());
    let n = instance.node_count();
    let mut values = vec![0.0; instance.edge_count()];
    let mut value = 0.0;
    let mut steps = Vec::new();
    let mut retained = vec![Flow::zero(instance.edge_count())];

    let outcome = loop {
        if value >= z {
            break Outcome::ReachedZ;
        }
        if let Some(cap) = options.iteration_cap {
            if steps.len() >= cap {
                return Err(SolveError::IterationCapExceeded { cap });
            }
        }
        let flow = Flow::from_parts(values.clone(), value);
        let view = residual(instance, &flow)?;
        let from_s = shortest_paths(n, s, &forward_arcs(&view));
        if from_s.dist[t].is_infinite() {
            break Outcome::MaxFlowBelowZ;
        }
        let arcs = from_s.arcs_to(t);
        let mut nodes = vec![s];
        nodes.extend(arcs.iter().map(|a| a.endpoints(instance).1));
        let length = arcs.iter().fold(0.0, |acc, a| acc + a.cost(instance));
        let capacity = |a: &crate::network::ArcId| view.arc(*a).map_or(0.0, |r| r.capacity);
        let bottleneck = arcs.iter().map(capacity).fold(f64::INFINITY, f64::min);
        let gap = z - value;
        let amount = bottleneck.min(gap);
        let contains_good_arc = arcs.iter().any(|a| view.arc(*a).is_some_and(|r| r.good));
        let saturated: Vec<_> = arcs.iter().copied().filter(|a| capacity(a) == amount).collect();
        let (distances_from_source, distances_to_sink) = if options.record_distances {
            (from_s.dist.clone(), shortest_paths(n, t, &reverse_arcs(&view)).dist)
        } else {
            (Vec::new(), Vec::new())
        };

        apply(instance, &mut values, &arcs, amount, &saturated);
        value = if amount == gap { z } else { value + amount };
        if options.retain_flows {
            retained.push(Flow::from_parts(values.clone(), value));
        }
        steps.push(AugmentationStep {
            index: steps.len() + 1,
            nodes,
            arcs,
            length,
            amount,
            saturated,
            value_after: value,
            contains_good_arc,
            distances_from_source,
            distances_to_sink,
        });
    };

    Ok(AugmentationTrace {
        steps,
        final_flow: Flow::from_parts(values, value),
        outcome,
        z,
        intermediate_flows: options.retain_flows.then_some(retained),
        arc_scans: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;
    use crate::solver::solve;

    #[test]
    fn single_edge_matches_solver() {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 5.0, 0.5);
        b.balance(0, 5.0).balance(1, -5.0);
        let inst = TransformedNetwork::with_terminals(b.build().unwrap(), 0, 1).unwrap();
        let opts = SspOptions::default();
        let r = reference_solve(&inst, &opts).unwrap();
        let p = solve(&inst, &opts).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.steps[0].arcs, p.steps[0].arcs);
        assert_eq!(r.steps[0].length, 0.5);
        assert_eq!(r.steps[0].amount, 5.0);
        assert_eq!(r.steps[0].distances_from_source, p.steps[0].distances_from_source);
        assert_eq!(r.steps[0].distances_to_sink, p.steps[0].distances_to_sink);
    }

    #[test]
    fn crossing_instance_matches_solver() {
        let mut b = FlowNetwork::builder(4);
        b.edge(0, 1, 1.0, 0.1);
        b.edge(1, 2, 1.0, 0.1);
        b.edge(2, 3, 1.0, 0.1);
        b.edge(0, 2, 1.0, 0.5);
        b.edge(1, 3, 1.0, 0.5);
        b.balance(0, 2.0).balance(3, -2.0);
        let inst = TransformedNetwork::with_terminals(b.build().unwrap(), 0, 3).unwrap();
        let opts = SspOptions::retaining_flows();
        let r = reference_solve(&inst, &opts).unwrap();
        let p = solve(&inst, &opts).unwrap();
        assert_eq!(r.steps.len(), p.steps.len());
        for (a, b) in r.steps.iter().zip(&p.steps) {
            assert_eq!(a.arcs, b.arcs);
            assert!((a.length - b.length).abs() < 1e-12);
            assert_eq!(a.contains_good_arc, b.contains_good_arc);
        }
        assert_eq!(r.final_flow, p.final_flow);
        assert_eq!(r.intermediate_flows, p.intermediate_flows);
    }
}
