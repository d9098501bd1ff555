use std::fmt::{self, Write as _};

use super::bellman_ford::{forward_arcs, has_negative_cycle, shortest_paths};
use super::classify::classify_flows;
use crate::network::{residual, NetworkError, TransformedNetwork};
use crate::solver::{cost_function, AugmentationTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LemmaId {
    /// `d_i(v) ≤ d_{i+1}(v)` and `d'_i(v) ≤ d'_{i+1}(v)`.
    DistanceMonotonicity,
    /// `ℓ_i < ℓ_{i+1}`.
    StrictLengthIncrease,
    /// Convex cost function whose values match the flow costs.
    CostFunctionShape,
    /// Every augmenting path has an empty arc.
    EmptyArcOnPath,
    /// At most `n` bad flows.
    BadFlowCount,
    /// Every `f_i` has no negative residual cycle.
    NoNegativeCycle,
    /// After augmenting along `P`, its reverse is a shortest `t`-`s` path.
    ReversePathOptimal,
    /// No path uses the backward arc of an auxiliary edge.
    AuxBackwardUnused,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::DistanceMonotonicity,
        LemmaId::StrictLengthIncrease,
        LemmaId::CostFunctionShape,
        LemmaId::EmptyArcOnPath,
        LemmaId::BadFlowCount,
        LemmaId::NoNegativeCycle,
        LemmaId::ReversePathOptimal,
        LemmaId::AuxBackwardUnused,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::DistanceMonotonicity => "distance-monotonicity",
            LemmaId::StrictLengthIncrease => "strict-length-increase",
            LemmaId::CostFunctionShape => "cost-function-shape",
            LemmaId::EmptyArcOnPath => "empty-arc-on-path",
            LemmaId::BadFlowCount => "bad-flow-count",
            LemmaId::NoNegativeCycle => "no-negative-cycle",
            LemmaId::ReversePathOptimal => "reverse-path-optimal",
            LemmaId::AuxBackwardUnused => "aux-backward-unused",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// First violating step; 0 refers to the empty flow.
    Fail { step: usize },
    /// Not applicable, e.g. no distances recorded or instance too large.
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub results: Vec<(LemmaId, Verdict)>,
}

impl LemmaReport {
    pub fn verdict(&self, id: LemmaId) -> Verdict {
        self.results.iter().find(|r| r.0 == id).map_or(Verdict::Skipped, |r| r.1)
    }

    /// No lemma failed; skipped ones count as passing.
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| !matches!(r.1, Verdict::Fail { .. }))
    }

    pub fn failures(&self) -> Vec<(LemmaId, usize)> {
        self.results
            .iter()
            .filter_map(|&(id, v)| match v {
                Verdict::Fail { step } => Some((id, step)),
                _ => None,
            })
            .collect()
    }

    /// Columns `lemma_id,pass,first_violation_step`; `pass` is 1, 0 or `skip`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lemma_id,pass,first_violation_step\n");
        for (id, v) in &self.results {
            let _ = match v {
                Verdict::Pass => writeln!(out, "{id},1,"),
                Verdict::Fail { step } => writeln!(out, "{id},0,{step}"),
                Verdict::Skipped => writeln!(out, "{id},skip,"),
            };
        }
        out
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, v) in &self.results {
            match v {
                Verdict::Pass => writeln!(f, "{id}: PASS")?,
                Verdict::Fail { step } => writeln!(f, "{id}: FAIL at step {step}")?,
                Verdict::Skipped => writeln!(f, "{id}: SKIPPED")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaOptions {
    /// Relative slack for floating-point comparisons of sums.
    pub tolerance: f64,
    /// The reverse-path check runs Bellman-Ford per step, so it is skipped
    /// above this many nodes (including `s` and `t`).
    pub reverse_path_node_limit: usize,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions { tolerance: 1e-9, reverse_path_node_limit: 14 }
    }
}

fn first_failure(mut failing: impl Iterator<Item = usize>) -> Verdict {
    failing.next().map_or(Verdict::Pass, |step| Verdict::Fail { step })
}

pub fn check_lemmas(
    instance: &TransformedNetwork,
    trace: &AugmentationTrace,
) -> Result<LemmaReport, NetworkError> {
    check_lemmas_with(instance, trace, &LemmaOptions::default())
}

pub fn check_lemmas_with(
    instance: &TransformedNetwork,
    trace: &AugmentationTrace,
    options: &LemmaOptions,
) -> Result<LemmaReport, NetworkError> {
    let tol = options.tolerance;
    let close = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
    let flows = trace.flows(instance);
    let steps = &trace.steps;
    let mut results = Vec::with_capacity(LemmaId::ALL.len());

    let recorded = steps.iter().all(|s| !s.distances_from_source.is_empty() && !s.distances_to_sink.is_empty());
    let monotone = if recorded && !steps.is_empty() {
        let le = |a: f64, b: f64| a <= b || (a.is_finite() && b.is_finite() && a - b <= tol * (1.0 + a.abs()));
        first_failure(steps.windows(2).filter_map(|w| {
            let from = w[0].distances_from_source.iter().zip(&w[1].distances_from_source);
            let to = w[0].distances_to_sink.iter().zip(&w[1].distances_to_sink);
            let ok = from.chain(to).all(|(&a, &b)| le(a, b));
            (!ok).then_some(w[1].index)
        }))
    } else {
        Verdict::Skipped
    };
    results.push((LemmaId::DistanceMonotonicity, monotone));

    results.push((
        LemmaId::StrictLengthIncrease,
        first_failure(steps.windows(2).filter(|w| !(w[0].length < w[1].length)).map(|w| w[1].index)),
    ));

    let shape = if steps.is_empty() {
        Verdict::Pass
    } else {
        let cf = cost_function(trace);
        let mut cumulative = 0.0;
        first_failure(steps.iter().enumerate().filter_map(|(i, s)| {
            cumulative += s.length * s.amount;
            let slope_drop = i > 0 && s.length < steps[i - 1].length;
            let on_curve = cf.eval(s.value_after).is_some_and(|y| close(y, cumulative));
            let cost_matches = close(flows[i + 1].cost(instance), cumulative);
            (slope_drop || !on_curve || !cost_matches).then_some(s.index)
        }))
    };
    results.push((LemmaId::CostFunctionShape, shape));

    let classes = classify_flows(instance, trace, &flows)?;
    results.push((
        LemmaId::EmptyArcOnPath,
        first_failure(classes.steps.iter().filter(|c| c.empty_arcs.is_empty()).map(|c| c.index)),
    ));

    let n = instance.base_node_count();
    let mut bad = 0;
    results.push((
        LemmaId::BadFlowCount,
        first_failure(classes.steps.iter().filter_map(|c| {
            bad += usize::from(!c.is_good);
            (bad > n).then_some(c.index)
        })),
    ));

    let scale = instance.network().cost_scale().upper();
    let mut negative = None;
    for (i, f) in flows.iter().enumerate() {
        if has_negative_cycle(&residual(instance, f)?, tol * (1.0 + scale)) {
            negative = Some(i);
            break;
        }
    }
    results.push((LemmaId::NoNegativeCycle, first_failure(negative.into_iter())));

    let reverse = if instance.node_count() > options.reverse_path_node_limit {
        Verdict::Skipped
    } else {
        let (s, t) = (instance.source(), instance.sink());
        let mut failing = None;
        for (step, after) in steps.iter().zip(&flows[1..]) {
            let view = residual(instance, after)?;
            let back = shortest_paths(view.node_count(), t, &forward_arcs(&view));
            if !close(back.dist[s], -step.length) {
                failing = Some(step.index);
                break;
            }
        }
        first_failure(failing.into_iter())
    };
    results.push((LemmaId::ReversePathOptimal, reverse));

    results.push((
        LemmaId::AuxBackwardUnused,
        first_failure(
            steps
                .iter()
                .filter(|s| s.arcs.iter().any(|a| !a.is_forward() && instance.edge(a.edge).is_auxiliary()))
                .map(|s| s.index),
        ),
    ));

    Ok(LemmaReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;
    use crate::solver::{solve, SspOptions};

    fn crossing() -> TransformedNetwork {
        let mut b = FlowNetwork::builder(4);
        b.edge(0, 1, 1.0, 0.1);
        b.edge(1, 2, 1.0, 0.15);
        b.edge(2, 3, 1.0, 0.1);
        b.edge(0, 2, 1.0, 0.5);
        b.edge(1, 3, 1.0, 0.45);
        b.balance(0, 2.0).balance(3, -2.0);
        TransformedNetwork::with_terminals(b.build().unwrap(), 0, 3).unwrap()
    }

    #[test]
    fn solver_trace_passes_everything() {
        let inst = crossing();
        let trace = solve(&inst, &SspOptions::default()).unwrap();
        let report = check_lemmas(&inst, &trace).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.verdict(LemmaId::ReversePathOptimal), Verdict::Pass);
        assert_eq!(report.verdict(LemmaId::DistanceMonotonicity), Verdict::Pass);
    }

    #[test]
    fn injected_decreasing_length_is_caught() {
        let inst = crossing();
        let mut trace = solve(&inst, &SspOptions::default()).unwrap();
        trace.steps[1].length = trace.steps[0].length - 0.01;
        let report = check_lemmas(&inst, &trace).unwrap();
        assert_eq!(report.verdict(LemmaId::StrictLengthIncrease), Verdict::Fail { step: 2 });
        assert_eq!(report.verdict(LemmaId::CostFunctionShape), Verdict::Fail { step: 2 });
    }

    #[test]
    fn missing_distances_skip_monotonicity() {
        let inst = crossing();
        let opts = SspOptions { record_distances: false, ..SspOptions::default() };
        let trace = solve(&inst, &opts).unwrap();
        let report = check_lemmas(&inst, &trace).unwrap();
        assert_eq!(report.verdict(LemmaId::DistanceMonotonicity), Verdict::Skipped);
        assert!(report.to_csv().contains("distance-monotonicity,skip,\n"));
    }

    #[test]
    fn csv_and_text_forms() {
        let inst = crossing();
        let trace = solve(&inst, &SspOptions::default()).unwrap();
        let report = check_lemmas(&inst, &trace).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("lemma_id,pass,first_violation_step\n"));
        assert_eq!(csv.lines().count(), 9);
        assert!(report.to_string().contains("bad-flow-count: PASS"));
    }
}
