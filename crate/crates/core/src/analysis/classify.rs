use crate::network::{residual, ArcId, Flow, NetworkError, TransformedNetwork};
use crate::solver::AugmentationTrace;

#[derive(Debug, Clone, PartialEq)]
pub struct StepClass {
    pub index: usize,
    /// The step's path contains an empty arc of an original edge.
    pub is_good: bool,
    pub good_arcs: Vec<ArcId>,
    pub empty_arcs: Vec<ArcId>,
}

/// Good/bad label of every flow `f_i`, judged by the path that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowClassification {
    pub steps: Vec<StepClass>,
}

impl FlowClassification {
    pub fn bad_count(&self) -> usize {
        self.steps.iter().filter(|s| !s.is_good).count()
    }

    pub fn good_count(&self) -> usize {
        self.steps.len() - self.bad_count()
    }
}

/// Labels each step by inspecting the residual network it was chosen in.
pub fn classify(
    instance: &TransformedNetwork,
    trace: &AugmentationTrace,
) -> Result<FlowClassification, NetworkError> {
    classify_flows(instance, trace, &trace.flows(instance))
}

pub(crate) fn classify_flows(
    instance: &TransformedNetwork,
    trace: &AugmentationTrace,
    flows: &[Flow],
) -> Result<FlowClassification, NetworkError> {
    let mut steps = Vec::with_capacity(trace.len());
    for (step, before) in trace.steps.iter().zip(flows) {
        let view = residual(instance, before)?;
        let mut good_arcs = Vec::new();
        let mut empty_arcs = Vec::new();
        for &a in &step.arcs {
            let arc = view
                .arc(a)
                .ok_or_else(|| NetworkError::InfeasibleFlow(format!("step {} uses missing arc {a}", step.index)))?;
            if arc.empty {
                empty_arcs.push(a);
            }
            if arc.good {
                good_arcs.push(a);
            }
        }
        steps.push(StepClass { index: step.index, is_good: !good_arcs.is_empty(), good_arcs, empty_arcs });
    }
    Ok(FlowClassification { steps })
}
