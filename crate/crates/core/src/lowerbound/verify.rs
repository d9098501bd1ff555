use super::{LowerBoundError, LowerBoundNetwork, LowerBoundParams};
use crate::solver::{solve, AugmentationTrace, SspOptions};

const SLACK: f64 = 1e-9;

fn within(x: f64, lo: f64, hi: f64) -> bool {
    lo - SLACK * (1.0 + lo.abs()) <= x && x <= hi + SLACK * (1.0 + hi.abs())
}

fn mismatch(step: usize, message: String) -> LowerBoundError {
    LowerBoundError::PredictionMismatch { step, message }
}

fn run(g: &LowerBoundNetwork) -> Result<AugmentationTrace, LowerBoundError> {
    let options = SspOptions { record_distances: false, ..SspOptions::default() };
    let trace = solve(&g.instance, &options)?;
    if let Some(w) = trace.steps.windows(2).find(|w| !(w[0].length < w[1].length)) {
        log::warn!("lower-bound seed rejected: path lengths {} and {} at step {}", w[0].length, w[1].length, w[1].index);
        return Err(LowerBoundError::Tie { step: w[1].index });
    }
    Ok(trace)
}

/// Outcome of running SSP on a standalone `G_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StageReport {
    pub level: usize,
    pub steps: usize,
    pub predicted: usize,
    pub lengths: Vec<f64>,
}

/// Runs SSP on `G_i` and checks the exact count `m · 2^{i-1}`, that every
/// path costs between 7 and `2^{i+3} - 5`, and the path shapes: on `G_1`
/// every path is `s₁ → u → w → t₁`; on larger stages no path skips the
/// inner network, and at the end only the four outermost edges carry flow.
pub fn verify_stage(g: &LowerBoundNetwork) -> Result<StageReport, LowerBoundError> {
    if g.chains.is_some() {
        return Err(LowerBoundError::BadParams("verify_stage expects a G_i network".into()));
    }
    let trace = run(g)?;
    let level = g.level;
    let hi = 2f64.powi(level as i32 + 3) - 5.0;
    for step in &trace.steps {
        if !within(step.length, 7.0, hi) {
            return Err(mismatch(step.index, format!("path cost {} outside [7, {hi}]", step.length)));
        }
        if level == 1 {
            let shaped = step.nodes.len() == 4
                && (g.u(0)..=g.u(g.n - 1)).contains(&step.nodes[1])
                && (g.w(0)..=g.w(g.n - 1)).contains(&step.nodes[2]);
            if !shaped {
                return Err(mismatch(step.index, format!("path {:?} is not s1 -> u -> w -> t1", step.nodes)));
            }
        } else if step.arcs.len() == 2 {
            return Err(mismatch(step.index, "path bypasses the inner network".into()));
        }
    }
    let predicted = g.m << (level - 1);
    if trace.len() != predicted {
        return Err(mismatch(trace.len().min(predicted) + 1, format!("{} steps, predicted {predicted}", trace.len())));
    }
    if level > 1 {
        let inner = g.stage_edge_count() - 4;
        if let Some(e) = (0..inner).find(|&e| trace.final_flow.get(e) != 0.0) {
            return Err(mismatch(trace.len(), format!("inner edge {e} still carries flow")));
        }
    }
    Ok(StageReport { level, steps: trace.len(), predicted, lengths: trace.lengths() })
}

/// Outcome of running SSP on the full network.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub params: LowerBoundParams,
    pub steps: usize,
    pub predicted: usize,
    pub lengths: Vec<f64>,
}

/// Builds `G` for `params`, runs SSP, and checks the exact step count and the
/// phase structure: blocks of `m · 2^{k-1}` paths alternate between
/// `{a_i, d_i}` paths and `{b_i, c_i}` paths for `i = 1, …, M`, with costs in
/// the windows given by `α_i` and `β_i`.
pub fn verify_count(params: &LowerBoundParams, seed: u64) -> Result<CountReport, LowerBoundError> {
    let g = super::build_full(params, seed)?;
    let chains = g.chains.as_ref().expect("full network has chains");
    let trace = run(&g)?;
    let block = params.stage_steps();
    let inner = 2f64.powi(params.k as i32 + 3);
    for (idx, step) in trace.steps.iter().enumerate() {
        let phase = idx / block;
        let i = phase / 2 + 1;
        if i > params.big_m {
            break;
        }
        let (ii, len) = (i as f64, step.length);
        let (first, last, lo, hi, name) = if phase.is_multiple_of(2) {
            let a2 = 2.0 * params.alpha(i);
            (chains.a[i - 1], chains.d[i - 1], a2 + 7.0, a2 + 2.0 * (ii + 1.0) + inner - 5.0, "a,d")
        } else {
            let b2 = 2.0 * params.beta(i);
            (chains.b[i - 1], chains.c[i - 1], b2 - inner + 5.0, b2 + 2.0 * (ii + 1.0) - 7.0, "b,c")
        };
        let nodes = &step.nodes;
        if nodes.len() < 3 || nodes[1] != first || nodes[nodes.len() - 2] != last {
            return Err(mismatch(step.index, format!("expected a {{{name}}}_{i} path")));
        }
        if !within(len, lo, hi) {
            return Err(mismatch(step.index, format!("{{{name}}}_{i} path cost {len} outside [{lo}, {hi}]")));
        }
    }
    let predicted = params.predicted_steps();
    if trace.len() != predicted {
        return Err(mismatch(trace.len().min(predicted) + 1, format!("{} steps, predicted {predicted}", trace.len())));
    }
    Ok(CountReport { params: *params, steps: trace.len(), predicted, lengths: trace.lengths() })
}
