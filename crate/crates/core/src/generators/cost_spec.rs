use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rand::Rng;

use super::{edge_rng, uniform_cost, GeneratorError, Purpose, Topology};
use crate::network::{CostScale, EdgeId, FlowNetwork};

/// How φ enters the cost model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Costs in `[0, 1]`, densities at most φ: intervals have width ≥ 1/φ.
    Unit,
    /// Costs in `[0, φ]`, densities at most 1: intervals have width ≥ 1.
    Phi,
}

/// Per-edge uniform cost intervals with density bounded by φ.
///
/// Edges without an explicit interval use the default interval, or the whole
/// cost range if there is none.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedCostSpec {
    pub phi: f64,
    pub convention: Convention,
    pub default_interval: Option<(f64, f64)>,
    pub intervals: BTreeMap<EdgeId, (f64, f64)>,
}

impl SmoothedCostSpec {
    pub fn new(phi: f64, convention: Convention) -> SmoothedCostSpec {
        SmoothedCostSpec { phi, convention, default_interval: None, intervals: BTreeMap::new() }
    }

    /// Largest admissible cost.
    pub fn upper(&self) -> f64 {
        match self.convention {
            Convention::Unit => 1.0,
            Convention::Phi => self.phi,
        }
    }

    /// Narrowest admissible interval.
    pub fn min_width(&self) -> f64 {
        match self.convention {
            Convention::Unit => 1.0 / self.phi,
            Convention::Phi => 1.0,
        }
    }

    pub fn interval(&self, edge: EdgeId) -> (f64, f64) {
        self.intervals.get(&edge).copied().or(self.default_interval).unwrap_or((0.0, self.upper()))
    }

    pub fn scale(&self) -> CostScale {
        match self.convention {
            Convention::Unit => CostScale::Unit,
            Convention::Phi => CostScale::Phi(self.phi),
        }
    }

    /// Intervals of minimal width at a seeded random offset per edge.
    pub fn random_placement(phi: f64, convention: Convention, edge_count: usize, seed: u64) -> SmoothedCostSpec {
        let mut spec = SmoothedCostSpec::new(phi, convention);
        let (w, upper) = (spec.min_width(), spec.upper());
        for e in 0..edge_count {
            let lo = edge_rng(seed, Purpose::Placement, e).gen_range(0.0..=upper - w);
            spec.intervals.insert(e, (lo, (lo + w).min(upper)));
        }
        spec
    }

    /// Heuristic adversarial preset: minimal-width intervals pushed to the
    /// cheap end for edges leaving even BFS layers (counted from the supply
    /// nodes) and to the expensive end for odd layers. This makes long paths
    /// alternate between attractive and unattractive edges; it is not
    /// claimed to maximise the number of augmentations.
    pub fn worst_ish(topology: &Topology, phi: f64, convention: Convention) -> SmoothedCostSpec {
        let mut spec = SmoothedCostSpec::new(phi, convention);
        let (w, upper) = (spec.min_width(), spec.upper());
        let layer = bfs_layers(topology);
        for (e, edge) in topology.edges.iter().enumerate() {
            let interval = if layer[edge.tail].is_some_and(|l| l % 2 == 1) { (upper - w, upper) } else { (0.0, w) };
            spec.intervals.insert(e, interval);
        }
        spec
    }

    pub fn validate(&self, edge_count: usize) -> Result<(), GeneratorError> {
        if !(self.phi >= 1.0) {
            return Err(GeneratorError::BadSpec { line: 0, message: format!("phi {} below 1", self.phi) });
        }
        let (upper, width) = (self.upper(), self.min_width());
        for e in 0..edge_count {
            let (lo, hi) = self.interval(e);
            let reason = if !(0.0 <= lo && lo <= hi && hi <= upper) {
                format!("must lie within [0, {upper}]")
            } else if hi - lo < width * (1.0 - 1e-12) {
                format!("narrower than {width}")
            } else {
                continue;
            };
            return Err(GeneratorError::InvalidInterval { edge: e, lo, hi, reason });
        }
        Ok(())
    }

    /// Reads the line format `phi <v>`, `convention unit|phi`,
    /// `interval <edge> <lo> <hi>`, `default-interval <lo> <hi>`. Blank lines
    /// and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<SmoothedCostSpec, GeneratorError> {
        let mut spec = SmoothedCostSpec::new(1.0, Convention::Unit);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let bad = |message: String| GeneratorError::BadSpec { line, message };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let num = |k: usize| -> Result<f64, GeneratorError> {
                let t = toks.get(k).ok_or_else(|| bad("missing value".into()))?;
                t.parse().map_err(|_| bad(format!("bad number '{t}'")))
            };
            let arity = |k: usize| -> Result<(), GeneratorError> {
                if toks.len() == k {
                    Ok(())
                } else {
                    Err(bad(format!("expected {} values after '{}'", k - 1, toks[0])))
                }
            };
            match toks.first().copied() {
                None => {}
                Some(t) if t.starts_with('#') => {}
                Some("phi") => {
                    arity(2)?;
                    spec.phi = num(1)?;
                }
                Some("convention") => {
                    arity(2)?;
                    spec.convention = match toks[1] {
                        "unit" => Convention::Unit,
                        "phi" => Convention::Phi,
                        other => return Err(bad(format!("unknown convention '{other}'"))),
                    };
                }
                Some("interval") => {
                    arity(4)?;
                    let e: EdgeId = toks[1].parse().map_err(|_| bad(format!("bad edge index '{}'", toks[1])))?;
                    spec.intervals.insert(e, (num(2)?, num(3)?));
                }
                Some("default-interval") => {
                    arity(3)?;
                    spec.default_interval = Some((num(1)?, num(2)?));
                }
                Some(other) => return Err(bad(format!("unknown directive '{other}'"))),
            }
        }
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("phi {}\n", self.phi);
        let _ = writeln!(
            out,
            "convention {}",
            match self.convention {
                Convention::Unit => "unit",
                Convention::Phi => "phi",
            }
        );
        if let Some((lo, hi)) = self.default_interval {
            let _ = writeln!(out, "default-interval {lo} {hi}");
        }
        for (e, (lo, hi)) in &self.intervals {
            let _ = writeln!(out, "interval {e} {lo} {hi}");
        }
        out
    }
}

fn bfs_layers(topology: &Topology) -> Vec<Option<usize>> {
    let mut out = vec![Vec::new(); topology.node_count];
    for e in &topology.edges {
        out[e.tail].push(e.head);
    }
    let mut layer = vec![None; topology.node_count];
    let mut queue = VecDeque::new();
    for (v, b) in topology.balances().into_iter().enumerate() {
        if b > 0.0 {
            layer[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = layer[u].map(|l| l + 1);
        for &v in &out[u] {
            if layer[v].is_none() {
                layer[v] = next;
                queue.push_back(v);
            }
        }
    }
    layer
}

/// Draws every edge cost uniformly and independently from its interval.
pub fn sample_costs(topology: &Topology, spec: &SmoothedCostSpec, seed: u64) -> Result<FlowNetwork, GeneratorError> {
    spec.validate(topology.edge_count())?;
    let costs: Vec<f64> = (0..topology.edge_count())
        .map(|e| {
            let (lo, hi) = spec.interval(e);
            uniform_cost(seed, e, lo, hi)
        })
        .collect();
    Ok(topology.with_costs(&costs, spec.scale())?)
}
