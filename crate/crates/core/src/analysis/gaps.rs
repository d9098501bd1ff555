use crate::network::{NodeId, TransformedNetwork};
use crate::solver::{solve, SolveError, SspOptions};

/// Near-tie diagnostics for an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    /// Smallest difference between two augmenting path lengths (`+∞` with
    /// fewer than two paths).
    pub min_path_length_gap: f64,
    /// Smallest `|cost|` over the enumerated cycles (`+∞` if none).
    pub min_cycle_cost: f64,
    pub cycles_examined: usize,
    /// The cycle budget ran out before enumeration finished.
    pub truncated: bool,
}

const MAX_CYCLE_LEN: usize = 8;

/// Solves `instance` for its path lengths and enumerates simple cycles of
/// 3 to 8 arcs in the graph holding every edge in both directions, examining
/// at most `cycle_budget` cycles.
pub fn gap_report(instance: &TransformedNetwork, cycle_budget: usize) -> Result<GapReport, SolveError> {
    let options = SspOptions { record_distances: false, ..SspOptions::default() };
    let mut lengths = solve(instance, &options)?.lengths();
    lengths.sort_by(f64::total_cmp);
    let min_path_length_gap = lengths.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);

    let n = instance.node_count();
    let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
    for e in instance.network().edges() {
        adjacency[e.tail].push((e.head, e.cost));
        adjacency[e.head].push((e.tail, -e.cost));
    }
    let mut search = CycleSearch {
        adjacency: &adjacency,
        on_path: vec![false; n],
        budget: cycle_budget,
        examined: 0,
        min_cost: f64::INFINITY,
    };
    for start in 0..n {
        if search.exhausted() {
            break;
        }
        search.on_path[start] = true;
        search.extend(start, start, 0, 0.0);
        search.on_path[start] = false;
    }

    Ok(GapReport {
        min_path_length_gap,
        min_cycle_cost: search.min_cost,
        cycles_examined: search.examined,
        truncated: search.exhausted(),
    })
}

struct CycleSearch<'a> {
    adjacency: &'a [Vec<(NodeId, f64)>],
    on_path: Vec<bool>,
    budget: usize,
    examined: usize,
    min_cost: f64,
}

impl CycleSearch<'_> {
    fn exhausted(&self) -> bool {
        self.examined >= self.budget
    }

    // Cycles are rooted at their smallest node so each is found once per
    // orientation.
    fn extend(&mut self, start: NodeId, v: NodeId, len: usize, cost: f64) {
        for &(w, c) in &self.adjacency[v] {
            if self.exhausted() {
                return;
            }
            if w == start && len + 1 >= 3 {
                self.examined += 1;
                self.min_cost = self.min_cost.min((cost + c).abs());
            } else if w > start && !self.on_path[w] && len + 1 < MAX_CYCLE_LEN {
                self.on_path[w] = true;
                self.extend(start, w, len + 1, cost + c);
                self.on_path[w] = false;
            }
        }
    }
}
