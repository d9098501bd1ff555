use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use super::{edge_rng, GeneratorError, Purpose};
use crate::network::{CostScale, FlowNetwork, NetworkError, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `U = {0..n}`, `W = {n..2n}`, edges `U → W` with capacity 1.
    Bipartite,
    /// `n` nodes split evenly into `depth` layers; edges join consecutive
    /// layers in the forward direction.
    Layered { depth: usize },
    /// A random simple digraph without 2-cycles.
    Erdos,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Bipartite => f.write_str("bipartite"),
            Shape::Layered { depth } => write!(f, "layered:{depth}"),
            Shape::Erdos => f.write_str("erdos"),
        }
    }
}

impl FromStr for Shape {
    type Err = String;

    /// `bipartite`, `erdos`, or `layered:<depth>`.
    fn from_str(s: &str) -> Result<Shape, String> {
        match s {
            "bipartite" => Ok(Shape::Bipartite),
            "erdos" => Ok(Shape::Erdos),
            _ => s
                .strip_prefix("layered:")
                .and_then(|d| d.parse().ok())
                .map(|depth| Shape::Layered { depth })
                .ok_or_else(|| format!("unknown shape '{s}' (bipartite, erdos, layered:<depth>)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: f64,
}

/// Graph skeleton without costs.
///
/// Every node's balance is its capacity out minus its capacity in, so
/// saturating all edges is a feasible flow and the balances sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub node_count: usize,
    pub edges: Vec<TopologyEdge>,
}

impl Topology {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn balances(&self) -> Vec<f64> {
        let mut b = vec![0.0; self.node_count];
        for e in &self.edges {
            b[e.tail] += e.capacity;
            b[e.head] -= e.capacity;
        }
        b
    }

    /// Attaches one cost per edge.
    pub fn with_costs(&self, costs: &[f64], scale: CostScale) -> Result<FlowNetwork, NetworkError> {
        assert_eq!(costs.len(), self.edges.len(), "one cost per edge");
        let mut builder = FlowNetwork::builder(self.node_count);
        builder.cost_scale(scale);
        for (e, &c) in self.edges.iter().zip(costs) {
            builder.edge(e.tail, e.head, e.capacity, c);
        }
        for (v, b) in self.balances().into_iter().enumerate() {
            builder.balance(v, b);
        }
        builder.build()
    }
}

const MAX_CAPACITY: u32 = 10;

pub fn random_topology(n: usize, m: usize, shape: Shape, seed: u64) -> Result<Topology, GeneratorError> {
    let infeasible = |msg: String| Err(GeneratorError::InfeasibleShape(msg));
    let mut rng = edge_rng(seed, Purpose::Topology, 0);
    let (node_count, pairs): (usize, Vec<(NodeId, NodeId)>) = match shape {
        Shape::Bipartite => {
            if n == 0 || m > n * n {
                return infeasible(format!("bipartite needs 1 ≤ n and m ≤ n² (n={n}, m={m})"));
            }
            let mut picked = sample(&mut rng, n * n, m).into_vec();
            picked.sort_unstable();
            (2 * n, picked.into_iter().map(|k| (k / n, n + k % n)).collect())
        }
        Shape::Layered { depth } => {
            if depth < 2 || depth > n {
                return infeasible(format!("layered needs 2 ≤ depth ≤ n (depth={depth}, n={n})"));
            }
            let layer = |v: usize| v * depth / n;
            let candidates: Vec<(NodeId, NodeId)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| layer(v) == layer(u) + 1)
                .collect();
            if m > candidates.len() {
                return infeasible(format!("layered({depth}) on {n} nodes has only {} edges", candidates.len()));
            }
            let mut picked = sample(&mut rng, candidates.len(), m).into_vec();
            picked.sort_unstable();
            (n, picked.into_iter().map(|k| candidates[k]).collect())
        }
        Shape::Erdos => {
            let max = n * n.saturating_sub(1) / 2;
            if m > max {
                return infeasible(format!("erdos on {n} nodes allows at most {max} edges, got {m}"));
            }
            let unordered: Vec<(NodeId, NodeId)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let mut picked = sample(&mut rng, unordered.len(), m).into_vec();
            picked.sort_unstable();
            let pairs = picked
                .into_iter()
                .map(|k| {
                    let (u, v) = unordered[k];
                    if rng.gen::<bool>() {
                        (u, v)
                    } else {
                        (v, u)
                    }
                })
                .collect();
            (n, pairs)
        }
    };
    let edges = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (tail, head))| {
            let capacity = match shape {
                Shape::Bipartite => 1.0,
                _ => edge_rng(seed, Purpose::Topology, i + 1).gen_range(1..=MAX_CAPACITY) as f64,
            };
            TopologyEdge { tail, head, capacity }
        })
        .collect();
    Ok(Topology { node_count, edges })
}
