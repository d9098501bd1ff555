//! Flow networks, flows and residual networks.
//!
//! A [`FlowNetwork`] is a simple directed graph without 2-cycles whose edges
//! carry a nonnegative capacity and a nonnegative cost, plus a balance value
//! per node. [`transform`] turns an arbitrary instance into a single-source
//! single-sink [`TransformedNetwork`] by adding a master source and a master
//! sink joined to the supply and demand nodes through zero-cost auxiliary
//! edges.

mod dimacs;
mod flow;
mod residual;

pub use dimacs::{read_instance, write_instance, DimacsError};
pub use flow::Flow;
pub use residual::{residual, ArcId, Direction, ResidualArc, ResidualView};

use std::collections::HashMap;

use thiserror::Error;

use crate::numeric::exact_sum;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("edge {edge}: self-loop at node {node}")]
    SelfLoop { edge: EdgeId, node: NodeId },
    #[error("edge {edge}: duplicate edge ({tail}, {head})")]
    DuplicateEdge { edge: EdgeId, tail: NodeId, head: NodeId },
    #[error("edge {edge}: ({tail}, {head}) closes a directed 2-cycle")]
    TwoCycle { edge: EdgeId, tail: NodeId, head: NodeId },
    #[error("edge {edge}: capacity {capacity} is negative or not finite")]
    NegativeCapacity { edge: EdgeId, capacity: f64 },
    #[error("edge {edge}: cost {cost} outside [0, {bound}]")]
    CostOutOfRange { edge: EdgeId, cost: f64, bound: f64 },
    #[error("edge {edge}: auxiliary edges must have cost 0, got {cost}")]
    AuxiliaryCost { edge: EdgeId, cost: f64 },
    #[error("node {node} out of range (network has {node_count} nodes)")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("balance of node {node} is not finite")]
    BadBalance { node: NodeId },
    #[error("balances sum to {sum}, expected 0")]
    BalanceMismatch { sum: f64 },
    #[error("invalid terminals: {0}")]
    BadTerminals(String),
    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Original,
    Auxiliary,
}

/// Range convention for edge costs.
///
/// `Unit` keeps original costs in `[0, 1]` (densities bounded by φ),
/// `Phi(bound)` keeps them in `[0, bound]` (densities bounded by 1). The two
/// are interchangeable by scaling all costs, which leaves the sequence of
/// augmenting paths unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostScale {
    Unit,
    Phi(f64),
}

impl CostScale {
    pub fn upper(&self) -> f64 {
        match *self {
            CostScale::Unit => 1.0,
            CostScale::Phi(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: f64,
    pub cost: f64,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_auxiliary(&self) -> bool {
        self.kind == EdgeKind::Auxiliary
    }
}

/// Immutable, validated flow network.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork {
    node_count: usize,
    edges: Vec<Edge>,
    balance: Vec<f64>,
    scale: CostScale,
    index: HashMap<(NodeId, NodeId), EdgeId>,
}

impl FlowNetwork {
    pub fn builder(node_count: usize) -> NetworkBuilder {
        NetworkBuilder::new(node_count)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn balance(&self, v: NodeId) -> f64 {
        self.balance[v]
    }

    pub fn balances(&self) -> &[f64] {
        &self.balance
    }

    pub fn cost_scale(&self) -> CostScale {
        self.scale
    }

    pub fn find_edge(&self, tail: NodeId, head: NodeId) -> Option<EdgeId> {
        self.index.get(&(tail, head)).copied()
    }

    pub fn original_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_auxiliary()).count()
    }

    /// Copy of the network with the cost of edge `e` replaced.
    pub fn with_cost(&self, e: EdgeId, cost: f64) -> Result<FlowNetwork, NetworkError> {
        let mut edges = self.edges.clone();
        edges[e].cost = cost;
        let mut scale = self.scale;
        if let CostScale::Phi(p) = scale {
            scale = CostScale::Phi(p.max(cost));
        }
        FlowNetwork::from_parts(self.node_count, edges, self.balance.clone(), scale)
    }

    /// Divide every cost by the φ bound, switching to the unit-range
    /// convention. No-op for unit-range networks.
    pub fn normalized(&self) -> FlowNetwork {
        let CostScale::Phi(p) = self.scale else {
            return self.clone();
        };
        let mut out = self.clone();
        for e in &mut out.edges {
            e.cost = (e.cost / p).min(1.0);
        }
        out.scale = CostScale::Unit;
        out
    }

    pub(crate) fn from_parts(
        node_count: usize,
        edges: Vec<Edge>,
        balance: Vec<f64>,
        scale: CostScale,
    ) -> Result<FlowNetwork, NetworkError> {
        let mut index = HashMap::with_capacity(edges.len());
        let bound = scale.upper();
        for (id, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= node_count {
                    return Err(NetworkError::NodeOutOfRange { node: v, node_count });
                }
            }
            if e.tail == e.head {
                return Err(NetworkError::SelfLoop { edge: id, node: e.tail });
            }
            if !(e.capacity >= 0.0) || !e.capacity.is_finite() {
                return Err(NetworkError::NegativeCapacity { edge: id, capacity: e.capacity });
            }
            match e.kind {
                EdgeKind::Auxiliary if e.cost != 0.0 => {
                    return Err(NetworkError::AuxiliaryCost { edge: id, cost: e.cost });
                }
                EdgeKind::Original if !(0.0..=bound).contains(&e.cost) => {
                    return Err(NetworkError::CostOutOfRange { edge: id, cost: e.cost, bound });
                }
                _ => {}
            }
            if index.contains_key(&(e.tail, e.head)) {
                return Err(NetworkError::DuplicateEdge { edge: id, tail: e.tail, head: e.head });
            }
            if index.contains_key(&(e.head, e.tail)) {
                return Err(NetworkError::TwoCycle { edge: id, tail: e.tail, head: e.head });
            }
            index.insert((e.tail, e.head), id);
        }
        if balance.len() != node_count {
            return Err(NetworkError::NodeOutOfRange { node: balance.len(), node_count });
        }
        if let Some(node) = balance.iter().position(|b| !b.is_finite()) {
            return Err(NetworkError::BadBalance { node });
        }
        Ok(FlowNetwork { node_count, edges, balance, scale, index })
    }
}

/// Collects edges and balances, validating everything on [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    node_count: usize,
    edges: Vec<Edge>,
    balance: Vec<f64>,
    scale: CostScale,
}

impl NetworkBuilder {
    pub fn new(node_count: usize) -> Self {
        NetworkBuilder {
            node_count,
            edges: Vec::new(),
            balance: vec![0.0; node_count],
            scale: CostScale::Unit,
        }
    }

    pub fn cost_scale(&mut self, scale: CostScale) -> &mut Self {
        self.scale = scale;
        self
    }

    pub fn edge(&mut self, tail: NodeId, head: NodeId, capacity: f64, cost: f64) -> EdgeId {
        self.push(tail, head, capacity, cost, EdgeKind::Original)
    }

    pub fn auxiliary_edge(&mut self, tail: NodeId, head: NodeId, capacity: f64) -> EdgeId {
        self.push(tail, head, capacity, 0.0, EdgeKind::Auxiliary)
    }

    pub fn push(
        &mut self,
        tail: NodeId,
        head: NodeId,
        capacity: f64,
        cost: f64,
        kind: EdgeKind,
    ) -> EdgeId {
        self.edges.push(Edge { tail, head, capacity, cost, kind });
        self.edges.len() - 1
    }

    /// Panics if `v` is out of range.
    pub fn balance(&mut self, v: NodeId, b: f64) -> &mut Self {
        self.balance[v] = b;
        self
    }

    pub fn build(&self) -> Result<FlowNetwork, NetworkError> {
        FlowNetwork::from_parts(
            self.node_count,
            self.edges.clone(),
            self.balance.clone(),
            self.scale,
        )
    }
}

/// Single-source single-sink instance: `b(source) = -b(sink) = z`, every
/// other balance is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedNetwork {
    network: FlowNetwork,
    source: NodeId,
    sink: NodeId,
    z: f64,
    base_nodes: usize,
}

impl TransformedNetwork {
    /// Wrap a network that already has a unique source and sink. `z` is
    /// `b(source)`.
    pub fn with_terminals(
        network: FlowNetwork,
        source: NodeId,
        sink: NodeId,
    ) -> Result<TransformedNetwork, NetworkError> {
        let n = network.node_count();
        if source >= n || sink >= n || source == sink {
            return Err(NetworkError::BadTerminals(format!(
                "source {source} and sink {sink} must be distinct nodes below {n}"
            )));
        }
        let z = network.balance(source);
        if z < 0.0 || network.balance(sink) != -z {
            return Err(NetworkError::BadTerminals(format!(
                "b(source) = {z} and b(sink) = {} do not match",
                network.balance(sink)
            )));
        }
        if let Some(v) =
            (0..n).find(|&v| v != source && v != sink && network.balance(v) != 0.0)
        {
            return Err(NetworkError::BadTerminals(format!("node {v} has nonzero balance")));
        }
        Ok(TransformedNetwork { network, source, sink, z, base_nodes: n })
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Node count of the instance before master source and sink were added.
    pub fn base_node_count(&self) -> usize {
        self.base_nodes
    }

    pub fn node_count(&self) -> usize {
        self.network.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.network.edge_count()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        self.network.edge(e)
    }

    /// Same terminals, cost of edge `e` overwritten.
    pub fn with_cost(&self, e: EdgeId, cost: f64) -> Result<TransformedNetwork, NetworkError> {
        Ok(TransformedNetwork { network: self.network.with_cost(e, cost)?, ..self.clone() })
    }

    /// Same instance with a different demand `z`.
    pub fn with_z(&self, z: f64) -> TransformedNetwork {
        let mut out = self.clone();
        out.network.balance[self.source] = z;
        out.network.balance[self.sink] = -z;
        out.z = z;
        out
    }

    /// Sum of capacities leaving the source.
    pub fn source_capacity(&self) -> f64 {
        self.network
            .edges()
            .iter()
            .filter(|e| e.tail == self.source)
            .map(|e| e.capacity)
            .sum()
    }
}

/// Add master source `s = n` and master sink `t = n + 1`, an auxiliary edge
/// `(s, v)` of capacity `b(v)` for every supply node and `(w, t)` of capacity
/// `-b(w)` for every demand node.
pub fn transform(network: &FlowNetwork) -> Result<TransformedNetwork, NetworkError> {
    let sum = exact_sum(network.balances());
    let magnitude: f64 = network.balances().iter().map(|b| b.abs()).sum();
    // Balances read from decimal text may be off by a rounding step once
    // converted to binary; the text reader already checked them exactly.
    if sum.abs() > magnitude * f64::EPSILON * 4.0 {
        return Err(NetworkError::BalanceMismatch { sum });
    }
    let n = network.node_count();
    let (s, t) = (n, n + 1);
    let mut edges = network.edges().to_vec();
    let mut z = 0.0;
    for v in 0..n {
        let b = network.balance(v);
        if b > 0.0 {
            edges.push(Edge { tail: s, head: v, capacity: b, cost: 0.0, kind: EdgeKind::Auxiliary });
            z += b;
        }
    }
    for w in 0..n {
        let b = network.balance(w);
        if b < 0.0 {
            edges.push(Edge { tail: w, head: t, capacity: -b, cost: 0.0, kind: EdgeKind::Auxiliary });
        }
    }
    let mut balance = vec![0.0; n + 2];
    balance[s] = z;
    balance[t] = -z;
    let network = FlowNetwork::from_parts(n + 2, edges, balance, network.cost_scale())?;
    Ok(TransformedNetwork { network, source: s, sink: t, z, base_nodes: n })
}

/// Use the unique supply and demand node directly as terminals when there is
/// exactly one of each, otherwise fall back to [`transform`].
pub fn into_single_commodity(network: FlowNetwork) -> Result<TransformedNetwork, NetworkError> {
    let supplies: Vec<_> = (0..network.node_count()).filter(|&v| network.balance(v) > 0.0).collect();
    let demands: Vec<_> = (0..network.node_count()).filter(|&v| network.balance(v) < 0.0).collect();
    if let ([s], [t]) = (supplies.as_slice(), demands.as_slice()) {
        if network.balance(*s) == -network.balance(*t) {
            return TransformedNetwork::with_terminals(network.clone(), *s, *t);
        }
    }
    transform(&network)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node() -> FlowNetwork {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 3.0, 0.5);
        b.balance(0, 3.0).balance(1, -3.0);
        b.build().unwrap()
    }

    #[test]
    fn transform_single_pair() {
        let tn = transform(&two_node()).unwrap();
        assert_eq!(tn.node_count(), 4);
        assert_eq!(tn.z(), 3.0);
        let (s, t) = (tn.source(), tn.sink());
        let e = tn.network().find_edge(s, 0).unwrap();
        assert_eq!(tn.edge(e).capacity, 3.0);
        assert_eq!(tn.edge(e).cost, 0.0);
        assert!(tn.edge(e).is_auxiliary());
        let e = tn.network().find_edge(1, t).unwrap();
        assert_eq!(tn.edge(e).capacity, 3.0);
        assert_eq!(tn.network().balance(s), 3.0);
        assert_eq!(tn.network().balance(t), -3.0);
        assert_eq!(tn.network().balance(0), 0.0);
    }

    #[test]
    fn transform_zero_balances() {
        let mut b = FlowNetwork::builder(3);
        b.edge(0, 1, 1.0, 0.2);
        let tn = transform(&b.build().unwrap()).unwrap();
        assert_eq!(tn.z(), 0.0);
        assert_eq!(tn.edge_count(), 1);
    }

    #[test]
    fn transform_multiple_supplies() {
        let mut b = FlowNetwork::builder(3);
        b.edge(0, 2, 5.0, 0.1);
        b.edge(1, 2, 5.0, 0.1);
        b.balance(0, 2.0).balance(1, 1.0).balance(2, -3.0);
        let tn = transform(&b.build().unwrap()).unwrap();
        assert_eq!(tn.z(), 3.0);
        let out: Vec<f64> = tn
            .network()
            .edges()
            .iter()
            .filter(|e| e.tail == tn.source())
            .map(|e| e.capacity)
            .collect();
        assert_eq!(out, vec![2.0, 1.0]);
        let into: Vec<f64> = tn
            .network()
            .edges()
            .iter()
            .filter(|e| e.head == tn.sink())
            .map(|e| e.capacity)
            .collect();
        assert_eq!(into, vec![3.0]);
        assert_eq!(tn.source_capacity(), 3.0);
    }

    #[test]
    fn transform_rejects_unbalanced() {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 3.0, 0.5);
        b.balance(0, 3.0).balance(1, -2.0);
        let err = transform(&b.build().unwrap()).unwrap_err();
        assert!(matches!(err, NetworkError::BalanceMismatch { .. }));
    }

    #[test]
    fn rejects_structural_violations() {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 1.0, 0.5);
        b.edge(1, 0, 1.0, 0.5);
        assert!(matches!(b.build(), Err(NetworkError::TwoCycle { .. })));

        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 1.0, 0.5);
        b.edge(0, 1, 2.0, 0.5);
        assert!(matches!(b.build(), Err(NetworkError::DuplicateEdge { .. })));

        let mut b = FlowNetwork::builder(2);
        b.edge(0, 0, 1.0, 0.5);
        assert!(matches!(b.build(), Err(NetworkError::SelfLoop { .. })));

        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, -1.0, 0.5);
        assert!(matches!(b.build(), Err(NetworkError::NegativeCapacity { .. })));

        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 1.0, 1.5);
        assert!(matches!(b.build(), Err(NetworkError::CostOutOfRange { .. })));
        b.cost_scale(CostScale::Phi(2.0));
        assert!(b.build().is_ok());
    }

    #[test]
    fn normalized_divides_by_phi() {
        let mut b = FlowNetwork::builder(2);
        b.cost_scale(CostScale::Phi(64.0));
        b.edge(0, 1, 1.0, 32.0);
        let n = b.build().unwrap().normalized();
        assert_eq!(n.cost_scale(), CostScale::Unit);
        assert_eq!(n.edge(0).cost, 0.5);
    }
}
