use std::fmt;

use super::{EdgeId, Flow, NetworkError, NodeId, TransformedNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// A residual arc named by the edge it belongs to and its direction.
///
/// Arcs are totally ordered by [`index`](Self::index), which is what the
/// solvers use for lexicographic tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId {
    pub edge: EdgeId,
    pub direction: Direction,
}

impl ArcId {
    pub fn forward(edge: EdgeId) -> ArcId {
        ArcId { edge, direction: Direction::Forward }
    }

    pub fn backward(edge: EdgeId) -> ArcId {
        ArcId { edge, direction: Direction::Backward }
    }

    pub fn from_index(index: usize) -> ArcId {
        if index.is_multiple_of(2) {
            ArcId::forward(index / 2)
        } else {
            ArcId::backward(index / 2)
        }
    }

    pub fn index(self) -> usize {
        2 * self.edge + (self.direction == Direction::Backward) as usize
    }

    /// `e⁻¹`.
    pub fn reverse(self) -> ArcId {
        match self.direction {
            Direction::Forward => ArcId::backward(self.edge),
            Direction::Backward => ArcId::forward(self.edge),
        }
    }

    pub fn is_forward(self) -> bool {
        self.direction == Direction::Forward
    }

    /// `+1` for forward arcs, `-1` for backward arcs.
    pub fn sign(self) -> f64 {
        if self.is_forward() {
            1.0
        } else {
            -1.0
        }
    }

    /// `(tail, head)` of the arc in the residual network.
    pub fn endpoints(self, instance: &TransformedNetwork) -> (NodeId, NodeId) {
        let e = instance.edge(self.edge);
        if self.is_forward() {
            (e.tail, e.head)
        } else {
            (e.head, e.tail)
        }
    }

    /// Residual cost `c'`: `c_e` forward, `-c_e` backward.
    pub fn cost(self, instance: &TransformedNetwork) -> f64 {
        self.sign() * instance.edge(self.edge).cost
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Forward => write!(f, "e{}", self.edge),
            Direction::Backward => write!(f, "e{}^-1", self.edge),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualArc {
    pub id: ArcId,
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: f64,
    pub cost: f64,
    /// The arc is present but its reverse is not.
    pub empty: bool,
    /// Empty and not belonging to an auxiliary edge.
    pub good: bool,
}

/// Residual network `G_f` of a feasible flow.
#[derive(Debug, Clone)]
pub struct ResidualView<'a> {
    instance: &'a TransformedNetwork,
    flow: &'a Flow,
    arcs: Vec<ResidualArc>,
    slot: Vec<Option<usize>>,
    outgoing: Vec<Vec<usize>>,
}

/// Builds `G_f` after checking that `flow` is feasible for `instance`.
pub fn residual<'a>(
    instance: &'a TransformedNetwork,
    flow: &'a Flow,
) -> Result<ResidualView<'a>, NetworkError> {
    flow.check(instance)?;
    let net = instance.network();
    let mut arcs = Vec::new();
    let mut slot = vec![None; 2 * net.edge_count()];
    let mut outgoing = vec![Vec::new(); net.node_count()];
    for (id, edge) in net.edges().iter().enumerate() {
        let f = flow.get(id);
        let has_forward = f < edge.capacity;
        let has_backward = f > 0.0;
        let candidates = [
            (has_forward, ArcId::forward(id), edge.capacity - f, has_backward),
            (has_backward, ArcId::backward(id), f, has_forward),
        ];
        for (present, arc, capacity, reverse_present) in candidates {
            if !present {
                continue;
            }
            let (tail, head) = arc.endpoints(instance);
            let empty = !reverse_present;
            slot[arc.index()] = Some(arcs.len());
            outgoing[tail].push(arcs.len());
            arcs.push(ResidualArc {
                id: arc,
                tail,
                head,
                capacity,
                cost: arc.cost(instance),
                empty,
                good: empty && !edge.is_auxiliary(),
            });
        }
    }
    Ok(ResidualView { instance, flow, arcs, slot, outgoing })
}

impl<'a> ResidualView<'a> {
    pub fn instance(&self) -> &'a TransformedNetwork {
        self.instance
    }

    pub fn flow(&self) -> &'a Flow {
        self.flow
    }

    pub fn arcs(&self) -> &[ResidualArc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Option<&ResidualArc> {
        self.slot.get(id.index()).copied().flatten().map(|i| &self.arcs[i])
    }

    pub fn contains(&self, id: ArcId) -> bool {
        self.arc(id).is_some()
    }

    pub fn outgoing(&self, v: NodeId) -> impl Iterator<Item = &ResidualArc> + '_ {
        self.outgoing[v].iter().map(move |&i| &self.arcs[i])
    }

    pub fn node_count(&self) -> usize {
        self.outgoing.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;

    fn single_edge(cap: f64) -> TransformedNetwork {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, cap, 0.5);
        b.balance(0, cap).balance(1, -cap);
        TransformedNetwork::with_terminals(b.build().unwrap(), 0, 1).unwrap()
    }

    #[test]
    fn empty_flow_has_only_empty_forward_arcs() {
        let inst = single_edge(4.0);
        let f = Flow::zero(1);
        let r = residual(&inst, &f).unwrap();
        assert_eq!(r.arcs().len(), 1);
        let a = r.arc(ArcId::forward(0)).unwrap();
        assert!(a.empty && a.good);
        assert_eq!(a.capacity, 4.0);
        assert_eq!(a.cost, 0.5);
    }

    #[test]
    fn saturated_edge_leaves_empty_backward_arc() {
        let inst = single_edge(4.0);
        let f = Flow::from_values(&inst, vec![4.0]);
        let r = residual(&inst, &f).unwrap();
        assert!(!r.contains(ArcId::forward(0)));
        let a = r.arc(ArcId::backward(0)).unwrap();
        assert!(a.empty);
        assert_eq!((a.tail, a.head), (1, 0));
        assert_eq!(a.capacity, 4.0);
        assert_eq!(a.cost, -0.5);
    }

    #[test]
    fn interior_flow_has_no_empty_arcs() {
        let inst = single_edge(4.0);
        let f = Flow::from_values(&inst, vec![1.5]);
        let r = residual(&inst, &f).unwrap();
        let fw = r.arc(ArcId::forward(0)).unwrap();
        let bw = r.arc(ArcId::backward(0)).unwrap();
        assert!(!fw.empty && !bw.empty);
        assert_eq!(fw.capacity, 2.5);
        assert_eq!(bw.capacity, 1.5);
        assert_eq!(fw.cost, -bw.cost);
    }

    #[test]
    fn rejects_infeasible_flow() {
        let inst = single_edge(4.0);
        let f = Flow::from_parts(vec![5.0], 5.0);
        assert!(matches!(residual(&inst, &f), Err(NetworkError::InfeasibleFlow(_))));
    }

    #[test]
    fn auxiliary_arcs_are_never_good() {
        let mut b = FlowNetwork::builder(2);
        b.edge(0, 1, 1.0, 0.5);
        b.balance(0, 1.0).balance(1, -1.0);
        let inst = crate::network::transform(&b.build().unwrap()).unwrap();
        let f = Flow::zero(inst.edge_count());
        let r = residual(&inst, &f).unwrap();
        for a in r.arcs() {
            assert!(a.empty);
            assert_eq!(a.good, !inst.edge(a.id.edge).is_auxiliary());
        }
    }

    #[test]
    fn arc_index_round_trip() {
        for i in 0..10 {
            assert_eq!(ArcId::from_index(i).index(), i);
            assert_eq!(ArcId::from_index(i).reverse().reverse(), ArcId::from_index(i));
        }
    }
}
