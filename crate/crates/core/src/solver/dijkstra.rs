use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::network::{ArcId, NodeId};

#[derive(Debug, Clone, Copy)]
struct Label {
    dist: f64,
    hops: usize,
    node: NodeId,
}

impl PartialEq for Label {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Label {}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed so that BinaryHeap pops the smallest (dist, hops, node).
impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.hops.cmp(&self.hops))
            .then_with(|| other.node.cmp(&self.node))
    }
}

pub(crate) struct Tree {
    pub dist: Vec<f64>,
    pub pred: Vec<Option<(ArcId, NodeId)>>,
    pub scans: usize,
}

impl Tree {
    /// Arcs from the root to `v`, in path order.
    pub fn arcs_to(&self, mut v: NodeId) -> Vec<ArcId> {
        let mut arcs = Vec::new();
        while let Some((a, u)) = self.pred[v] {
            arcs.push(a);
            v = u;
        }
        arcs.reverse();
        arcs
    }
}

/// Single-source shortest paths over nonnegative arc weights.
///
/// `arcs(v)` yields `(arc, neighbour, weight)` for every residual arc leaving
/// `v` in the search direction. Among equal-distance paths the one with fewer
/// arcs wins, then the lexicographically smaller arc-index sequence.
pub(crate) fn shortest_paths<F, I>(n: usize, root: NodeId, mut arcs: F) -> Tree
where
    F: FnMut(NodeId) -> I,
    I: Iterator<Item = (ArcId, NodeId, f64)>,
{
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    let mut pred: Vec<Option<(ArcId, NodeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut scans = 0;
    dist[root] = 0.0;
    hops[root] = 0;
    heap.push(Label { dist: 0.0, hops: 0, node: root });

    while let Some(Label { dist: d, hops: h, node: u }) = heap.pop() {
        if done[u] || d != dist[u] || h != hops[u] {
            continue;
        }
        done[u] = true;
        for (arc, v, w) in arcs(u) {
            scans += 1;
            if done[v] {
                continue;
            }
            let nd = d + w;
            let nh = h + 1;
            let better = match nd.total_cmp(&dist[v]) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match nh.cmp(&hops[v]) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => lex_less(&pred, u, arc, v),
                },
            };
            if better {
                dist[v] = nd;
                hops[v] = nh;
                pred[v] = Some((arc, u));
                heap.push(Label { dist: nd, hops: nh, node: v });
            }
        }
    }
    Tree { dist, pred, scans }
}

fn chain(pred: &[Option<(ArcId, NodeId)>], mut v: NodeId) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some((a, u)) = pred[v] {
        out.push(a.index());
        v = u;
    }
    out.reverse();
    out
}

/// Is `path(u) + arc` lexicographically smaller than the current `path(v)`?
fn lex_less(pred: &[Option<(ArcId, NodeId)>], u: NodeId, arc: ArcId, v: NodeId) -> bool {
    let mut candidate = chain(pred, u);
    candidate.push(arc.index());
    candidate < chain(pred, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, edges: &[(usize, usize, f64)]) -> Tree {
        shortest_paths(n, 0, |u| {
            edges
                .iter()
                .enumerate()
                .filter(move |(_, e)| e.0 == u)
                .map(|(i, e)| (ArcId::forward(i), e.1, e.2))
                .collect::<Vec<_>>()
                .into_iter()
        })
    }

    #[test]
    fn finds_shortest_distances() {
        let t = run(4, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0), (2, 3, 0.5)]);
        assert_eq!(t.dist, vec![0.0, 1.0, 2.0, 2.5]);
        assert_eq!(t.arcs_to(3), vec![ArcId::forward(0), ArcId::forward(1), ArcId::forward(3)]);
    }

    #[test]
    fn ties_prefer_fewer_arcs() {
        let t = run(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)]);
        assert_eq!(t.arcs_to(2), vec![ArcId::forward(2)]);
    }

    #[test]
    fn ties_then_prefer_smaller_arc_sequence() {
        // Two 2-arc paths of equal length to node 3: via 2 (arcs 1,3) and via 1 (arcs 0,2).
        let t = run(4, &[(0, 1, 1.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)]);
        assert_eq!(t.arcs_to(3), vec![ArcId::forward(0), ArcId::forward(2)]);
        let t = run(4, &[(0, 2, 1.0), (0, 1, 1.0), (2, 3, 1.0), (1, 3, 1.0)]);
        assert_eq!(t.arcs_to(3), vec![ArcId::forward(0), ArcId::forward(2)]);
    }

    #[test]
    fn unreachable_is_infinite() {
        let t = run(3, &[(0, 1, 1.0)]);
        assert!(t.dist[2].is_infinite());
        assert!(t.pred[2].is_none());
    }
}
