use crate::network::{ArcId, NodeId, ResidualView};

/// A residual arc oriented in search direction: `(arc, from, to, cost)`.
pub(crate) type Oriented = (ArcId, NodeId, NodeId, f64);

pub(crate) fn forward_arcs(view: &ResidualView<'_>) -> Vec<Oriented> {
    let mut arcs: Vec<Oriented> = view.arcs().iter().map(|a| (a.id, a.tail, a.head, a.cost)).collect();
    arcs.sort_by_key(|a| a.0);
    arcs
}

/// Arcs reversed, so a search from `t` yields distances *to* `t`.
pub(crate) fn reverse_arcs(view: &ResidualView<'_>) -> Vec<Oriented> {
    let mut arcs: Vec<Oriented> = view.arcs().iter().map(|a| (a.id, a.head, a.tail, a.cost)).collect();
    arcs.sort_by_key(|a| a.0);
    arcs
}

const TIE_SLACK: f64 = 1e-13;

pub(crate) struct Labels {
    pub dist: Vec<f64>,
    pub pred: Vec<Option<(ArcId, NodeId)>>,
}

impl Labels {
    pub fn arcs_to(&self, mut v: NodeId) -> Vec<ArcId> {
        let mut out = Vec::new();
        while let Some((a, u)) = self.pred[v] {
            out.push(a);
            v = u;
            if out.len() > self.pred.len() {
                break;
            }
        }
        out.reverse();
        out
    }
}

/// Bellman-Ford on raw (possibly negative) costs, assuming no negative cycle.
///
/// Equal distances are resolved by fewer arcs, then by the smaller index of
/// the last arc. Distances within a few ulps count as equal: otherwise the
/// rounding in `d + c - c` lets a zero-cost forward/backward pair look like
/// an improvement and the predecessor graph picks up a cycle.
pub(crate) fn shortest_paths(n: usize, root: NodeId, arcs: &[Oriented]) -> Labels {
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    let mut pred: Vec<Option<(ArcId, NodeId)>> = vec![None; n];
    dist[root] = 0.0;
    hops[root] = 0;
    for _ in 0..=n {
        let mut changed = false;
        for &(arc, u, v, c) in arcs {
            if dist[u].is_infinite() || v == root {
                continue;
            }
            let nd = dist[u] + c;
            let nh = hops[u] + 1;
            let eps = TIE_SLACK * (1.0 + nd.abs().max(dist[v].abs()));
            let better = if dist[v].is_infinite() || nd < dist[v] - eps {
                true
            } else if nd <= dist[v] + eps {
                nh < hops[v] || (nh == hops[v] && pred[v].is_some_and(|(p, _)| arc < p))
            } else {
                false
            };
            if better {
                dist[v] = nd;
                hops[v] = nh;
                pred[v] = Some((arc, u));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Labels { dist, pred }
}

/// Does the residual network contain a cycle of cost below `-tolerance`?
pub(crate) fn has_negative_cycle(view: &ResidualView<'_>, tolerance: f64) -> bool {
    let n = view.node_count();
    let arcs = forward_arcs(view);
    let mut dist = vec![0.0; n];
    for _ in 0..n {
        let mut changed = false;
        for &(_, u, v, c) in &arcs {
            if dist[u] + c < dist[v] - tolerance {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    true
}
