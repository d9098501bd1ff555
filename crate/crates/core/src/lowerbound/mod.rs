//! The exponential lower-bound family.
//!
//! `G_1` is a bipartite network on which SSP needs exactly `m` augmentations.
//! Each extension `G_i → G_{i+1}` adds a new source and sink joined to the old
//! ones by four edges and doubles the count. The full network `G` hangs four
//! chains of `M` nodes off `G_k`, multiplying the count by `2M` for a total of
//! `m · 2^{k-1} · 2M`.
//!
//! Costs use the φ-range convention: every edge cost is drawn uniformly from
//! an interval of length at least 1 inside `[0, φ]`. Edge indices are stable
//! across extensions, so the same seed yields the same costs on the shared
//! part of `G_i` and `G_{i+1}`.

mod verify;

pub use verify::{verify_count, verify_stage, CountReport, StageReport};

use thiserror::Error;

use crate::generators::uniform_cost;
use crate::network::{CostScale, FlowNetwork, NetworkError, NodeId, TransformedNetwork};
use crate::solver::SolveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LowerBoundError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("step {step}: {message}")]
    PredictionMismatch { step: usize, message: String },
    #[error("seed produced equal consecutive path lengths at step {step}")]
    Tie { step: usize },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Validated `(n, m, φ)` with the derived `k` and `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams {
    pub n: usize,
    pub m: usize,
    pub phi: f64,
    /// `⌊log₂ φ⌋ - 5`.
    pub k: usize,
    /// `min(n, 2^{⌊log₂ φ⌋}/4 - 2)`.
    pub big_m: usize,
}

fn log2_floor(phi: f64) -> u32 {
    let mut p = 0;
    while 2f64.powi(p as i32 + 1) <= phi {
        p += 1;
    }
    p
}

fn check_nm(n: usize, m: usize) -> Result<(), LowerBoundError> {
    if n == 0 || m < n || m > n * n {
        return Err(LowerBoundError::BadParams(format!("need n ≥ 1 and m ∈ {{n, …, n²}}, got n={n}, m={m}")));
    }
    Ok(())
}

impl LowerBoundParams {
    /// Requires `n ≤ m ≤ n²` and `64 ≤ φ ≤ 2ⁿ`.
    pub fn new(n: usize, m: usize, phi: f64) -> Result<LowerBoundParams, LowerBoundError> {
        let p = Self::relaxed(n, m, phi)?;
        if phi > 2f64.powi(n.min(1023) as i32) {
            return Err(LowerBoundError::BadParams(format!("need φ ≤ 2ⁿ = 2^{n}, got φ={phi}")));
        }
        Ok(p)
    }

    /// Like [`new`](Self::new) but without `φ ≤ 2ⁿ`. The construction and its
    /// step count remain valid; only the asymptotic statement needs that bound.
    pub fn relaxed(n: usize, m: usize, phi: f64) -> Result<LowerBoundParams, LowerBoundError> {
        check_nm(n, m)?;
        if !(phi >= 64.0) || !phi.is_finite() {
            return Err(LowerBoundError::BadParams(format!("need φ ≥ 64, got φ={phi}")));
        }
        let lg = log2_floor(phi);
        let k = lg as usize - 5;
        let big_m = n.min((1usize << lg) / 4 - 2);
        Ok(LowerBoundParams { n, m, phi, k, big_m })
    }

    /// `N_i = 2^{i-1} m`, the maximum flow value of `G_i`.
    pub fn n_i(&self, i: usize) -> f64 {
        max_flow_of_stage(self.m, i)
    }

    pub fn predicted_nodes(&self) -> usize {
        2 * self.n + 2 * self.k + 2 + 4 * self.big_m
    }

    pub fn predicted_edges(&self) -> usize {
        self.m + 2 * self.n + 4 * self.k - 4 + 8 * self.big_m
    }

    /// Number of augmentations on one `G_k`, `m · 2^{k-1}`.
    pub fn stage_steps(&self) -> usize {
        self.m << (self.k - 1)
    }

    pub fn predicted_steps(&self) -> usize {
        self.stage_steps() * 2 * self.big_m
    }

    /// `α_i = 2^{k+5} i - 2^{k+4} - i`.
    pub fn alpha(&self, i: usize) -> f64 {
        let (i, p) = (i as f64, 2f64.powi(self.k as i32 + 4));
        2.0 * p * i - p - i
    }

    /// `β_i = 2^{k+5} i - i`.
    pub fn beta(&self, i: usize) -> f64 {
        let (i, p) = (i as f64, 2f64.powi(self.k as i32 + 5));
        p * i - i
    }
}

fn max_flow_of_stage(m: usize, i: usize) -> f64 {
    (m as f64) * 2f64.powi(i as i32 - 1)
}

/// Node names of the four chains of the full network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chains {
    pub a: Vec<NodeId>,
    pub b: Vec<NodeId>,
    pub c: Vec<NodeId>,
    pub d: Vec<NodeId>,
}

/// A member of the family together with its node layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundNetwork {
    pub instance: TransformedNetwork,
    pub n: usize,
    pub m: usize,
    /// `i` for `G_i`; for the full network, the `k` of the inner `G_k`.
    pub level: usize,
    /// `(s_j, t_j)` for `j = 1..=level`.
    pub terminals: Vec<(NodeId, NodeId)>,
    pub chains: Option<Chains>,
    seed: u64,
}

impl LowerBoundNetwork {
    pub fn u(&self, i: usize) -> NodeId {
        1 + i
    }

    pub fn w(&self, j: usize) -> NodeId {
        1 + self.n + j
    }

    /// Edge count of the inner `G_level`.
    pub fn stage_edge_count(&self) -> usize {
        self.m + 2 * self.n + 4 * (self.level - 1)
    }
}

struct Draft {
    edges: Vec<(NodeId, NodeId, f64, f64)>,
    seed: u64,
}

impl Draft {
    fn edge(&mut self, tail: NodeId, head: NodeId, capacity: f64, (lo, hi): (f64, f64)) {
        let cost = uniform_cost(self.seed, self.edges.len(), lo, hi);
        self.edges.push((tail, head, capacity, cost));
    }

    fn finish(
        &self,
        node_count: usize,
        source: NodeId,
        sink: NodeId,
        z: f64,
        phi: f64,
    ) -> Result<TransformedNetwork, NetworkError> {
        let mut b = FlowNetwork::builder(node_count);
        b.cost_scale(CostScale::Phi(phi));
        for &(t, h, u, c) in &self.edges {
            b.edge(t, h, u, c);
        }
        b.balance(source, z).balance(sink, -z);
        TransformedNetwork::with_terminals(b.build()?, source, sink)
    }
}

/// Edges of `G_1`, then of each extension up to `G_level`, in index order.
fn stage_draft(n: usize, m: usize, level: usize, seed: u64) -> (Draft, usize, Vec<(NodeId, NodeId)>) {
    let mut d = Draft { edges: Vec::new(), seed };
    let (s1, t1) = (0, 2 * n + 1);
    let pairs: Vec<(usize, usize)> = (0..m).map(|k| (k / n, k % n)).collect();
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    for &(i, j) in &pairs {
        outdeg[i] += 1;
        indeg[j] += 1;
    }
    for (i, &deg) in outdeg.iter().enumerate() {
        d.edge(s1, 1 + i, deg as f64, (0.0, 1.0));
    }
    for &(i, j) in &pairs {
        d.edge(1 + i, 1 + n + j, 1.0, (7.0, 9.0));
    }
    for (j, &deg) in indeg.iter().enumerate() {
        d.edge(1 + n + j, t1, deg as f64, (0.0, 1.0));
    }
    let mut terminals = vec![(s1, t1)];
    let mut nodes = 2 * n + 2;
    for i in 1..level {
        let (si, ti) = terminals[i - 1];
        let (sn, tn) = (nodes, nodes + 1);
        nodes += 2;
        let cap = max_flow_of_stage(m, i);
        let p = 2f64.powi(i as i32 + 3);
        d.edge(sn, si, cap, (0.0, 1.0));
        d.edge(ti, tn, cap, (0.0, 1.0));
        d.edge(sn, ti, cap, (p - 1.0, p + 1.0));
        d.edge(si, tn, cap, (p - 1.0, p + 1.0));
        terminals.push((sn, tn));
    }
    (d, nodes, terminals)
}

/// `G_1` on `n` nodes per side with `m` row-major `U × W` edges.
pub fn build_g1(n: usize, m: usize, seed: u64) -> Result<LowerBoundNetwork, LowerBoundError> {
    build_stage(n, m, 1, seed)
}

/// `G_level`, built from `G_1` by `level - 1` extensions.
pub fn build_stage(n: usize, m: usize, level: usize, seed: u64) -> Result<LowerBoundNetwork, LowerBoundError> {
    check_nm(n, m)?;
    if level == 0 || level > 60 {
        return Err(LowerBoundError::BadParams(format!("stage {level} outside 1..=60")));
    }
    let (draft, nodes, terminals) = stage_draft(n, m, level, seed);
    let (s, t) = terminals[level - 1];
    let phi = 2f64.powi(level as i32 + 3);
    let instance = draft.finish(nodes, s, t, max_flow_of_stage(m, level), phi)?;
    Ok(LowerBoundNetwork { instance, n, m, level, terminals, chains: None, seed })
}

/// `G_{i+1}` from `G_i`, drawing only the four new edge costs.
pub fn extend(g: &LowerBoundNetwork) -> Result<LowerBoundNetwork, LowerBoundError> {
    if g.chains.is_some() {
        return Err(LowerBoundError::BadParams("cannot extend the full network".into()));
    }
    build_stage(g.n, g.m, g.level + 1, g.seed)
}

/// The full network `G` with global source and sink.
pub fn build_full(params: &LowerBoundParams, seed: u64) -> Result<LowerBoundNetwork, LowerBoundError> {
    let (k, big_m) = (params.k, params.big_m);
    let (mut d, mut nodes, terminals) = stage_draft(params.n, params.m, k, seed);
    let (sk, tk) = terminals[k - 1];
    let mut chain = || {
        let c: Vec<NodeId> = (nodes..nodes + big_m).collect();
        nodes += big_m;
        c
    };
    let (a, b, c, dd) = (chain(), chain(), chain(), chain());
    let (s, t) = (nodes, nodes + 1);
    nodes += 2;

    let nk = params.n_i(k);
    let unbounded = nk * 4.0 * big_m as f64 + 1.0;
    let long = {
        let p = 2f64.powi(k as i32 + 5);
        (p - 1.0, p)
    };
    let half = {
        let p = 2f64.powi(k as i32 + 4);
        (p - 1.0, p)
    };
    let fan = (0.0, 1.0);

    for i in 1..big_m {
        d.edge(a[i], a[i - 1], unbounded, long);
    }
    for &v in &a {
        d.edge(s, v, nk, fan);
    }
    d.edge(a[0], sk, unbounded, half);

    for i in 1..big_m {
        d.edge(b[i], b[i - 1], unbounded, long);
    }
    for &v in &b {
        d.edge(s, v, nk, fan);
    }
    d.edge(b[0], tk, unbounded, long);

    for i in 1..big_m {
        d.edge(c[i - 1], c[i], unbounded, long);
    }
    for &v in &c {
        d.edge(v, t, nk, fan);
    }
    d.edge(sk, c[0], unbounded, long);

    for i in 1..big_m {
        d.edge(dd[i - 1], dd[i], unbounded, long);
    }
    for &v in &dd {
        d.edge(v, t, nk, fan);
    }
    d.edge(tk, dd[0], unbounded, half);

    let z = 2.0 * big_m as f64 * nk;
    let instance = d.finish(nodes, s, t, z, params.phi)?;
    Ok(LowerBoundNetwork {
        instance,
        n: params.n,
        m: params.m,
        level: k,
        terminals,
        chains: Some(Chains { a, b, c, d: dd }),
        seed,
    })
}

/// The full network for `φ ≥ 64`, or `G_1` below that.
pub fn build_for_phi(n: usize, m: usize, phi: f64, seed: u64) -> Result<LowerBoundNetwork, LowerBoundError> {
    if phi < 64.0 {
        build_g1(n, m, seed)
    } else {
        build_full(&LowerBoundParams::new(n, m, phi)?, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_parameters() {
        let p = LowerBoundParams::new(8, 16, 64.0).unwrap();
        assert_eq!((p.k, p.big_m), (1, 8));
        assert_eq!(p.predicted_nodes(), 52);
        assert_eq!(p.predicted_edges(), 96);
        assert_eq!(p.predicted_steps(), 256);
        let p = LowerBoundParams::new(8, 16, 128.0).unwrap();
        assert_eq!((p.k, p.big_m, p.predicted_steps()), (2, 8, 512));
        let p = LowerBoundParams::new(8, 16, 100.0).unwrap();
        assert_eq!((p.k, p.big_m), (1, 8));
        assert_eq!(p.alpha(1), 64.0 - 32.0 - 1.0);
        assert_eq!(p.beta(2), 128.0 - 2.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(LowerBoundParams::new(8, 7, 64.0).is_err());
        assert!(LowerBoundParams::new(8, 65, 64.0).is_err());
        assert!(LowerBoundParams::new(8, 16, 32.0).is_err());
        assert!(LowerBoundParams::new(4, 4, 64.0).is_err());
        let p = LowerBoundParams::relaxed(4, 4, 64.0).unwrap();
        assert_eq!((p.k, p.big_m, p.predicted_steps()), (1, 4, 32));
    }

    #[test]
    fn g1_layout() {
        let g = build_g1(3, 7, 1).unwrap();
        let net = g.instance.network();
        assert_eq!(net.node_count(), 8);
        assert_eq!(net.edge_count(), 13);
        assert_eq!(g.instance.z(), 7.0);
        // Row-major: u_1 and u_2 get three edges, u_3 one.
        assert_eq!(net.edge(0).capacity, 3.0);
        assert_eq!(net.edge(2).capacity, 1.0);
        for e in &net.edges()[3..10] {
            assert!((7.0..=9.0).contains(&e.cost) && e.capacity == 1.0);
        }
    }

    #[test]
    fn extension_preserves_inner_costs() {
        let g1 = build_g1(3, 5, 9).unwrap();
        let g2 = extend(&g1).unwrap();
        let g3 = extend(&g2).unwrap();
        assert_eq!(g3.instance.node_count(), 8 + 4);
        assert_eq!(g3.instance.edge_count(), 11 + 8);
        assert_eq!(&g3.instance.network().edges()[..11], g1.instance.network().edges());
        assert_eq!(g3.instance.z(), 20.0);
        let e = g3.instance.edge(11 + 2);
        assert!((15.0..=17.0).contains(&e.cost));
    }

    #[test]
    fn full_network_counts_match_prediction() {
        for (n, m, phi) in [(8, 16, 64.0), (8, 16, 128.0), (8, 12, 200.0)] {
            let p = LowerBoundParams::new(n, m, phi).unwrap();
            let g = build_full(&p, 3).unwrap();
            assert_eq!(g.instance.node_count(), p.predicted_nodes());
            assert_eq!(g.instance.edge_count(), p.predicted_edges());
            assert_eq!(g.instance.z(), 2.0 * p.big_m as f64 * p.n_i(p.k));
        }
    }

    #[test]
    fn small_phi_falls_back_to_g1() {
        let g = build_for_phi(3, 7, 10.0, 0).unwrap();
        assert_eq!(g.level, 1);
        assert!(g.chains.is_none());
    }
}
