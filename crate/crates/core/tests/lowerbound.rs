use sspflow::lowerbound::{build_for_phi, build_full, build_stage, extend, verify_count, LowerBoundParams};

#[test]
fn full_network_matches_predicted_size() {
    for (n, m, phi) in [(8, 16, 64.0), (8, 16, 128.0), (6, 20, 64.0), (8, 64, 200.0)] {
        let p = LowerBoundParams::new(n, m, phi).unwrap();
        let g = build_full(&p, 3).unwrap();
        assert_eq!(g.instance.node_count(), p.predicted_nodes(), "({n},{m},{phi})");
        assert_eq!(g.instance.network().original_edge_count(), p.predicted_edges(), "({n},{m},{phi})");
        assert_eq!(g.instance.z(), 2.0 * p.big_m as f64 * p.n_i(p.k));
    }
}

#[test]
fn extension_reuses_inner_costs() {
    let g2 = build_stage(5, 12, 2, 7).unwrap();
    let g3 = extend(&g2).unwrap();
    let inner = g2.stage_edge_count() - 4;
    for e in 0..inner {
        assert_eq!(g2.instance.edge(e).cost, g3.instance.edge(e).cost);
    }
    assert_eq!(g3.level, 3);
}

#[test]
fn below_64_falls_back_to_g1() {
    let g = build_for_phi(4, 8, 32.0, 0).unwrap();
    assert_eq!(g.level, 1);
    assert!(g.chains.is_none());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(LowerBoundParams::new(4, 3, 64.0).is_err());
    assert!(LowerBoundParams::new(4, 17, 64.0).is_err());
    assert!(LowerBoundParams::new(4, 8, 63.9).is_err());
    assert!(LowerBoundParams::new(4, 4, 64.0).is_err());
    assert!(LowerBoundParams::relaxed(4, 4, 64.0).is_ok());
}

#[test]
fn deeper_family_counts_exactly() {
    let p = LowerBoundParams::new(9, 12, 256.0).unwrap();
    let r = verify_count(&p, 5).unwrap();
    assert_eq!(r.steps, p.predicted_steps());
    assert!(r.lengths.windows(2).all(|w| w[0] < w[1]));
}
