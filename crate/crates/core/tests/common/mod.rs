//! Random small instances shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sspflow::generators::{random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use sspflow::network::{transform, TransformedNetwork};

/// A smoothed instance with at most `max_n` original nodes, drawn from a
/// mix of shapes, densities and φ values. All parameters follow from `seed`.
pub fn small_instance(seed: u64, max_n: usize) -> TransformedNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    loop {
        let n = rng.gen_range(2..=max_n);
        let (shape, m) = match rng.gen_range(0..3) {
            0 => (Shape::Erdos, rng.gen_range(1..=n * (n - 1) / 2)),
            1 => {
                let side = (n / 2).max(1);
                (Shape::Bipartite, rng.gen_range(1..=side * side))
            }
            _ if n >= 3 => {
                let depth = rng.gen_range(2..=n.min(4));
                (Shape::Layered { depth }, rng.gen_range(1..=n))
            }
            _ => continue,
        };
        let n = if shape == Shape::Bipartite { (n / 2).max(1) } else { n };
        let Ok(topo) = random_topology(n, m, shape, rng.gen()) else { continue };
        let phi = [1.0, 2.0, 5.0, 20.0][rng.gen_range(0..4)];
        let spec = if rng.gen_bool(0.25) {
            SmoothedCostSpec::new(phi, Convention::Unit)
        } else {
            SmoothedCostSpec::random_placement(phi, Convention::Unit, topo.edge_count(), rng.gen())
        };
        let net = sample_costs(&topo, &spec, rng.gen()).expect("valid spec");
        return transform(&net).expect("balanced topology");
    }
}
