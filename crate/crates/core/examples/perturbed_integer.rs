//! Integer costs in 1..=C with uniform noise, normalized to [0, 1].

use sspflow::generators::{perturbed_integer, random_topology, Shape};
use sspflow::network::transform;
use sspflow::solver::{max_flow_value, solve, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let topology = random_topology(8, 24, Shape::Erdos, 1)?;
    for c in [1, 2, 4, 8, 16] {
        let p = perturbed_integer(&topology, c, 1)?;
        let instance = transform(&p.network)?;
        let instance = instance.with_z(max_flow_value(&instance)?);
        let trace = solve(&instance, &SspOptions::default())?;
        let raw_cost = trace.final_flow.cost(&instance) * p.scale;
        println!("C={c:>2}: φ={:>4}, {} augmentations, raw cost {raw_cost:.3}", p.effective_phi(1.0), trace.len());
    }
    Ok(())
}
