//! Smoothed instances: one interval of width 1/φ per edge, cost drawn
//! uniformly inside it. Compares the three interval presets.

use sspflow::experiment::step_bound;
use sspflow::experiment::{Cell, Model};
use sspflow::generators::{random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use sspflow::network::transform;
use sspflow::solver::{max_flow_value, solve, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, m, phi) = (10, 16, 20.0);
    let topology = random_topology(n, m, Shape::Layered { depth: 4 }, 3)?;
    let presets = [
        ("full", SmoothedCostSpec::new(phi, Convention::Unit)),
        ("random", SmoothedCostSpec::random_placement(phi, Convention::Unit, m, 3)),
        ("worst-ish", SmoothedCostSpec::worst_ish(&topology, phi, Convention::Unit)),
    ];
    for (name, spec) in presets {
        spec.validate(m)?;
        let instance = transform(&sample_costs(&topology, &spec, 3)?)?;
        let instance = instance.with_z(max_flow_value(&instance)?);
        let trace = solve(&instance, &SspOptions::default())?;
        let bound = step_bound(&Cell { model: Model::Smoothed, n, m, phi }, &instance);
        println!("{name:>9}: {} augmentations (bound {bound})", trace.len());
    }
    print!("{}", SmoothedCostSpec::worst_ish(&topology, phi, Convention::Unit).to_text());
    Ok(())
}
