//! Recover an intermediate SSP flow from a single good arc and a length
//! threshold, without reading that arc's cost.

use sspflow::analysis::{check_reconstruct, classify, reconstruct};
use sspflow::generators::{random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use sspflow::network::transform;
use sspflow::solver::{solve, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let topology = random_topology(7, 16, Shape::Erdos, 21)?;
    let spec = SmoothedCostSpec::random_placement(2.0, Convention::Unit, topology.edge_count(), 21);
    let instance = transform(&sample_costs(&topology, &spec, 21)?)?;

    let trace = solve(&instance, &SspOptions::retaining_flows())?;
    let flows = trace.flows(&instance);
    let classes = classify(&instance, &trace)?;
    if let Some(i) = (1..trace.len()).find(|&i| classes.steps[i].is_good) {
        let arc = classes.steps[i].good_arcs[0];
        let (lo, hi) = (trace.steps[i - 1].length, trace.steps[i].length);
        let got = reconstruct(&instance, arc, 0.5 * (lo + hi))?;
        println!("f_{i} from arc {arc:?}: recovered = {}, after {} augmentations", got.flow == flows[i], got.augmentations);
    }

    let check = check_reconstruct(&instance, |e| instance.edge(e).cost * 0.5)?;
    println!("{} triples checked, all recovered: {}", check.triples, check.passed());
    Ok(())
}
