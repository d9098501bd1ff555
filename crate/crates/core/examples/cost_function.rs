//! Read the piecewise-linear cost function off an SSP run and emit CSV plus
//! a gnuplot script.

use sspflow::generators::{random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use sspflow::network::transform;
use sspflow::solver::{cost_function, solve, CostFunction, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let topology = random_topology(8, 20, Shape::Erdos, 42)?;
    let spec = SmoothedCostSpec::random_placement(5.0, Convention::Unit, topology.edge_count(), 42);
    let instance = transform(&sample_costs(&topology, &spec, 42)?)?;

    let trace = solve(&instance, &SspOptions::default())?;
    let cf = cost_function(&trace);
    println!("{} augmentations, {} linear pieces, convex: {}", trace.len(), cf.slopes().len(), cf.is_convex());
    let half = cf.max_value() / 2.0;
    println!("C({half}) = {:?}", cf.eval(half));
    print!("{}", cf.to_csv());
    print!("{}", CostFunction::gnuplot_script("costfn.csv"));
    Ok(())
}
