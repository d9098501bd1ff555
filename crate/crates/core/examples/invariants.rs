//! Run the structural checkers on a random instance: lemma report,
//! good/bad flow classification, near-tie diagnostics and the oracle solver.

use sspflow::analysis::{check_lemmas, classify, gap_report, reference_solve, verify_optimality};
use sspflow::generators::{random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use sspflow::network::transform;
use sspflow::solver::{solve, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let topology = random_topology(5, 12, Shape::Bipartite, 8)?;
    let spec = SmoothedCostSpec::random_placement(3.0, Convention::Unit, topology.edge_count(), 8);
    let instance = transform(&sample_costs(&topology, &spec, 8)?)?;

    let trace = solve(&instance, &SspOptions::retaining_flows())?;
    let report = check_lemmas(&instance, &trace)?;
    print!("{report}");
    print!("{}", report.to_csv());

    let classes = classify(&instance, &trace)?;
    println!("{} good flows, {} bad flows", classes.good_count(), classes.bad_count());
    let optimal = trace.flows(&instance).iter().all(|f| verify_optimality(&instance, f).unwrap_or(false));
    println!("every intermediate flow optimal: {optimal}");

    let gaps = gap_report(&instance, 50_000)?;
    println!("smallest gap between path lengths: {:e}", gaps.min_path_length_gap);
    println!("smallest |cycle cost| over {} cycles: {:e}", gaps.cycles_examined, gaps.min_cycle_cost);

    let oracle = reference_solve(&instance, &SspOptions::default())?;
    let same = oracle.steps.iter().zip(&trace.steps).all(|(a, b)| a.arcs == b.arcs);
    println!("Bellman-Ford oracle agrees: {}", same && oracle.len() == trace.len());
    Ok(())
}
