//! Solve a small min-cost flow problem and inspect every augmentation.

use sspflow::network::{FlowNetwork, TransformedNetwork};
use sspflow::solver::{solve, SspOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two routes from 0 to 3 plus a shortcut that SSP later cancels.
    let mut b = FlowNetwork::builder(4);
    b.edge(0, 1, 1.0, 0.1);
    b.edge(1, 2, 1.0, 0.1);
    b.edge(2, 3, 1.0, 0.1);
    b.edge(0, 2, 1.0, 0.5);
    b.edge(1, 3, 1.0, 0.5);
    b.balance(0, 2.0).balance(3, -2.0);
    let instance = TransformedNetwork::with_terminals(b.build()?, 0, 3)?;

    let trace = solve(&instance, &SspOptions::default())?;
    for step in &trace.steps {
        let arcs: Vec<String> = step.arcs.iter().map(|a| format!("{}{}", if a.is_forward() { "+" } else { "-" }, a.edge)).collect();
        println!("P{} nodes={:?} arcs=[{}] length={} amount={}", step.index, step.nodes, arcs.join(" "), step.length, step.amount);
    }
    println!("outcome {:?}, cost {}", trace.outcome, trace.final_flow.cost(&instance));
    print!("{}", trace.to_csv());
    Ok(())
}
