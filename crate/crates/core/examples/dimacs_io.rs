//! Write an instance in the text format and read it back.

use sspflow::network::{into_single_commodity, read_instance, write_instance, CostScale, FlowNetwork};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut b = FlowNetwork::builder(3);
    b.cost_scale(CostScale::Phi(8.0));
    b.edge(0, 1, 4.0, 1.25);
    b.edge(1, 2, 4.0, 6.5);
    b.edge(0, 2, 2.0, 7.75);
    b.balance(0, 5.0).balance(2, -5.0);
    let text = write_instance(&b.build()?);
    print!("{text}");

    let parsed = read_instance(&text)?;
    assert_eq!(write_instance(&parsed), text);
    let instance = into_single_commodity(parsed)?;
    println!("transformed: {} nodes, {} edges, z = {}", instance.node_count(), instance.edge_count(), instance.z());
    Ok(())
}
