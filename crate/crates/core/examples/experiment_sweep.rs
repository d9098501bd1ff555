//! A small parallel sweep over (n, m, φ) comparing mean augmentation counts
//! with 2mnφ + 2n.

use sspflow::experiment::{ExperimentPlan, Model};

fn main() {
    let plan = ExperimentPlan::grid(Model::Smoothed, &[6, 10], &[20, 30], &[1.0, 10.0, 100.0], 20, 0);
    if let Err(e) = plan.validate() {
        eprintln!("{e}");
        std::process::exit(1);
    }
    let results = plan.run();
    print!("{}", results.summary_csv());
    for f in &results.failures {
        eprintln!("{}: trial {} failed: {}", results.cells[f.cell], f.trial, f.message);
    }
}
