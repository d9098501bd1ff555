//! The exponential lower-bound family: build G for (n, m, φ) and confirm
//! that SSP needs exactly m · 2^(k-1) · 2M augmentations.

use sspflow::lowerbound::{build_stage, verify_count, verify_stage, LowerBoundParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for level in 1..=5 {
        let report = verify_stage(&build_stage(6, 12, level, 0)?)?;
        println!("G_{level}: {} augmentations", report.steps);
    }
    for (n, m, phi) in [(8, 16, 64.0), (8, 16, 128.0), (10, 20, 1024.0)] {
        let params = LowerBoundParams::new(n, m, phi)?;
        let report = verify_count(&params, 0)?;
        println!(
            "n={n} m={m} φ={phi}: k={} M={} -> {} augmentations on {} nodes / {} edges",
            params.k,
            params.big_m,
            report.steps,
            params.predicted_nodes(),
            params.predicted_edges()
        );
    }
    Ok(())
}
