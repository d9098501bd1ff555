use rand::Rng;

use super::{edge_rng, GeneratorError, Purpose, Topology};
use crate::network::{CostScale, FlowNetwork};

/// An instance from the perturbed-integer model.
///
/// `network` holds normalized costs in `[0, 1]`; multiplying a cost or path
/// length by `scale` recovers the raw value.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedInstance {
    pub network: FlowNetwork,
    pub integers: Vec<u32>,
    pub raw_costs: Vec<f64>,
    pub scale: f64,
}

impl PerturbedInstance {
    /// Density bound of the normalized costs, `(C + 1) / (2a)`.
    pub fn effective_phi(&self, amplitude: f64) -> f64 {
        self.scale / (2.0 * amplitude)
    }
}

/// Integer costs drawn uniformly from `1..=c`, then perturbed with
/// `U(-1, 1)` noise.
pub fn perturbed_integer(topology: &Topology, c: u32, seed: u64) -> Result<PerturbedInstance, GeneratorError> {
    let integers: Vec<u32> =
        (0..topology.edge_count()).map(|e| edge_rng(seed, Purpose::Integer, e).gen_range(1..=c.max(1))).collect();
    perturb_integers(topology, &integers, c, 1.0, seed)
}

/// `raw_e = integers_e + U(-amplitude, amplitude)`, normalized by `C + 1`.
/// With `amplitude ≤ 1` the raw costs stay inside `[0, C + 1]`.
pub fn perturb_integers(
    topology: &Topology,
    integers: &[u32],
    c: u32,
    amplitude: f64,
    seed: u64,
) -> Result<PerturbedInstance, GeneratorError> {
    if c == 0 || integers.len() != topology.edge_count() || integers.iter().any(|&k| k == 0 || k > c) {
        return Err(GeneratorError::InfeasibleShape(format!(
            "need one integer cost in 1..={c} per edge ({} edges)",
            topology.edge_count()
        )));
    }
    if !(0.0..=1.0).contains(&amplitude) {
        return Err(GeneratorError::InvalidInterval {
            edge: 0,
            lo: -amplitude,
            hi: amplitude,
            reason: "noise amplitude must lie in [0, 1]".into(),
        });
    }
    let scale = f64::from(c) + 1.0;
    let raw_costs: Vec<f64> = integers
        .iter()
        .enumerate()
        .map(|(e, &k)| {
            let noise = if amplitude == 0.0 {
                0.0
            } else {
                edge_rng(seed, Purpose::Noise, e).gen_range(-amplitude..=amplitude)
            };
            f64::from(k) + noise
        })
        .collect();
    let normalized: Vec<f64> = raw_costs.iter().map(|r| (r / scale).clamp(0.0, 1.0)).collect();
    let network = topology.with_costs(&normalized, CostScale::Unit)?;
    Ok(PerturbedInstance { network, integers: integers.to_vec(), raw_costs, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_topology, Shape};

    #[test]
    fn costs_stay_near_their_integers() {
        let t = random_topology(8, 24, Shape::Erdos, 1).unwrap();
        let p = perturbed_integer(&t, 4, 7).unwrap();
        assert_eq!(p.scale, 5.0);
        assert_eq!(p.effective_phi(1.0), 2.5);
        for ((&k, &raw), edge) in p.integers.iter().zip(&p.raw_costs).zip(p.network.edges()) {
            assert!((1..=4).contains(&k));
            assert!((raw - f64::from(k)).abs() <= 1.0);
            assert!((edge.cost * p.scale - raw).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_noise_keeps_integers() {
        let t = random_topology(4, 5, Shape::Erdos, 2).unwrap();
        let p = perturb_integers(&t, &[1, 1, 2, 1, 1], 2, 0.0, 0).unwrap();
        assert_eq!(p.raw_costs, vec![1.0, 1.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn c_one_noise_is_additive() {
        let t = random_topology(3, 2, Shape::Erdos, 0).unwrap();
        let p = perturb_integers(&t, &[1, 1], 1, 1.0, 11).unwrap();
        for raw in &p.raw_costs {
            assert!((0.0..=2.0).contains(raw));
        }
        assert!(perturb_integers(&t, &[1, 3], 2, 1.0, 0).is_err());
    }
}
