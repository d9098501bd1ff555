use super::{EdgeId, NetworkError, TransformedNetwork};

/// Relative slack for capacity and conservation checks on floating point flows.
pub(crate) const FEASIBILITY_TOLERANCE: f64 = 1e-9;

/// Per-edge flow assignment together with its value `|f|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    values: Vec<f64>,
    value: f64,
}

impl Flow {
    /// The empty flow `f_0`.
    pub fn zero(edge_count: usize) -> Flow {
        Flow { values: vec![0.0; edge_count], value: 0.0 }
    }

    /// Builds a flow from per-edge values; `|f|` is net outflow of the source.
    pub fn from_values(instance: &TransformedNetwork, values: Vec<f64>) -> Flow {
        let value = net_outflow(instance, &values);
        Flow { values, value }
    }

    pub(crate) fn from_parts(values: Vec<f64>, value: f64) -> Flow {
        Flow { values, value }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, e: EdgeId) -> f64 {
        self.values[e]
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `c(f) = Σ f_e c_e`.
    pub fn cost(&self, instance: &TransformedNetwork) -> f64 {
        instance
            .network()
            .edges()
            .iter()
            .zip(&self.values)
            .map(|(e, f)| e.cost * f)
            .sum()
    }

    /// Capacity bounds, conservation at inner nodes and the recorded value.
    pub fn check(&self, instance: &TransformedNetwork) -> Result<(), NetworkError> {
        let net = instance.network();
        if self.values.len() != net.edge_count() {
            return Err(NetworkError::InfeasibleFlow(format!(
                "{} values for {} edges",
                self.values.len(),
                net.edge_count()
            )));
        }
        let scale = 1.0 + instance.source_capacity().abs();
        let tol = FEASIBILITY_TOLERANCE * scale;
        let mut excess = vec![0.0; net.node_count()];
        for (id, (edge, &f)) in net.edges().iter().zip(&self.values).enumerate() {
            if !(f >= 0.0) || f > edge.capacity {
                return Err(NetworkError::InfeasibleFlow(format!(
                    "edge {id}: flow {f} outside [0, {}]",
                    edge.capacity
                )));
            }
            excess[edge.tail] -= f;
            excess[edge.head] += f;
        }
        for (v, &x) in excess.iter().enumerate() {
            if v != instance.source() && v != instance.sink() && x.abs() > tol {
                return Err(NetworkError::InfeasibleFlow(format!(
                    "node {v}: conservation violated by {x}"
                )));
            }
        }
        let out = -excess[instance.source()];
        if (out - self.value).abs() > tol {
            return Err(NetworkError::InfeasibleFlow(format!(
                "recorded value {} differs from source outflow {out}",
                self.value
            )));
        }
        if self.value > instance.z() + tol {
            return Err(NetworkError::InfeasibleFlow(format!(
                "value {} exceeds z = {}",
                self.value,
                instance.z()
            )));
        }
        Ok(())
    }
}

fn net_outflow(instance: &TransformedNetwork, values: &[f64]) -> f64 {
    let s = instance.source();
    instance
        .network()
        .edges()
        .iter()
        .zip(values)
        .map(|(e, &f)| {
            if e.tail == s {
                f
            } else if e.head == s {
                -f
            } else {
                0.0
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::FlowNetwork;

    fn path_instance() -> TransformedNetwork {
        let mut b = FlowNetwork::builder(3);
        b.edge(0, 1, 2.0, 0.3);
        b.edge(1, 2, 1.0, 0.4);
        b.balance(0, 1.0).balance(2, -1.0);
        TransformedNetwork::with_terminals(b.build().unwrap(), 0, 2).unwrap()
    }

    #[test]
    fn value_and_cost() {
        let inst = path_instance();
        let f = Flow::from_values(&inst, vec![1.0, 1.0]);
        assert_eq!(f.value(), 1.0);
        assert!((f.cost(&inst) - 0.7).abs() < 1e-15);
        f.check(&inst).unwrap();
    }

    #[test]
    fn detects_violations() {
        let inst = path_instance();
        assert!(Flow::from_values(&inst, vec![1.0, 0.5]).check(&inst).is_err());
        assert!(Flow::from_values(&inst, vec![2.0, 2.0]).check(&inst).is_err());
        assert!(Flow::from_values(&inst, vec![-0.5, -0.5]).check(&inst).is_err());
    }
}
