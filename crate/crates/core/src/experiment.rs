//! Batched SSP runs over a parameter grid, executed in parallel with
//! deterministic per-trial seeds.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::generators::{perturbed_integer, random_topology, sample_costs, Convention, Shape, SmoothedCostSpec, Topology};
use crate::lowerbound::{build_for_phi, LowerBoundNetwork};
use crate::network::{transform, TransformedNetwork};
use crate::solver::{max_flow_value, solve, SspOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Uniform costs on random minimal-width intervals (unit range).
    Smoothed,
    /// Integer costs in `1..=C` plus `U(-1, 1)` noise; the φ axis carries `C`.
    PerturbedInteger,
    /// The lower-bound family; the φ axis is its φ.
    LowerBound,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Smoothed => "smoothed",
            Model::PerturbedInteger => "perturbed-integer",
            Model::LowerBound => "lowerbound",
        })
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Model, String> {
        match s {
            "smoothed" => Ok(Model::Smoothed),
            "perturbed-integer" => Ok(Model::PerturbedInteger),
            "lowerbound" => Ok(Model::LowerBound),
            _ => Err(format!("unknown model '{s}' (smoothed, perturbed-integer, lowerbound)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub phi: f64,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/n={}/m={}/phi={}", self.model, self.n, self.m, self.phi)
    }
}

/// Erdős-style digraph when `m` fits without 2-cycles, bipartite with `n`
/// nodes per side otherwise.
pub fn smoothed_topology(n: usize, m: usize, seed: u64) -> Result<Topology, String> {
    let shape = if m <= n * n.saturating_sub(1) / 2 { Shape::Erdos } else { Shape::Bipartite };
    random_topology(n, m, shape, seed).map_err(|e| e.to_string())
}

/// The instance a trial runs on, with `z` set to its maximum flow value.
pub fn trial_instance(cell: &Cell, seed: u64) -> Result<TransformedNetwork, String> {
    let instance = match cell.model {
        Model::Smoothed => {
            let topo = smoothed_topology(cell.n, cell.m, seed)?;
            let spec = SmoothedCostSpec::random_placement(cell.phi, Convention::Unit, topo.edge_count(), seed);
            let net = sample_costs(&topo, &spec, seed).map_err(|e| e.to_string())?;
            transform(&net).map_err(|e| e.to_string())?
        }
        Model::PerturbedInteger => {
            let topo = smoothed_topology(cell.n, cell.m, seed)?;
            let c = cell.phi as u32;
            let p = perturbed_integer(&topo, c, seed).map_err(|e| e.to_string())?;
            transform(&p.network).map_err(|e| e.to_string())?
        }
        Model::LowerBound => {
            let g: LowerBoundNetwork = build_for_phi(cell.n, cell.m, cell.phi, seed).map_err(|e| e.to_string())?;
            g.instance
        }
    };
    let z = max_flow_value(&instance).map_err(|e| e.to_string())?;
    Ok(instance.with_z(z))
}

/// `2mnφ + 2n` for the instance actually generated. Auxiliary edges and the
/// two terminals are not counted; for the perturbed model φ is the density
/// bound `(C + 1) / 2` of the normalized costs.
pub fn step_bound(cell: &Cell, instance: &TransformedNetwork) -> f64 {
    let net = instance.network();
    let n = instance.base_node_count() as f64;
    let m = net.original_edge_count() as f64;
    let phi = match cell.model {
        Model::PerturbedInteger => (cell.phi + 1.0) / 2.0,
        _ => cell.phi,
    };
    2.0 * m * n * phi + 2.0 * n
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub cells: Vec<Cell>,
    pub trials: usize,
    pub seed_base: u64,
    /// Record wall-clock runtimes. Off by default so output is byte-stable.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub cell: usize,
    pub trial: usize,
    pub steps: usize,
    pub runtime: Option<Duration>,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialFailure {
    pub cell: usize,
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResults {
    pub cells: Vec<Cell>,
    pub rows: Vec<TrialRow>,
    pub failures: Vec<TrialFailure>,
}

impl ExperimentPlan {
    /// Cartesian grid `ns × ms × phis` for one model.
    pub fn grid(model: Model, ns: &[usize], ms: &[usize], phis: &[f64], trials: usize, seed_base: u64) -> Self {
        let cells = ns
            .iter()
            .flat_map(|&n| ms.iter().flat_map(move |&m| phis.iter().map(move |&phi| Cell { model, n, m, phi })))
            .collect();
        ExperimentPlan { cells, trials, seed_base, timing: false }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        for cell in &self.cells {
            let ok = match cell.model {
                Model::Smoothed => cell.phi >= 1.0 && cell.n >= 1 && cell.m <= cell.n * cell.n,
                Model::PerturbedInteger => {
                    cell.phi >= 1.0 && cell.phi.fract() == 0.0 && cell.n >= 1 && cell.m <= cell.n * cell.n
                }
                Model::LowerBound => cell.n >= 1 && cell.m >= cell.n && cell.m <= cell.n * cell.n,
            };
            if !ok {
                return Err(format!("cell {cell} violates the model's preconditions"));
            }
        }
        Ok(())
    }

    pub fn trial_seed(&self, cell: usize, trial: usize) -> u64 {
        self.seed_base.wrapping_add(((cell as u64) << 32) | trial as u64)
    }

    pub fn run(&self) -> ExperimentResults {
        let jobs: Vec<(usize, usize)> =
            (0..self.cells.len()).flat_map(|c| (0..self.trials).map(move |t| (c, t))).collect();
        let outcomes: Vec<Result<TrialRow, TrialFailure>> = jobs
            .par_iter()
            .map(|&(c, t)| {
                self.run_trial(c, t).map_err(|message| TrialFailure { cell: c, trial: t, message })
            })
            .collect();
        let mut rows = Vec::new();
        let mut failures = Vec::new();
        for o in outcomes {
            match o {
                Ok(r) => rows.push(r),
                Err(f) => failures.push(f),
            }
        }
        ExperimentResults { cells: self.cells.clone(), rows, failures }
    }

    fn run_trial(&self, cell: usize, trial: usize) -> Result<TrialRow, String> {
        let spec = &self.cells[cell];
        let instance = trial_instance(spec, self.trial_seed(cell, trial))?;
        let options = SspOptions { record_distances: false, ..SspOptions::default() };
        let start = Instant::now();
        let trace = solve(&instance, &options).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        Ok(TrialRow {
            cell,
            trial,
            steps: trace.len(),
            runtime: self.timing.then_some(elapsed),
            bound: step_bound(spec, &instance),
        })
    }
}

impl ExperimentResults {
    pub fn mean_steps(&self, cell: usize) -> Option<f64> {
        let steps: Vec<usize> = self.rows.iter().filter(|r| r.cell == cell).map(|r| r.steps).collect();
        (!steps.is_empty()).then(|| steps.iter().sum::<usize>() as f64 / steps.len() as f64)
    }

    pub fn mean_bound(&self, cell: usize) -> Option<f64> {
        let b: Vec<f64> = self.rows.iter().filter(|r| r.cell == cell).map(|r| r.bound).collect();
        (!b.is_empty()).then(|| b.iter().sum::<f64>() / b.len() as f64)
    }

    /// Columns `cell,trial,steps,runtime,bound_2mnphi_plus_2n,ratio`; runtime
    /// is in seconds, or `-` when not recorded.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cell,trial,steps,runtime,bound_2mnphi_plus_2n,ratio\n");
        for r in &self.rows {
            let runtime = r.runtime.map_or_else(|| "-".to_string(), |d| format!("{:.6}", d.as_secs_f64()));
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.cells[r.cell],
                r.trial,
                r.steps,
                runtime,
                r.bound,
                r.steps as f64 / r.bound
            );
        }
        out
    }

    /// Per-cell means: `cell,trials,mean_steps,bound_2mnphi_plus_2n,ratio`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("cell,trials,mean_steps,bound_2mnphi_plus_2n,ratio\n");
        for (i, cell) in self.cells.iter().enumerate() {
            if let (Some(mean), Some(bound)) = (self.mean_steps(i), self.mean_bound(i)) {
                let trials = self.rows.iter().filter(|r| r.cell == i).count();
                let _ = writeln!(out, "{cell},{trials},{mean},{bound},{}", mean / bound);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_names_round_trip() {
        for m in [Model::Smoothed, Model::PerturbedInteger, Model::LowerBound] {
            assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let plan = ExperimentPlan::grid(Model::Smoothed, &[6], &[12, 18], &[1.0, 10.0], 3, 99);
        plan.validate().unwrap();
        let a = plan.run();
        assert!(a.failures.is_empty());
        assert_eq!(a.rows.len(), 12);
        assert_eq!(a.to_csv(), plan.run().to_csv());
        assert!(a.to_csv().lines().nth(1).unwrap().starts_with("smoothed/n=6/m=12/phi=1,0,"));
        assert!(a.to_csv().contains(",-,"));
    }

    #[test]
    fn lowerbound_cells_have_constant_steps() {
        let plan = ExperimentPlan::grid(Model::LowerBound, &[8], &[16], &[64.0], 4, 1);
        let r = plan.run();
        assert!(r.rows.iter().all(|row| row.steps == 256));
        assert_eq!(r.mean_steps(0), Some(256.0));
    }

    #[test]
    fn invalid_plans_are_rejected() {
        assert!(ExperimentPlan::grid(Model::Smoothed, &[4], &[8], &[1.0], 0, 0).validate().is_err());
        assert!(ExperimentPlan::grid(Model::PerturbedInteger, &[4], &[8], &[2.5], 1, 0).validate().is_err());
        assert!(ExperimentPlan::grid(Model::LowerBound, &[4], &[3], &[64.0], 1, 0).validate().is_err());
    }

    #[test]
    fn dense_cells_fall_back_to_bipartite() {
        let t = smoothed_topology(6, 18, 0).unwrap();
        assert_eq!(t.node_count, 12);
        let t = smoothed_topology(6, 12, 0).unwrap();
        assert_eq!(t.node_count, 6);
    }
}
