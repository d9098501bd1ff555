//! Minimum-cost flow by successive shortest paths, plus a toolkit for
//! studying how many augmentations the method needs.
//!
//! * [`network`]: flow networks, flows, residual networks, the
//!   master-source/master-sink transformation and a DIMACS-style text format.
//! * [`solver`]: the SSP solver with a full per-step trace, and the
//!   piecewise-linear cost function read off that trace.
//! * [`analysis`]: an independent Bellman-Ford reference solver, optimality
//!   and structural invariant checks, good/bad flow classification and flow
//!   reconstruction from a single arc.
//! * [`generators`]: random instances with φ-bounded cost densities and
//!   perturbed integer costs.
//! * [`lowerbound`]: the family of networks forcing `m · 2^{k-1} · 2M`
//!   augmentations, with an exact verifier.
//! * [`experiment`]: parallel parameter sweeps producing CSV.
//! * [`cli`]: the `sspflow` command line.
//!
//! ```
//! use sspflow::network::{FlowNetwork, TransformedNetwork};
//! use sspflow::solver::{solve, SspOptions};
//!
//! let mut b = FlowNetwork::builder(2);
//! b.edge(0, 1, 5.0, 0.5);
//! b.balance(0, 5.0).balance(1, -5.0);
//! let instance = TransformedNetwork::with_terminals(b.build()?, 0, 1)?;
//! let trace = solve(&instance, &SspOptions::default())?;
//! assert_eq!(trace.len(), 1);
//! assert_eq!(trace.final_flow.cost(&instance), 2.5);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod experiment;
pub mod generators;
pub mod lowerbound;
pub mod network;
pub mod numeric;
pub mod solver;
