//! Extended DIMACS min-cost-flow text format.
//!
//! ```text
//! c comment
//! p min <n> <m>
//! c phi <bound>                      (optional, φ-range cost convention)
//! n <id> <balance>
//! a <tail> <head> <capacity> <cost> [aux]
//! ```
//!
//! Node ids are 1-based. Balances are checked to sum to zero exactly on the
//! decimal literals before conversion to binary floating point.

use std::fmt::Write as _;

use thiserror::Error;

use super::{CostScale, Edge, EdgeKind, FlowNetwork, NetworkError};
use crate::numeric::{decimal_sum, Decimal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{}{source}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invariant {
        line: Option<usize>,
        #[source]
        source: NetworkError,
    },
}

fn parse_err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Parse { line, message: message.into() }
}

struct Number {
    value: f64,
    exact: Decimal,
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<Number, DimacsError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    let exact = Decimal::parse(tok).ok_or_else(|| parse_err(line, format!("bad {what} '{tok}'")))?;
    let value: f64 = tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))?;
    Ok(Number { value, exact })
}

fn node_id(tok: Option<&str>, line: usize, n: usize) -> Result<usize, DimacsError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing node id"))?;
    let id: usize = tok.parse().map_err(|_| parse_err(line, format!("bad node id '{tok}'")))?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("node id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn read_instance(text: &str) -> Result<FlowNetwork, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut phi: Option<f64> = None;
    let mut balance: Vec<f64> = Vec::new();
    let mut exact_balances = Vec::new();
    let mut seen = Vec::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => {
                if toks.next() == Some("phi") {
                    if header.is_none() {
                        return Err(parse_err(line, "'c phi' before problem line"));
                    }
                    let p = number(toks.next(), line, "phi")?.value;
                    if !(p >= 1.0) {
                        return Err(parse_err(line, format!("phi {p} below 1")));
                    }
                    phi = Some(p);
                }
                continue;
            }
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                if toks.next() != Some("min") {
                    return Err(parse_err(line, "expected 'p min <n> <m>'"));
                }
                let n: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line, "bad node count"))?;
                let m: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line, "bad arc count"))?;
                header = Some((n, m));
                balance = vec![0.0; n];
                seen = vec![false; n];
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "node line before problem line"))?;
                let v = node_id(toks.next(), line, n)?;
                let b = number(toks.next(), line, "balance")?;
                if seen[v] {
                    return Err(parse_err(line, format!("duplicate node line for {}", v + 1)));
                }
                seen[v] = true;
                balance[v] = b.value;
                exact_balances.push(b.exact);
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "arc line before problem line"))?;
                let tail = node_id(toks.next(), line, n)?;
                let head = node_id(toks.next(), line, n)?;
                let capacity = number(toks.next(), line, "capacity")?.value;
                let cost = number(toks.next(), line, "cost")?.value;
                let kind = match toks.next() {
                    None => EdgeKind::Original,
                    Some("aux") => EdgeKind::Auxiliary,
                    Some(other) => return Err(parse_err(line, format!("unexpected token '{other}'"))),
                };
                edges.push(Edge { tail, head, capacity, cost, kind });
                edge_lines.push(line);
            }
            other => return Err(parse_err(line, format!("unknown line type '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("trailing token '{extra}'")));
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(last_line, format!("header declares {m} arcs, found {}", edges.len())));
    }
    let sum = decimal_sum(&exact_balances);
    if !sum.is_zero() {
        return Err(DimacsError::Invariant {
            line: None,
            source: NetworkError::BalanceMismatch { sum: balance.iter().sum() },
        });
    }
    let scale = match phi {
        Some(p) => CostScale::Phi(p),
        None => {
            let max = edges.iter().map(|e| e.cost).fold(0.0, f64::max);
            if max > 1.0 {
                CostScale::Phi(max)
            } else {
                CostScale::Unit
            }
        }
    };
    FlowNetwork::from_parts(n, edges, balance, scale).map_err(|source| {
        let line = match &source {
            NetworkError::SelfLoop { edge, .. }
            | NetworkError::DuplicateEdge { edge, .. }
            | NetworkError::TwoCycle { edge, .. }
            | NetworkError::NegativeCapacity { edge, .. }
            | NetworkError::CostOutOfRange { edge, .. }
            | NetworkError::AuxiliaryCost { edge, .. } => edge_lines.get(*edge).copied(),
            _ => None,
        };
        DimacsError::Invariant { line, source }
    })
}

/// Canonical text: problem line, optional `c phi`, node lines for nonzero
/// balances in id order, then arcs in edge order.
pub fn write_instance(network: &FlowNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p min {} {}", network.node_count(), network.edge_count());
    if let CostScale::Phi(p) = network.cost_scale() {
        let _ = writeln!(out, "c phi {p}");
    }
    for (v, &b) in network.balances().iter().enumerate() {
        if b != 0.0 {
            let _ = writeln!(out, "n {} {}", v + 1, b);
        }
    }
    for e in network.edges() {
        let _ = write!(out, "a {} {} {} {}", e.tail + 1, e.head + 1, e.capacity, e.cost);
        if e.is_auxiliary() {
            out.push_str(" aux");
        }
        out.push('\n');
    }
    out
}
