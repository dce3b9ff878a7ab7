//! The structured report schema.
//!
//! Every quantity is an exact integer (or an `a/b` fraction string where
//! the commands print ratios); nothing is ever rendered through floating
//! point. Fields that a command does not produce are `null`. Trace nodes
//! are listed flat in depth-first preorder, node 0 the root, children
//! referenced by index.

use serde::{Deserialize, Serialize};

use mfas_core::digraph::Digraph;
use mfas_core::gen::GenSpec;
use mfas_core::solver::{FasResult, TraceNode};

use crate::io;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub input_digest: String,
    pub n: usize,
    pub edge_count: u64,
    pub gamma: u64,
    pub girth: Option<u64>,
    pub m: Option<usize>,
    pub fas_size: Option<u64>,
    /// `floor(gamma / (m - 2))`: the certified ceiling on `fas_size`.
    pub bound_value: Option<u64>,
    pub certificate_ok: Option<bool>,
    pub exact_beta: Option<u64>,
    pub exact_edges: Option<Vec<(u32, u32)>>,
    pub fas_edges: Option<Vec<(u32, u32)>>,
    pub trace: Option<Vec<TraceNode>>,
    pub generator: Option<GenSpec>,
    pub wall_time_ms: Option<u64>,
}

impl Report {
    /// Common fields every command fills in.
    pub fn skeleton(g: &Digraph) -> Report {
        Report {
            input_digest: io::input_digest(g),
            n: g.vertex_count(),
            edge_count: g.edge_count() as u64,
            gamma: g.gamma(),
            girth: g.girth().map(|(l, _)| l as u64),
            m: None,
            fas_size: None,
            bound_value: None,
            certificate_ok: None,
            exact_beta: None,
            exact_edges: None,
            fas_edges: None,
            trace: None,
            generator: None,
            wall_time_ms: None,
        }
    }

    pub fn with_solve(mut self, m: usize, result: &FasResult, certificate_ok: bool) -> Report {
        self.m = Some(m);
        self.fas_size = Some(result.fas_size());
        self.bound_value = Some(self.gamma / (m as u64 - 2));
        self.certificate_ok = Some(certificate_ok);
        self.fas_edges = Some(result.x.clone());
        self.trace = Some(result.trace.clone());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Rebuilds the solver result a report claims to certify. `None` when
    /// the report carries no trace (or no solve fields at all).
    pub fn to_fas_result(&self) -> Option<FasResult> {
        Some(FasResult {
            x: self.fas_edges.clone()?,
            trace: self.trace.clone()?,
            m: self.m?,
            gamma_input: self.gamma,
        })
    }
}
