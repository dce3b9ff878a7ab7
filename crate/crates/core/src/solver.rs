//! The recursive partition solver and its certificate checker.
//!
//! On a trimmed graph with girth above `m`, every vertex `v` and every
//! `k` in `1..=m-3` define two candidate splits: outward (cut the edges
//! between out-layers `k+1` and `k+2`) and inward (mirrored on in-layers).
//! A candidate is *admissible* when `(m - 2) * numerator <= denominator`,
//! where the numerator is the cut size and the denominator the surrogate
//! missing-edge sum, which never exceeds the missing-pair count between
//! the two sides of the partition. Splitting on an admissible candidate
//! and recursing on both sides therefore assembles a feedback arc set `X`
//! with `(m - 2) * |X| <= gamma(G)`, and the recursion trace doubles as a
//! machine-checkable certificate of that bound.
//!
//! [`verify_certificate`] replays a trace against the input graph using
//! only the counting primitives of [`crate::digraph`]; it trusts nothing
//! the solver recorded.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::layers::{self, LayerDecomposition};
use crate::ratio::ExactRatio;

/// Which direction a split runs: `Out` partitions by out-layers of the
/// candidate vertex, `In` by in-layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Out,
    In,
}

/// A proposed partition step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub v: u32,
    pub k: usize,
    pub side: Side,
    /// Cut size: `p_layer(v, k)` for `Out`, `rprime_layer(v, k)` for `In`.
    pub numerator: u64,
    /// Surrogate denominator: `s_surrogate` for `Out`, `t_surrogate` for `In`.
    pub denominator: u64,
    pub ratio: ExactRatio,
}

impl Candidate {
    pub fn new(v: u32, k: usize, side: Side, numerator: u64, denominator: u64) -> Self {
        Candidate {
            v,
            k,
            side,
            numerator,
            denominator,
            ratio: ExactRatio::new(numerator, denominator),
        }
    }

    /// The ratio used for ordering: a zero numerator is a free split and
    /// sorts as exactly 0 even when the denominator is also 0.
    pub fn effective_ratio(&self) -> ExactRatio {
        if self.numerator == 0 {
            ExactRatio::zero()
        } else {
            self.ratio
        }
    }

    /// `(m - 2) * numerator <= denominator`, with a zero numerator always
    /// admissible. Nothing is admissible below m = 4.
    pub fn is_admissible(&self, m: usize) -> bool {
        m >= 4
            && (self.numerator == 0
                || (m as u128 - 2) * self.numerator as u128 <= self.denominator as u128)
    }

    fn sort_key(&self) -> (ExactRatio, Side, u32, usize) {
        (self.effective_ratio(), self.side, self.v, self.k)
    }
}

/// One node of the recursion trace. Vertices and edges are recorded in the
/// label space of the *input* graph, so a trace can be replayed without
/// knowing how the solver re-indexed subproblems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TraceNode {
    /// The subproblem was acyclic; nothing removed.
    Base,
    /// Vertices with an empty in- or out-neighborhood were removed, in
    /// order; the subproblem continues at `child`.
    Trim { removed: Vec<u32>, child: usize },
    /// The subproblem was partitioned on `candidate` into `v1`/`v2`,
    /// cutting `x3`.
    Split {
        candidate: Candidate,
        v1: Vec<u32>,
        v2: Vec<u32>,
        x3: Vec<(u32, u32)>,
        /// Missing-pair count between the two sides.
        missing_between: u64,
        gamma: u64,
        gamma_v1: u64,
        gamma_v2: u64,
        children: [usize; 2],
    },
}

/// The removed edge set plus the recursion trace certifying
/// `(m - 2) * |X| <= gamma_input`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasResult {
    /// Removed edges in input labels, sorted lexicographically.
    pub x: Vec<(u32, u32)>,
    /// Trace nodes in depth-first preorder; node 0 is the root.
    pub trace: Vec<TraceNode>,
    pub m: usize,
    pub gamma_input: u64,
}

impl FasResult {
    pub fn fas_size(&self) -> u64 {
        self.x.len() as u64
    }
}

/// Enumerates every `(v, k, side)` candidate of a trimmed cyclic graph and
/// returns the admissible one minimizing
/// `(effective ratio, Out before In, v, k)`.
pub fn select_candidate(g: &Digraph, m: usize) -> Result<Candidate> {
    if m < 4 {
        return Err(Error::UnsupportedM(m));
    }
    let mut best: Option<Candidate> = None;
    for v in 0..g.vertex_count() as u32 {
        let out = layers::out_layers(g, v, m - 1)?;
        let inn = layers::in_layers(g, v, m - 1)?;
        for k in 1..=m - 3 {
            let out_num = g.count_edges_between(out.layer(k + 1), out.layer(k + 2))?;
            let out_den = layers::surrogate_sum(g, &out, inn.layer(1), k, m)?;
            let in_num = g.count_edges_between(inn.layer(k + 2), inn.layer(k + 1))?;
            let in_den = layers::surrogate_sum(g, &inn, out.layer(1), k, m)?;
            for cand in [
                Candidate::new(v, k, Side::Out, out_num, out_den),
                Candidate::new(v, k, Side::In, in_num, in_den),
            ] {
                if !cand.is_admissible(m) {
                    continue;
                }
                if best.as_ref().is_none_or(|b| cand.sort_key() < b.sort_key()) {
                    best = Some(cand);
                }
            }
        }
    }
    best.ok_or(Error::NoAdmissibleCandidate)
}

/// The two sides of a partition plus the cut edge set.
pub type SplitParts = (VertexSet, VertexSet, Vec<(u32, u32)>);

/// Materializes the partition a candidate describes: `v1` is the union of
/// layers `1..=k+1` on the candidate's side, `v2` the complement, and the
/// cut is `E(v1, v2)` for `Out` or `E(v2, v1)` for `In`. Both sides are
/// nonempty on a trimmed graph (`v` itself lands in `v2`).
pub fn split(g: &Digraph, c: &Candidate, m: usize) -> Result<SplitParts> {
    if c.k < 1 || m < 4 || c.k > m - 3 {
        return Err(Error::KOutOfRange(c.k));
    }
    let dec: LayerDecomposition = match c.side {
        Side::Out => layers::out_layers(g, c.v, c.k + 1)?,
        Side::In => layers::in_layers(g, c.v, c.k + 1)?,
    };
    let v1 = dec.union_range(1, c.k + 1);
    let v2 = v1.complement(g.vertex_count());
    let x3 = match c.side {
        Side::Out => g.edges_between(&v1, &v2)?,
        Side::In => g.edges_between(&v2, &v1)?,
    };
    Ok((v1, v2, x3))
}

/// Runs the full recursion: trim, select, split, recurse; assembles the
/// feedback arc set and its trace. The input must have girth above `m`
/// with `m >= 4`. Deterministic for fixed input.
pub fn solve(g: &Digraph, m: usize) -> Result<FasResult> {
    if m < 4 {
        return Err(Error::UnsupportedM(m));
    }
    g.check_m_free(m).map_err(Error::NotMFree)?;
    let mut trace = Vec::new();
    let mut x = Vec::new();
    solve_rec(g, m, &mut trace, &mut x)?;
    x.sort_unstable();
    x.dedup();
    let gamma_input = g.gamma();
    let result = FasResult {
        x,
        trace,
        m,
        gamma_input,
    };
    if (m as u128 - 2) * result.fas_size() as u128 > gamma_input as u128 {
        return Err(Error::InternalBoundViolation(format!(
            "({} - 2) * {} > gamma = {}",
            m,
            result.fas_size(),
            gamma_input
        )));
    }
    if remove_edges(g, &result.x).is_acyclic().is_err() {
        return Err(Error::InternalBoundViolation(
            "removing X did not make the graph acyclic".into(),
        ));
    }
    Ok(result)
}

fn solve_rec(
    g: &Digraph,
    m: usize,
    trace: &mut Vec<TraceNode>,
    x: &mut Vec<(u32, u32)>,
) -> Result<usize> {
    if g.is_acyclic().is_ok() {
        let id = trace.len();
        trace.push(TraceNode::Base);
        return Ok(id);
    }
    let (trimmed, removed) = g.trim();
    if !removed.is_empty() {
        let id = trace.len();
        trace.push(TraceNode::Base); // placeholder
        let removed_labels = removed.iter().map(|&v| g.label(v)).collect();
        let child = solve_rec(&trimmed, m, trace, x)?;
        trace[id] = TraceNode::Trim {
            removed: removed_labels,
            child,
        };
        return Ok(id);
    }
    let candidate = select_candidate(g, m)?;
    let (v1, v2, x3) = split(g, &candidate, m)?;
    if x3.len() as u64 != candidate.numerator {
        return Err(Error::InternalBoundViolation(format!(
            "cut size {} differs from candidate numerator {}",
            x3.len(),
            candidate.numerator
        )));
    }
    let missing = g.missing_between(&v1, &v2)?;
    if (m as u128 - 2) * x3.len() as u128 > missing as u128 {
        return Err(Error::InternalBoundViolation(format!(
            "({m} - 2) * {} > missing = {missing}",
            x3.len()
        )));
    }
    let g1 = g.induced(&v1)?;
    let g2 = g.induced(&v2)?;
    let (gamma, gamma_v1, gamma_v2) = (g.gamma(), g1.gamma(), g2.gamma());
    if gamma != gamma_v1 + gamma_v2 + missing {
        return Err(Error::InternalBoundViolation(format!(
            "gamma decomposition failed: {gamma} != {gamma_v1} + {gamma_v2} + {missing}"
        )));
    }
    let id = trace.len();
    trace.push(TraceNode::Base); // placeholder
    let c1 = solve_rec(&g1, m, trace, x)?;
    let c2 = solve_rec(&g2, m, trace, x)?;
    let x3_labels: Vec<(u32, u32)> = x3
        .iter()
        .map(|&(u, v)| (g.label(u), g.label(v)))
        .collect();
    x.extend_from_slice(&x3_labels);
    trace[id] = TraceNode::Split {
        candidate: Candidate {
            v: g.label(candidate.v),
            ..candidate
        },
        v1: v1.iter().map(|v| g.label(v)).collect(),
        v2: v2.iter().map(|v| g.label(v)).collect(),
        x3: x3_labels,
        missing_between: missing,
        gamma,
        gamma_v1,
        gamma_v2,
        children: [c1, c2],
    };
    Ok(id)
}

/// `g` minus the labeled edge set `x`.
fn remove_edges(g: &Digraph, x: &[(u32, u32)]) -> Digraph {
    let forbidden: BTreeSet<(u32, u32)> = x.iter().copied().collect();
    let edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| !forbidden.contains(&(g.label(u), g.label(v))))
        .collect();
    Digraph::build_labeled(g.vertex_count(), &edges, g.labels().to_vec())
        .expect("edge removal preserves validity")
}

/// One failed certificate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: Option<usize>,
    pub message: String,
}

impl Violation {
    fn global(message: impl Into<String>) -> Self {
        Violation {
            node: None,
            message: message.into(),
        }
    }

    fn at(node: usize, message: impl Into<String>) -> Self {
        Violation {
            node: Some(node),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.node {
            Some(id) => write!(f, "node {}: {}", id, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Independently replays a trace against `g`, recomputing every layer
/// set, cut, missing-pair count and gamma from scratch. Returns the empty
/// vector exactly when the certificate is sound:
///
/// - every split node satisfies `X3 = E(V1,V2)` (or `E(V2,V1)` inward),
///   `(m-2) * |X3| <= missing(V1,V2)`, and the gamma decomposition
///   `gamma(G) = gamma(G1) + gamma(G2) + missing(V1,V2)`;
/// - every trim node removed exactly the trimmable vertices;
/// - every base node is acyclic;
/// - globally, `X` is the union of the recorded cuts, `G - X` is acyclic,
///   and `(m - 2) * |X| <= gamma(G)`.
pub fn verify_certificate(g: &Digraph, m: usize, result: &FasResult) -> Vec<Violation> {
    let mut violations = Vec::new();
    if m < 4 {
        violations.push(Violation::global(format!("m = {m} is below 4")));
        return violations;
    }
    if result.m != m {
        violations.push(Violation::global(format!(
            "certificate was produced for m = {}, not m = {m}",
            result.m
        )));
    }
    if g.check_m_free(m).is_err() {
        violations.push(Violation::global(
            "input graph has a directed cycle of length <= m",
        ));
    }
    if result.gamma_input != g.gamma() {
        violations.push(Violation::global(format!(
            "gamma_input = {} differs from γ(G) = {}",
            result.gamma_input,
            g.gamma()
        )));
    }
    if result.trace.is_empty() {
        violations.push(Violation::global("trace is empty"));
        return violations;
    }
    let mut visited = vec![false; result.trace.len()];
    let mut x3_union: BTreeSet<(u32, u32)> = BTreeSet::new();
    walk(g, m, result, 0, &mut visited, &mut x3_union, &mut violations);
    if visited.iter().any(|&v| !v) {
        violations.push(Violation::global("trace has unreachable nodes"));
    }
    let x_set: BTreeSet<(u32, u32)> = result.x.iter().copied().collect();
    if x_set.len() != result.x.len() {
        violations.push(Violation::global("X contains duplicate edges"));
    }
    if x_set != x3_union {
        violations.push(Violation::global("X ≠ union of split X₃ sets"));
    }
    if remove_edges(g, &result.x).is_acyclic().is_err() {
        violations.push(Violation::global("G − X is not acyclic"));
    }
    if (m as u128 - 2) * x_set.len() as u128 > g.gamma() as u128 {
        violations.push(Violation::global("(m−2)·|X| > γ(G)"));
    }
    violations
}

fn walk(
    g: &Digraph,
    m: usize,
    result: &FasResult,
    id: usize,
    visited: &mut [bool],
    x3_union: &mut BTreeSet<(u32, u32)>,
    violations: &mut Vec<Violation>,
) {
    if id >= result.trace.len() {
        violations.push(Violation::global(format!(
            "child id {id} is outside the trace"
        )));
        return;
    }
    if visited[id] {
        violations.push(Violation::at(id, "node is referenced twice"));
        return;
    }
    visited[id] = true;
    match &result.trace[id] {
        TraceNode::Base => {
            if g.is_acyclic().is_err() {
                violations.push(Violation::at(id, "base graph is not acyclic"));
            }
        }
        TraceNode::Trim { removed, child } => {
            let (trimmed, rm) = g.trim();
            let rm_labels: Vec<u32> = rm.iter().map(|&v| g.label(v)).collect();
            if &rm_labels != removed {
                violations.push(Violation::at(id, "trim removed list mismatch"));
            }
            if rm_labels.is_empty() {
                violations.push(Violation::at(id, "trim node removed nothing"));
            }
            walk(&trimmed, m, result, *child, visited, x3_union, violations);
        }
        TraceNode::Split {
            candidate,
            v1,
            v2,
            x3,
            missing_between,
            gamma,
            gamma_v1,
            gamma_v2,
            children,
        } => {
            // Map this node's labels back into the dense ids of g.
            let label_to_dense: HashMap<u32, u32> = g
                .labels()
                .iter()
                .enumerate()
                .map(|(i, &l)| (l, i as u32))
                .collect();
            let to_dense = |labels: &[u32]| -> Option<Vec<u32>> {
                labels
                    .iter()
                    .map(|l| label_to_dense.get(l).copied())
                    .collect()
            };
            let (Some(v1_dense), Some(v2_dense), Some(&vd)) = (
                to_dense(v1),
                to_dense(v2),
                label_to_dense.get(&candidate.v),
            ) else {
                violations.push(Violation::at(id, "split references vertices outside the subgraph"));
                return;
            };
            if candidate.k < 1 || candidate.k > m - 3 {
                violations.push(Violation::at(id, "candidate k out of range"));
                return;
            }
            let v1_set = VertexSet::new(v1_dense);
            let v2_set = VertexSet::new(v2_dense);
            if v1_set.len() + v2_set.len() != g.vertex_count()
                || !v1_set.is_disjoint(&v2_set)
                || v1_set.is_empty()
                || v2_set.is_empty()
            {
                violations.push(Violation::at(id, "V₁, V₂ is not a nontrivial partition"));
                return;
            }
            let dec = match candidate.side {
                Side::Out => layers::out_layers(g, vd, candidate.k + 1),
                Side::In => layers::in_layers(g, vd, candidate.k + 1),
            }
            .expect("candidate vertex is in range");
            if dec.union_range(1, candidate.k + 1) != v1_set {
                violations.push(Violation::at(id, "V₁ ≠ union of candidate layers"));
            }
            let expected_x3 = match candidate.side {
                Side::Out => g.edges_between(&v1_set, &v2_set),
                Side::In => g.edges_between(&v2_set, &v1_set),
            };
            let Ok(expected_x3) = expected_x3 else {
                violations.push(Violation::at(id, "V₁, V₂ overlap"));
                return;
            };
            let expected_labels: BTreeSet<(u32, u32)> = expected_x3
                .iter()
                .map(|&(u, v)| (g.label(u), g.label(v)))
                .collect();
            let stored: BTreeSet<(u32, u32)> = x3.iter().copied().collect();
            if stored != expected_labels {
                match candidate.side {
                    Side::Out => violations.push(Violation::at(id, "X₃ ≠ E(V₁,V₂)")),
                    Side::In => violations.push(Violation::at(id, "X₃ ≠ E(V₂,V₁)")),
                }
            }
            if candidate.numerator != stored.len() as u64 {
                violations.push(Violation::at(id, "candidate numerator ≠ |X₃|"));
            }
            let missing = g
                .missing_between(&v1_set, &v2_set)
                .expect("partition sides are disjoint");
            if *missing_between != missing {
                violations.push(Violation::at(
                    id,
                    "stored |Ē(V₁,V₂)| does not match recomputation",
                ));
            }
            if (m as u128 - 2) * stored.len() as u128 > missing as u128 {
                violations.push(Violation::at(id, "(m−2)·|X₃| > |Ē(V₁,V₂)|"));
            }
            let g1 = g.induced(&v1_set).expect("v1 ids are in range");
            let g2 = g.induced(&v2_set).expect("v2 ids are in range");
            if *gamma != g.gamma() || *gamma_v1 != g1.gamma() || *gamma_v2 != g2.gamma() {
                violations.push(Violation::at(
                    id,
                    "stored γ fields do not match recomputation",
                ));
            }
            if *gamma != gamma_v1 + gamma_v2 + missing_between {
                violations.push(Violation::at(id, "γ(G) ≠ γ(G₁) + γ(G₂) + |Ē(V₁,V₂)|"));
            }
            x3_union.extend(stored);
            walk(&g1, m, result, children[0], visited, x3_union, violations);
            walk(&g2, m, result, children[1], visited, x3_union, violations);
        }
    }
}
