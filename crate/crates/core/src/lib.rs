//! Feedback arc sets of short-cycle-free digraphs with certified size
//! bounds.
//!
//! For a simple digraph `G`, write `gamma(G)` for the number of unordered
//! nonadjacent vertex pairs ("missing edges"), and call `G` *m-free* when
//! it has no directed cycle of length at most `m`. For every m-free `G`
//! with `m >= 4` the solver in this crate produces a feedback arc set `X`
//! (removing `X` leaves `G` acyclic) together with a replayable
//! certificate of the bound `(m - 2) * |X| <= gamma(G)`.
//!
//! The crate is organized around that pipeline:
//!
//! - [`digraph`]: the graph model and counting primitives;
//! - [`layers`]: BFS distance classes and the layer counts driving the
//!   solver (`p_layer`/`rprime_layer` numerators, surrogate denominators);
//! - [`path_stats`]: the independent verification oracle built on
//!   exhaustive shortest-induced-path enumeration;
//! - [`solver`]: the recursive partition solver and certificate checker;
//! - [`exact`]: ground-truth minimum feedback arc set for small graphs;
//! - [`gen`]: seeded instance generators for testing and benchmarks.
//!
//! All decision arithmetic is exact integer or cross-multiplied rational;
//! no floating point is involved anywhere.

pub mod digraph;
pub mod error;
pub mod exact;
pub mod gen;
pub mod layers;
pub mod path_stats;
pub mod ratio;
pub mod solver;

pub use digraph::{CycleWitness, Digraph, VertexSet};
pub use error::{Error, Result};
pub use ratio::ExactRatio;
pub use solver::{Candidate, FasResult, Side, TraceNode, Violation};
