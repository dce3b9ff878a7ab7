//! Simple loop-free digraphs over dense vertex ids, with the counting
//! primitives the solver and the oracles are built from: missing-pair
//! counts, cross-edge sets, acyclicity, girth, induced subgraphs and
//! source/sink trimming.
//!
//! A graph is immutable after construction; every operation that "changes"
//! a graph returns a new one. Vertices of derived graphs are re-indexed
//! densely and carry a label map back to the ids of the original graph.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// An ordered set of distinct vertex ids, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Canonicalizes: sorts and removes duplicates.
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// All ids in `[0, n)` not in `self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mut out = Vec::with_capacity(n - self.0.len());
        let mut it = self.0.iter().copied().peekable();
        for v in 0..n as u32 {
            if it.peek() == Some(&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        VertexSet(out)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        VertexSet::new(out)
    }

    /// Smallest id present in both sets, if any.
    pub fn first_common(&self, other: &VertexSet) -> Option<u32> {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(self.0[i]),
            }
        }
        None
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.first_common(other).is_none()
    }
}

impl From<Vec<u32>> for VertexSet {
    fn from(ids: Vec<u32>) -> Self {
        VertexSet::new(ids)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(VertexSet::new(Vec::<u32>::deserialize(d)?))
    }
}

/// A directed cycle `v0 -> v1 -> ... -> v(l-1) -> v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    vertices: Vec<u32>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<u32>) -> Self {
        CycleWitness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// True when the witness is a genuine directed cycle of `g`:
    /// at least 2 distinct vertices and every consecutive pair
    /// (wrapping around) is an edge.
    pub fn validate(&self, g: &Digraph) -> bool {
        let l = self.vertices.len();
        if l < 2 {
            return false;
        }
        let distinct: HashSet<u32> = self.vertices.iter().copied().collect();
        if distinct.len() != l {
            return false;
        }
        self.vertices.iter().enumerate().all(|(i, &u)| {
            let v = self.vertices[(i + 1) % l];
            (u as usize) < g.vertex_count() && g.has_edge(u, v)
        })
    }
}

impl std::fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in &self.vertices {
            write!(f, "{v} -> ")?;
        }
        match self.vertices.first() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "(empty)"),
        }
    }
}

/// A simple digraph: no loops, no parallel duplicates. Antiparallel pairs
/// `(u,v)` and `(v,u)` are representable; they form a 2-cycle and are
/// rejected by [`Digraph::check_m_free`], not by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    labels: Vec<u32>,
    edge_count: usize,
}

impl Digraph {
    /// Builds a graph on `n` vertices with identity labels.
    pub fn build(n: usize, edges: &[(u32, u32)]) -> Result<Digraph> {
        Self::build_labeled(n, edges, (0..n as u32).collect())
    }

    /// Builds a graph whose vertex `i` refers back to `labels[i]` in some
    /// parent id space. Labels must be distinct; everything that reports
    /// edges in label space relies on that.
    pub fn build_labeled(n: usize, edges: &[(u32, u32)], labels: Vec<u32>) -> Result<Digraph> {
        assert_eq!(labels.len(), n, "label map must cover every vertex");
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Digraph {
            out_adj,
            in_adj,
            labels,
            edge_count: edges.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out_adj
            .get(u as usize)
            .is_some_and(|l| l.binary_search(&v).is_ok())
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u as u32, v)))
    }

    /// The original id vertex `v` refers to.
    pub fn label(&self, v: u32) -> u32 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.vertex_count() as u32).collect())
    }

    /// Number of unordered vertex pairs with no edge in either direction.
    pub fn gamma(&self) -> u64 {
        let n = self.vertex_count() as u64;
        let total_pairs = n * n.saturating_sub(1) / 2;
        // Adjacent unordered pairs = edges minus one per antiparallel pair.
        let mut antiparallel = 0u64;
        for (u, v) in self.edges() {
            if u < v && self.has_edge(v, u) {
                antiparallel += 1;
            }
        }
        total_pairs - (self.edge_count as u64 - antiparallel)
    }

    /// Checks disjointness, returning the offending vertex on overlap.
    fn require_disjoint(a: &VertexSet, b: &VertexSet) -> Result<()> {
        match a.first_common(b) {
            Some(v) => Err(Error::OverlappingSets(v)),
            None => Ok(()),
        }
    }

    /// The edge set from `a` to `b`, in lexicographic order.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<Vec<(u32, u32)>> {
        Self::require_disjoint(a, b)?;
        let mut out = Vec::new();
        for u in a.iter() {
            for &v in self.out_neighbors(u) {
                if b.contains(v) {
                    out.push((u, v));
                }
            }
        }
        Ok(out)
    }

    pub fn count_edges_between(&self, a: &VertexSet, b: &VertexSet) -> Result<u64> {
        Self::require_disjoint(a, b)?;
        let mut count = 0u64;
        for u in a.iter() {
            for &v in self.out_neighbors(u) {
                if b.contains(v) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Unordered nonadjacent cross pairs between `a` and `b`; symmetric.
    /// Equals `|A|*|B| - |E(A,B)| - |E(B,A)|` whenever no cross pair is
    /// antiparallel, which holds in every graph free of 2-cycles; with an
    /// antiparallel pair present the adjacency is still counted once.
    pub fn missing_between(&self, a: &VertexSet, b: &VertexSet) -> Result<u64> {
        let forward = self.count_edges_between(a, b)?;
        let backward = self.count_edges_between(b, a)?;
        let mut antiparallel = 0u64;
        for u in a.iter() {
            for &v in self.out_neighbors(u) {
                if b.contains(v) && self.has_edge(v, u) {
                    antiparallel += 1;
                }
            }
        }
        let adjacent_pairs = forward + backward - antiparallel;
        Ok(a.len() as u64 * b.len() as u64 - adjacent_pairs)
    }

    /// Returns a topological order (smallest-id-first among the available
    /// vertices) or a shortest directed cycle.
    pub fn is_acyclic(&self) -> std::result::Result<Vec<u32>, CycleWitness> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.in_adj.iter().map(|l| l.len()).collect();
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<u32>> = (0..n as u32)
            .filter(|&v| indeg[v as usize] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in self.out_neighbors(v) {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    heap.push(std::cmp::Reverse(w));
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            let (_, witness) = self
                .shortest_cycle(n)
                .expect("leftover vertices imply a directed cycle");
            Err(witness)
        }
    }

    /// Length of a shortest directed cycle with a witness, or `None` when
    /// the graph is acyclic.
    pub fn girth(&self) -> Option<(usize, CycleWitness)> {
        self.shortest_cycle(self.vertex_count())
    }

    /// Ok when the directed girth exceeds `m`; otherwise a shortest
    /// violating cycle (length <= m). Deterministic: the witness is fixed
    /// by ascending scan order.
    pub fn check_m_free(&self, m: usize) -> std::result::Result<(), CycleWitness> {
        match self.shortest_cycle(m) {
            Some((_, witness)) => Err(witness),
            None => Ok(()),
        }
    }

    /// Shortest directed cycle of length at most `cap`, if any. Scans roots
    /// in ascending order and keeps the first strict improvement, so the
    /// returned witness is deterministic.
    fn shortest_cycle(&self, cap: usize) -> Option<(usize, CycleWitness)> {
        let n = self.vertex_count();
        let mut best: Option<(usize, CycleWitness)> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..n as u32 {
            let current_cap = best.as_ref().map_or(cap, |(l, _)| l - 1);
            if current_cap < 2 {
                break;
            }
            if let Some((len, wit)) = self.cycle_through(root, current_cap, &mut dist, &mut parent)
            {
                debug_assert!(best.as_ref().is_none_or(|(l, _)| len < *l));
                best = Some((len, wit));
            }
        }
        best
    }

    /// Shortest cycle through `root` of length at most `cap`, via a BFS
    /// over out-distances capped at `cap - 1`.
    fn cycle_through(
        &self,
        root: u32,
        cap: usize,
        dist: &mut [usize],
        parent: &mut [u32],
    ) -> Option<(usize, CycleWitness)> {
        let mut touched = vec![root];
        dist[root as usize] = 0;
        let mut qi = 0;
        let mut found: Option<u32> = None;
        'bfs: while qi < touched.len() {
            let u = touched[qi];
            qi += 1;
            let du = dist[u as usize];
            // Discovery order is grouped by layer, so the first vertex
            // with an edge back to the root closes a shortest cycle.
            if self.has_edge(u, root) && u != root {
                found = Some(u);
                break 'bfs;
            }
            if du + 2 <= cap {
                for &w in self.out_neighbors(u) {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = du + 1;
                        parent[w as usize] = u;
                        touched.push(w);
                    }
                }
            }
        }
        let result = found.map(|u| {
            let mut path = vec![u];
            let mut cur = u;
            while cur != root {
                cur = parent[cur as usize];
                path.push(cur);
            }
            path.reverse();
            (dist[u as usize] + 1, CycleWitness::new(path))
        });
        for v in touched {
            dist[v as usize] = usize::MAX;
            parent[v as usize] = u32::MAX;
        }
        result
    }

    /// The subgraph induced by `s`, densely re-indexed. Labels compose, so
    /// the vertices of the result refer to the ids of the *original* graph.
    pub fn induced(&self, s: &VertexSet) -> Result<Digraph> {
        let n = self.vertex_count();
        if let Some(&v) = s.as_slice().last() {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
        }
        let mut dense = vec![u32::MAX; n];
        for (i, v) in s.iter().enumerate() {
            dense[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for u in s.iter() {
            for &v in self.out_neighbors(u) {
                if dense[v as usize] != u32::MAX {
                    edges.push((dense[u as usize], dense[v as usize]));
                }
            }
        }
        let labels = s.iter().map(|v| self.labels[v as usize]).collect();
        Digraph::build_labeled(s.len(), &edges, labels)
    }

    /// Iteratively removes every vertex with an empty out-neighborhood or
    /// an empty in-neighborhood until none remains. Such vertices lie on no
    /// directed cycle, so the result has exactly the same directed cycles.
    ///
    /// The initial scan seeds a FIFO queue in ascending id order and newly
    /// bad vertices are appended as they are discovered; the removal order
    /// is therefore deterministic.
    pub fn trim(&self) -> (Digraph, Vec<u32>) {
        let n = self.vertex_count();
        let mut outdeg: Vec<usize> = self.out_adj.iter().map(|l| l.len()).collect();
        let mut indeg: Vec<usize> = self.in_adj.iter().map(|l| l.len()).collect();
        let mut queued = vec![false; n];
        let mut alive = vec![true; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if outdeg[v] == 0 || indeg[v] == 0 {
                queued[v] = true;
                queue.push_back(v as u32);
            }
        }
        let mut removed = Vec::new();
        while let Some(v) = queue.pop_front() {
            alive[v as usize] = false;
            removed.push(v);
            for &w in self.out_neighbors(v) {
                if alive[w as usize] {
                    indeg[w as usize] -= 1;
                    if indeg[w as usize] == 0 && !queued[w as usize] {
                        queued[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            for &w in self.in_neighbors(v) {
                if alive[w as usize] {
                    outdeg[w as usize] -= 1;
                    if outdeg[w as usize] == 0 && !queued[w as usize] {
                        queued[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let survivors: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
        let g = self
            .induced(&VertexSet::new(survivors))
            .expect("survivors are in range");
        (g, removed)
    }

    /// The same graph minus one edge.
    pub fn without_edge(&self, u: u32, v: u32) -> Digraph {
        let edges: Vec<(u32, u32)> = self.edges().filter(|&e| e != (u, v)).collect();
        Digraph::build_labeled(self.vertex_count(), &edges, self.labels.clone())
            .expect("removing an edge preserves validity")
    }
}
