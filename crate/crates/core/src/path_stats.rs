//! The verification oracle: exhaustive enumeration of shortest induced
//! directed paths, the six per-vertex triple statistics derived from them,
//! the exact ratio denominators, and the identity/bound checks that the
//! layer-based solver quantities must satisfy.
//!
//! Everything here is exponential-in-the-worst-case enumeration meant for
//! desk-scale verification (n up to ~16); the solver itself never calls
//! into this module.
//!
//! Vocabulary: a path of length `k + 2` is bucketed two ways. The first
//! family records the triple `(first, penultimate, last)` and yields the
//! statistics `p` (bucketed by first vertex), `q` (by penultimate) and `r`
//! (by last). The second family records `(first, second, last)` and yields
//! `p'`, `q'`, `r'`. Triples are de-duplicated across different interior
//! paths, which is the reading under which `p` and `r'` agree exactly with
//! the layer cross-edge counts. The exact denominators are
//! `s_k(v) = sum(p'_i, i in k..=m-3) + sum(q'_i, i in 1..=k)` and
//! `t_k(v) = sum(r_i, i in k..=m-3) + sum(q_i, i in 1..=k)`.

use std::collections::BTreeSet;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::layers::{self, Direction};
use crate::ratio::ExactRatio;
use crate::solver::Side;

/// A directed path whose vertex set induces no edges beyond the path
/// edges, and whose endpoints realize the path length as their directed
/// distance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortestInducedPath {
    vertices: Vec<u32>,
}

impl ShortestInducedPath {
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Path length = number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Every shortest induced directed path of length `1..=max_len`, each
/// exactly once, in lexicographic vertex-sequence order.
pub fn enumerate_sips(g: &Digraph, max_len: usize) -> Vec<ShortestInducedPath> {
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    for v in 0..n as u32 {
        // Exact BFS distances from v; a vertex at position i of a shortest
        // path must sit at distance exactly i.
        for d in dist.iter_mut() {
            *d = usize::MAX;
        }
        dist[v as usize] = 0;
        let mut frontier = vec![v];
        for depth in 1..=max_len {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in g.out_neighbors(u) {
                    if dist[w as usize] == usize::MAX {
                        dist[w as usize] = depth;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let mut path = vec![v];
        extend(g, &dist, &mut path, max_len, &mut out);
    }
    out
}

fn extend(
    g: &Digraph,
    dist: &[usize],
    path: &mut Vec<u32>,
    max_len: usize,
    out: &mut Vec<ShortestInducedPath>,
) {
    if path.len() > max_len {
        return;
    }
    let last = *path.last().unwrap();
    for &w in g.out_neighbors(last) {
        if dist[w as usize] != path.len() {
            continue;
        }
        // Induced: no edge between w and any earlier vertex in either
        // direction, other than the new path edge (last, w) itself.
        if g.has_edge(w, last) {
            continue;
        }
        let earlier = &path[..path.len() - 1];
        if earlier
            .iter()
            .any(|&p| g.has_edge(p, w) || g.has_edge(w, p))
        {
            continue;
        }
        path.push(w);
        out.push(ShortestInducedPath {
            vertices: path.clone(),
        });
        extend(g, dist, path, max_len, out);
        path.pop();
    }
}

/// The six per-vertex, per-k triple statistics of a graph with girth
/// above `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleStats {
    m: usize,
    n: usize,
    // Indexed by k - 1 for k in 1..=m-3; each Vec has one entry per vertex.
    per_k: Vec<KStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct KStats {
    p: Vec<u64>,
    q: Vec<u64>,
    r: Vec<u64>,
    p_prime: Vec<u64>,
    q_prime: Vec<u64>,
    r_prime: Vec<u64>,
}

impl TripleStats {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn k_range(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.m - 3
    }

    fn k_stats(&self, k: usize) -> Result<&KStats> {
        if k < 1 || k > self.m - 3 {
            return Err(Error::KOutOfRange(k));
        }
        Ok(&self.per_k[k - 1])
    }

    pub fn p(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.p[v as usize])
    }

    pub fn q(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.q[v as usize])
    }

    pub fn r(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.r[v as usize])
    }

    pub fn p_prime(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.p_prime[v as usize])
    }

    pub fn q_prime(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.q_prime[v as usize])
    }

    pub fn r_prime(&self, v: u32, k: usize) -> Result<u64> {
        Ok(self.k_stats(k)?.r_prime[v as usize])
    }

    /// Exact denominator of the outward ratio at `(v, k)`.
    pub fn s_exact(&self, v: u32, k: usize) -> Result<u64> {
        self.k_stats(k)?;
        let mut total = 0;
        for i in k..=self.m - 3 {
            total += self.p_prime(v, i)?;
        }
        for i in 1..=k {
            total += self.q_prime(v, i)?;
        }
        Ok(total)
    }

    /// Exact denominator of the inward ratio at `(v, k)`.
    pub fn t_exact(&self, v: u32, k: usize) -> Result<u64> {
        self.k_stats(k)?;
        let mut total = 0;
        for i in k..=self.m - 3 {
            total += self.r(v, i)?;
        }
        for i in 1..=k {
            total += self.q(v, i)?;
        }
        Ok(total)
    }

    fn sum(values: &[u64]) -> u64 {
        values.iter().sum()
    }
}

/// Computes the triple statistics by scanning every shortest induced path
/// of length `k + 2` for each `k` in `1..=m-3`.
///
/// A path `(v0, ..., v_{k+2})` contributes `(v0, v_{k+1}, v_{k+2})` to the
/// first family and `(v0, v1, v_{k+2})` to the second; each family is a
/// de-duplicated set per `k`.
pub fn triple_stats(g: &Digraph, m: usize) -> Result<TripleStats> {
    if m < 4 {
        return Err(Error::UnsupportedM(m));
    }
    g.check_m_free(m).map_err(Error::NotMFree)?;
    let n = g.vertex_count();
    let sips = enumerate_sips(g, m - 1);
    let mut per_k = Vec::new();
    for k in 1..=m - 3 {
        let len = k + 2;
        let mut first_family: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
        let mut second_family: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
        for path in sips.iter().filter(|p| p.len() == len) {
            let vs = path.vertices();
            first_family.insert((vs[0], vs[len - 1], vs[len]));
            second_family.insert((vs[0], vs[1], vs[len]));
        }
        let mut ks = KStats {
            p: vec![0; n],
            q: vec![0; n],
            r: vec![0; n],
            p_prime: vec![0; n],
            q_prime: vec![0; n],
            r_prime: vec![0; n],
        };
        for &(x, y, z) in &first_family {
            ks.p[x as usize] += 1;
            ks.q[y as usize] += 1;
            ks.r[z as usize] += 1;
        }
        for &(x, y, z) in &second_family {
            ks.p_prime[x as usize] += 1;
            ks.q_prime[y as usize] += 1;
            ks.r_prime[z as usize] += 1;
        }
        per_k.push(ks);
    }
    Ok(TripleStats { m, n, per_k })
}

/// Which vertex/k pair and side realizes a ratio minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioArgmin {
    pub v: u32,
    pub k: usize,
    pub side: Side,
}

/// Minimum over all `(v, k)` of the defined exact ratios
/// `p_k(v) / s_k(v)` (outward) and `r'_k(v) / t_k(v)` (inward), compared
/// by cross-multiplication. Entries with a zero denominator are excluded.
///
/// Fails with [`Error::NoAdmissibleRatio`] when every denominator is zero,
/// which signals an acyclic or untrimmed input.
pub fn min_exact_ratio(g: &Digraph, m: usize) -> Result<(ExactRatio, RatioArgmin)> {
    let stats = triple_stats(g, m)?;
    min_exact_ratio_of(&stats)
}

/// Same as [`min_exact_ratio`], reusing precomputed statistics.
pub fn min_exact_ratio_of(stats: &TripleStats) -> Result<(ExactRatio, RatioArgmin)> {
    let mut best: Option<(ExactRatio, RatioArgmin)> = None;
    for v in 0..stats.vertex_count() as u32 {
        for k in stats.k_range() {
            let sides = [
                (Side::Out, stats.p(v, k)?, stats.s_exact(v, k)?),
                (Side::In, stats.r_prime(v, k)?, stats.t_exact(v, k)?),
            ];
            for (side, num, den) in sides {
                if den == 0 {
                    continue;
                }
                let ratio = ExactRatio::new(num, den);
                let arg = RatioArgmin { v, k, side };
                let better = match &best {
                    None => true,
                    Some((r, a)) => {
                        (ratio, side_rank(side), v, k) < (*r, side_rank(a.side), a.v, a.k)
                    }
                };
                if better {
                    best = Some((ratio, arg));
                }
            }
        }
    }
    best.ok_or(Error::NoAdmissibleRatio)
}

fn side_rank(side: Side) -> u8 {
    match side {
        Side::Out => 0,
        Side::In => 1,
    }
}

/// A failed identity or bound, with both sides of the comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatViolation {
    pub what: &'static str,
    pub vertex: Option<u32>,
    pub k: usize,
    pub lhs: u64,
    pub rhs: u64,
}

impl std::fmt::Display for StatViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.vertex {
            Some(v) => write!(
                f,
                "{} at v={} k={}: {} vs {}",
                self.what, v, self.k, self.lhs, self.rhs
            ),
            None => write!(f, "{} at k={}: {} vs {}", self.what, self.k, self.lhs, self.rhs),
        }
    }
}

/// A path vertex found outside the BFS layer its position dictates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDistanceViolation {
    pub i: usize,
    pub j: usize,
    pub expected: usize,
    pub out_ok: bool,
    pub in_ok: bool,
}

/// Checks that for all positions `i < j` of the path, `v_j` lies at
/// out-distance exactly `j - i` from `v_i` and `v_i` at in-distance
/// `j - i` from `v_j`. Holds for every genuine shortest induced path.
pub fn check_sip_distances(
    g: &Digraph,
    path: &ShortestInducedPath,
) -> Option<PathDistanceViolation> {
    let vs = path.vertices();
    let l = path.len();
    for i in 0..l {
        let out = layers::out_layers(g, vs[i], l).expect("path vertices are in range");
        for j in i + 1..=l {
            let expected = j - i;
            let out_ok = out.layer(expected).contains(vs[j]);
            let inn = layers::in_layers(g, vs[j], expected).expect("path vertices are in range");
            let in_ok = inn.layer(expected).contains(vs[i]);
            if !out_ok || !in_ok {
                return Some(PathDistanceViolation {
                    i,
                    j,
                    expected,
                    out_ok,
                    in_ok,
                });
            }
        }
    }
    None
}

/// Checks the per-k global sum identities: the three first-family sums
/// agree and the three second-family sums agree.
pub fn check_triple_sum_identities(stats: &TripleStats) -> Vec<StatViolation> {
    let mut out = Vec::new();
    for k in stats.k_range() {
        let ks = &stats.per_k[k - 1];
        let sums = [
            ("sum p_k vs sum q_k", TripleStats::sum(&ks.p), TripleStats::sum(&ks.q)),
            ("sum p_k vs sum r_k", TripleStats::sum(&ks.p), TripleStats::sum(&ks.r)),
            (
                "sum p'_k vs sum q'_k",
                TripleStats::sum(&ks.p_prime),
                TripleStats::sum(&ks.q_prime),
            ),
            (
                "sum p'_k vs sum r'_k",
                TripleStats::sum(&ks.p_prime),
                TripleStats::sum(&ks.r_prime),
            ),
        ];
        for (what, lhs, rhs) in sums {
            if lhs != rhs {
                out.push(StatViolation {
                    what,
                    vertex: None,
                    k,
                    lhs,
                    rhs,
                });
            }
        }
    }
    out
}

/// Checks, for every `(v, k)`, the two equalities tying enumeration counts
/// to layer cross-edge counts (`p` outward, `r'` inward) and the four
/// missing-edge upper bounds on `q`, `r`, `p'`, `q'`.
///
/// `g` must be the graph `stats` was computed from and must have girth
/// above `stats.m()`; a layer-disjointness failure is reported as a
/// violation rather than an error.
pub fn check_layer_formula_bounds(g: &Digraph, stats: &TripleStats) -> Vec<StatViolation> {
    let mut out = Vec::new();
    let m = stats.m();
    for v in 0..g.vertex_count() as u32 {
        let dec_out = layers::out_layers(g, v, m - 1).expect("v in range");
        let dec_in = layers::in_layers(g, v, m - 1).expect("v in range");
        for k in stats.k_range() {
            let checks: [(&'static str, u64, Result<u64>, bool); 6] = [
                (
                    "p_k(v) = |E(N+_{k+1}, N+_{k+2})|",
                    stats.p(v, k).unwrap(),
                    g.count_edges_between(dec_out.layer(k + 1), dec_out.layer(k + 2)),
                    true,
                ),
                (
                    "r'_k(v) = |E(N-_{k+2}, N-_{k+1})|",
                    stats.r_prime(v, k).unwrap(),
                    g.count_edges_between(dec_in.layer(k + 2), dec_in.layer(k + 1)),
                    true,
                ),
                (
                    "q_k(v) <= missing(N-_{k+1}, N+_1)",
                    stats.q(v, k).unwrap(),
                    g.missing_between(dec_in.layer(k + 1), dec_out.layer(1)),
                    false,
                ),
                (
                    "r_k(v) <= missing(N-_1, N-_{k+2})",
                    stats.r(v, k).unwrap(),
                    g.missing_between(dec_in.layer(1), dec_in.layer(k + 2)),
                    false,
                ),
                (
                    "p'_k(v) <= missing(N+_1, N+_{k+2})",
                    stats.p_prime(v, k).unwrap(),
                    g.missing_between(dec_out.layer(1), dec_out.layer(k + 2)),
                    false,
                ),
                (
                    "q'_k(v) <= missing(N+_{k+1}, N-_1)",
                    stats.q_prime(v, k).unwrap(),
                    g.missing_between(dec_out.layer(k + 1), dec_in.layer(1)),
                    false,
                ),
            ];
            for (what, lhs, rhs, exact) in checks {
                match rhs {
                    Ok(rhs) => {
                        let ok = if exact { lhs == rhs } else { lhs <= rhs };
                        if !ok {
                            out.push(StatViolation {
                                what,
                                vertex: Some(v),
                                k,
                                lhs,
                                rhs,
                            });
                        }
                    }
                    Err(_) => out.push(StatViolation {
                        what: "layer disjointness (girth precondition)",
                        vertex: Some(v),
                        k,
                        lhs,
                        rhs: 0,
                    }),
                }
            }
        }
    }
    out
}

/// Convenience for tests: the layer decomposition in a given direction.
pub fn layers_of(g: &Digraph, v: u32, depth: usize, direction: Direction) -> Result<crate::layers::LayerDecomposition> {
    match direction {
        Direction::Out => layers::out_layers(g, v, depth),
        Direction::In => layers::in_layers(g, v, depth),
    }
}
