//! BFS distance-class decompositions and the layer-based counts the solver
//! runs on.
//!
//! For a vertex `v`, layer `i` of the outward decomposition holds exactly
//! the vertices whose shortest directed distance from `v` is `i` (and the
//! inward decomposition mirrors this with distance *to* `v`). The solver's
//! split numerators are cross-edge counts between consecutive layers
//! ([`p_layer`], [`rprime_layer`]); its denominators are the missing-edge
//! sums [`s_surrogate`] and [`t_surrogate`], which sit between the exact
//! enumeration denominators and the missing-pair count of the induced
//! partition, so a candidate certified against a surrogate is certified
//! against the partition itself.

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Out,
    In,
}

/// Distance classes from/to a root, up to a depth cap. `layers[0]` is the
/// root itself; `layers[i]` may be empty once the reachable set is
/// exhausted. The vector always has `depth_cap + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub root: u32,
    pub direction: Direction,
    pub depth_cap: usize,
    layers: Vec<VertexSet>,
}

impl LayerDecomposition {
    /// The vertices at exact distance `i` (empty beyond the cap).
    pub fn layer(&self, i: usize) -> &VertexSet {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    /// Union of layers `lo..=hi` (indices clamped to the cap).
    pub fn union_range(&self, lo: usize, hi: usize) -> VertexSet {
        let mut all = Vec::new();
        for i in lo..=hi.min(self.depth_cap) {
            all.extend(self.layers[i].iter());
        }
        VertexSet::new(all)
    }
}

fn bfs_layers(g: &Digraph, root: u32, depth_cap: usize, direction: Direction) -> LayerDecomposition {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[root as usize] = 0;
    let mut frontier = vec![root];
    let mut layers: Vec<Vec<u32>> = vec![frontier.clone()];
    for depth in 1..=depth_cap {
        let mut next = Vec::new();
        for &u in &frontier {
            let neighbors = match direction {
                Direction::Out => g.out_neighbors(u),
                Direction::In => g.in_neighbors(u),
            };
            for &w in neighbors {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = depth;
                    next.push(w);
                }
            }
        }
        layers.push(next.clone());
        frontier = next;
    }
    LayerDecomposition {
        root,
        direction,
        depth_cap,
        layers: layers.into_iter().map(VertexSet::new).collect(),
    }
}

fn check_root(g: &Digraph, v: u32) -> Result<()> {
    if (v as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange(v, g.vertex_count()))
    }
}

/// Distance classes reachable *from* `v`.
pub fn out_layers(g: &Digraph, v: u32, depth_cap: usize) -> Result<LayerDecomposition> {
    check_root(g, v)?;
    Ok(bfs_layers(g, v, depth_cap, Direction::Out))
}

/// Distance classes that reach `v`.
pub fn in_layers(g: &Digraph, v: u32, depth_cap: usize) -> Result<LayerDecomposition> {
    check_root(g, v)?;
    Ok(bfs_layers(g, v, depth_cap, Direction::In))
}

/// `|E(N+_{k+1}(v), N+_{k+2}(v))|`: the number of edges the outward split
/// at `(v, k)` would cut.
pub fn p_layer(g: &Digraph, v: u32, k: usize) -> Result<u64> {
    if k < 1 {
        return Err(Error::KOutOfRange(k));
    }
    let dec = out_layers(g, v, k + 2)?;
    g.count_edges_between(dec.layer(k + 1), dec.layer(k + 2))
}

/// `|E(N-_{k+2}(v), N-_{k+1}(v))|`: the inward mirror of [`p_layer`].
pub fn rprime_layer(g: &Digraph, v: u32, k: usize) -> Result<u64> {
    if k < 1 {
        return Err(Error::KOutOfRange(k));
    }
    let dec = in_layers(g, v, k + 2)?;
    g.count_edges_between(dec.layer(k + 2), dec.layer(k + 1))
}

fn check_k(k: usize, m: usize) -> Result<()> {
    if k < 1 || m < 4 || k > m - 3 {
        Err(Error::KOutOfRange(k))
    } else {
        Ok(())
    }
}

/// The outward surrogate denominator:
/// sum of `missing(N+_1, N+_i)` for `i` in `k+2..=m-1` plus
/// sum of `missing(N+_i, N-_1)` for `i` in `2..=k+1`.
///
/// Requires a trimmed graph whose girth exceeds `m`; the layer sets
/// involved are then pairwise disjoint.
pub fn s_surrogate(g: &Digraph, v: u32, k: usize, m: usize) -> Result<u64> {
    check_k(k, m)?;
    let out = out_layers(g, v, m - 1)?;
    let inn = in_layers(g, v, 1)?;
    surrogate_sum(g, &out, inn.layer(1), k, m)
}

/// The inward surrogate denominator, mirroring [`s_surrogate`].
pub fn t_surrogate(g: &Digraph, v: u32, k: usize, m: usize) -> Result<u64> {
    check_k(k, m)?;
    let inn = in_layers(g, v, m - 1)?;
    let out = out_layers(g, v, 1)?;
    surrogate_sum(g, &inn, out.layer(1), k, m)
}

/// Shared body of the two surrogates: `primary` is the deep decomposition
/// on the split side and `opposite_first` the distance-1 class of the other
/// direction.
pub(crate) fn surrogate_sum(
    g: &Digraph,
    primary: &LayerDecomposition,
    opposite_first: &VertexSet,
    k: usize,
    m: usize,
) -> Result<u64> {
    let mut total = 0u64;
    for i in k + 2..=m - 1 {
        total += g.missing_between(primary.layer(1), primary.layer(i))?;
    }
    for i in 2..=k + 1 {
        total += g.missing_between(primary.layer(i), opposite_first)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Digraph::build(n, &edges).unwrap()
    }

    fn two_cycles(n: usize) -> Digraph {
        let mut edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        for i in 0..n as u32 {
            edges.push((n as u32 + i, n as u32 + (i + 1) % n as u32));
        }
        Digraph::build(2 * n, &edges).unwrap()
    }

    fn sets(dec: &LayerDecomposition) -> Vec<Vec<u32>> {
        dec.layers().iter().map(|s| s.as_slice().to_vec()).collect()
    }

    #[test]
    fn cycle_out_layers() {
        let g = cycle(6);
        let dec = out_layers(&g, 0, 5).unwrap();
        assert_eq!(
            sets(&dec),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]]
        );
    }

    #[test]
    fn cycle_in_layers() {
        let g = cycle(6);
        let dec = in_layers(&g, 0, 2).unwrap();
        assert_eq!(sets(&dec), vec![vec![0], vec![5], vec![4]]);
    }

    #[test]
    fn star_out_layers_pad_empty() {
        let g = Digraph::build(3, &[(0, 1), (0, 2)]).unwrap();
        let dec = out_layers(&g, 0, 3).unwrap();
        assert_eq!(sets(&dec), vec![vec![0], vec![1, 2], vec![], vec![]]);
    }

    #[test]
    fn out_layers_rejects_bad_root() {
        let g = cycle(3);
        assert!(matches!(
            out_layers(&g, 9, 2),
            Err(Error::VertexOutOfRange(9, 3))
        ));
    }

    #[test]
    fn p_layer_examples() {
        assert_eq!(p_layer(&cycle(6), 0, 1).unwrap(), 1);
        let edgeless = Digraph::build(5, &[]).unwrap();
        assert_eq!(p_layer(&edgeless, 3, 1).unwrap(), 0);
        // Layers stay inside the root's component.
        assert_eq!(p_layer(&two_cycles(6), 0, 1).unwrap(), 1);
        assert!(matches!(
            p_layer(&cycle(6), 0, 0),
            Err(Error::KOutOfRange(0))
        ));
    }

    #[test]
    fn rprime_layer_examples() {
        assert_eq!(rprime_layer(&cycle(6), 0, 1).unwrap(), 1);
        // DAG sink: in-layers of 5 on a path 0->1->...->5.
        let path: Vec<(u32, u32)> = (0..5u32).map(|i| (i, i + 1)).collect();
        let dag = Digraph::build(6, &path).unwrap();
        // N-_2(5) = {3}, N-_3(5) = {2}; one edge (2,3) between them.
        assert_eq!(rprime_layer(&dag, 5, 1).unwrap(), 1);
        let isolated = Digraph::build(1, &[]).unwrap();
        assert_eq!(rprime_layer(&isolated, 0, 1).unwrap(), 0);
    }

    #[test]
    fn s_surrogate_examples() {
        assert_eq!(s_surrogate(&cycle(6), 0, 1, 4).unwrap(), 2);
        assert_eq!(s_surrogate(&cycle(7), 0, 1, 4).unwrap(), 2);
        // All cross pairs adjacent: complete digraph on 4 vertices.
        let mut edges = Vec::new();
        for u in 0..4u32 {
            for v in 0..4u32 {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        let complete = Digraph::build(4, &edges).unwrap();
        assert_eq!(s_surrogate(&complete, 0, 1, 4).unwrap(), 0);
    }

    #[test]
    fn t_surrogate_examples() {
        assert_eq!(t_surrogate(&cycle(6), 0, 1, 4).unwrap(), 2);
        assert_eq!(t_surrogate(&cycle(7), 0, 1, 4).unwrap(), 2);
        assert!(matches!(
            t_surrogate(&cycle(7), 0, 2, 4),
            Err(Error::KOutOfRange(2))
        ));
    }
}
