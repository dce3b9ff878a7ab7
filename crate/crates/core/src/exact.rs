//! Ground-truth minimum feedback arc set for small graphs.
//!
//! Uses the ordering formulation: the minimum number of edges whose
//! removal leaves the graph acyclic equals the minimum, over all vertex
//! orderings, of the number of backward edges. A subset dynamic program
//! solves that in `O(2^n * n)`; an independent factorial brute force over
//! explicit permutations double-checks it for very small `n`.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Hard cap for the subset DP (table memory is `O(2^n)`).
pub const MAX_EXACT_VERTICES: usize = 24;

/// Hard cap for the factorial brute force.
pub const MAX_BRUTE_VERTICES: usize = 8;

struct DpTable {
    cost: Vec<u32>,
    best_last: Vec<u8>,
}

fn run_dp(g: &Digraph) -> Result<DpTable> {
    let n = g.vertex_count();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge(n));
    }
    let out_mask: Vec<u32> = (0..n as u32)
        .map(|v| {
            g.out_neighbors(v)
                .iter()
                .fold(0u32, |acc, &w| acc | (1 << w))
        })
        .collect();
    let size = 1usize << n;
    let mut cost = vec![0u32; size];
    let mut best_last = vec![0u8; size];
    for s in 1..size {
        let mut best = u32::MAX;
        let mut best_v = 0u8;
        let mut bits = s;
        // Ascending v keeps the smallest vertex on ties: placing v last
        // among s adds the out-edges of v into the rest of s as backward
        // edges.
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = s & !(1usize << v);
            let c = cost[prev] + (out_mask[v as usize] & prev as u32).count_ones();
            if c < best {
                best = c;
                best_v = v as u8;
            }
        }
        cost[s] = best;
        best_last[s] = best_v;
    }
    Ok(DpTable { cost, best_last })
}

/// The minimum feedback arc set size, exactly.
pub fn exact_fas_size(g: &Digraph) -> Result<u64> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let table = run_dp(g)?;
    Ok(table.cost[(1usize << n) - 1] as u64)
}

/// A witness set of [`exact_fas_size`] edges whose removal leaves `g`
/// acyclic, reported in `g`'s labels and sorted lexicographically.
/// Deterministic: ties in the DP place the smallest vertex id last.
pub fn exact_fas_edges(g: &Digraph) -> Result<Vec<(u32, u32)>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let table = run_dp(g)?;
    let mut position = vec![0usize; n];
    let mut s = (1usize << n) - 1;
    let mut pos = n;
    while s != 0 {
        let v = table.best_last[s] as usize;
        pos -= 1;
        position[v] = pos;
        s &= !(1usize << v);
    }
    let mut x: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| position[u as usize] > position[v as usize])
        .map(|(u, v)| (g.label(u), g.label(v)))
        .collect();
    x.sort_unstable();
    Ok(x)
}

/// The same minimum computed by enumerating all `n!` orderings; shares no
/// code with the DP path.
pub fn brute_force_check(g: &Digraph) -> Result<u64> {
    let n = g.vertex_count();
    if n > MAX_BRUTE_VERTICES {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Ok(0);
    }
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut best = u64::MAX;
    permute(&mut order, 0, &edges, &mut best);
    Ok(best)
}

fn permute(order: &mut Vec<u32>, at: usize, edges: &[(u32, u32)], best: &mut u64) {
    if at == order.len() {
        let mut position = vec![0usize; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v as usize] = i;
        }
        let backward = edges
            .iter()
            .filter(|&&(u, v)| position[u as usize] > position[v as usize])
            .count() as u64;
        *best = (*best).min(backward);
        return;
    }
    for i in at..order.len() {
        order.swap(at, i);
        permute(order, at + 1, edges, best);
        order.swap(at, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Digraph::build(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                if u != v {
                    edges.push((u, v));
                }
            }
        }
        Digraph::build(n, &edges).unwrap()
    }

    #[test]
    fn size_examples() {
        assert_eq!(exact_fas_size(&cycle(6)).unwrap(), 1);
        let mut edges: Vec<(u32, u32)> = vec![(0, 1), (1, 2), (2, 0)];
        edges.extend([(3, 4), (4, 5), (5, 3)]);
        let two_triangles = Digraph::build(6, &edges).unwrap();
        assert_eq!(exact_fas_size(&two_triangles).unwrap(), 2);
        assert_eq!(exact_fas_size(&complete(3)).unwrap(), 3);
    }

    #[test]
    fn size_matches_brute_force() {
        assert_eq!(brute_force_check(&complete(3)).unwrap(), 3);
        assert_eq!(brute_force_check(&cycle(5)).unwrap(), 1);
        assert_eq!(brute_force_check(&complete(4)).unwrap(), 6);
        assert_eq!(
            brute_force_check(&Digraph::build(5, &[]).unwrap()).unwrap(),
            0
        );
        for g in [cycle(5), cycle(6), complete(4), complete(5)] {
            assert_eq!(exact_fas_size(&g).unwrap(), brute_force_check(&g).unwrap());
        }
    }

    #[test]
    fn witness_edges() {
        // The tie rule (smallest vertex placed last) yields the ordering
        // [1, 2, 3, 4, 5, 0] on a 6-cycle, whose one backward edge is (0,1).
        assert_eq!(exact_fas_edges(&cycle(6)).unwrap(), vec![(0, 1)]);

        let dag = Digraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(exact_fas_edges(&dag).unwrap(), vec![]);

        let x = exact_fas_edges(&cycle(3)).unwrap();
        assert_eq!(x.len(), 1);
    }

    #[test]
    fn witness_is_minimal_and_acyclic() {
        for g in [cycle(3), cycle(6), complete(4)] {
            let x = exact_fas_edges(&g).unwrap();
            assert_eq!(x.len() as u64, exact_fas_size(&g).unwrap());
            let keep: Vec<(u32, u32)> = g.edges().filter(|e| !x.contains(e)).collect();
            let h = Digraph::build(g.vertex_count(), &keep).unwrap();
            assert!(h.is_acyclic().is_ok());
            // No proper subset suffices: adding back any witness edge
            // recreates a cycle.
            for &(u, v) in &x {
                let mut partial = keep.clone();
                partial.push((u, v));
                let h = Digraph::build(g.vertex_count(), &partial).unwrap();
                assert!(h.is_acyclic().is_err(), "witness edge ({u},{v}) is redundant");
            }
        }
    }

    #[test]
    fn guards() {
        let big = Digraph::build(25, &[]).unwrap();
        assert!(matches!(exact_fas_size(&big), Err(Error::TooLarge(25))));
        let mid = Digraph::build(9, &[]).unwrap();
        assert!(matches!(brute_force_check(&mid), Err(Error::TooLarge(9))));
    }

    #[test]
    fn monotone_under_edge_addition() {
        let g = cycle(6);
        let mut edges: Vec<(u32, u32)> = g.edges().collect();
        edges.push((0, 3));
        let bigger = Digraph::build(6, &edges).unwrap();
        assert!(exact_fas_size(&bigger).unwrap() >= exact_fas_size(&g).unwrap());
    }
}
