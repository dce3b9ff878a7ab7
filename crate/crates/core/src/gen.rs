//! Seeded instance generators: directed cycles, circulants, cycle
//! blow-ups, and repaired random digraphs.
//!
//! Reproducibility is part of the contract. Randomness comes from
//! SplitMix64, a fixed, publicly specified 64-bit generator, and the
//! stream discipline is documented on each generator, so equal parameters
//! and seed produce bit-identical graphs on every platform.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// SplitMix64. State advances by the golden-gamma constant and each output
/// is a finalized mix of the new state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Bernoulli draw with exact rational probability `num/den`:
    /// accepts iff `draw * den < num * 2^64`. One draw is consumed
    /// regardless of the outcome.
    pub fn bernoulli(&mut self, num: u64, den: u64) -> bool {
        let draw = self.next_u64();
        (draw as u128) * (den as u128) < (num as u128) << 64
    }
}

/// Which family an instance comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GenModel {
    Cycle,
    Circulant { steps: Vec<u32> },
    Blowup { base_len: usize, sizes: Vec<usize> },
    Er { p_num: u64, p_den: u64 },
}

impl GenModel {
    pub fn name(&self) -> &'static str {
        match self {
            GenModel::Cycle => "cycle",
            GenModel::Circulant { .. } => "circulant",
            GenModel::Blowup { .. } => "blowup",
            GenModel::Er { .. } => "er",
        }
    }
}

/// A fully reproducible instance description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: GenModel,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn cycle(n: usize, m: usize) -> Self {
        GenSpec {
            model: GenModel::Cycle,
            n,
            m,
            seed: 0,
        }
    }

    pub fn circulant(n: usize, steps: Vec<u32>, m: usize) -> Self {
        GenSpec {
            model: GenModel::Circulant { steps },
            n,
            m,
            seed: 0,
        }
    }

    pub fn blowup(base_len: usize, sizes: Vec<usize>, m: usize) -> Self {
        let n = sizes.iter().sum();
        GenSpec {
            model: GenModel::Blowup { base_len, sizes },
            n,
            m,
            seed: 0,
        }
    }

    pub fn er(n: usize, p_num: u64, p_den: u64, m: usize, seed: u64) -> Self {
        GenSpec {
            model: GenModel::Er { p_num, p_den },
            n,
            m,
            seed,
        }
    }

    pub fn generate(&self) -> Result<Digraph> {
        match &self.model {
            GenModel::Cycle => {
                if self.n < 2 {
                    return Err(Error::BadSizes(format!(
                        "a directed cycle needs at least 2 vertices, got n = {}",
                        self.n
                    )));
                }
                Ok(gen_cycle(self.n))
            }
            GenModel::Circulant { steps } => gen_circulant(self.n, steps),
            GenModel::Blowup { base_len, sizes } => {
                let g = gen_blowup(*base_len, sizes)?;
                if g.vertex_count() != self.n {
                    return Err(Error::BadSizes(format!(
                        "sizes sum to {}, spec says n = {}",
                        g.vertex_count(),
                        self.n
                    )));
                }
                Ok(g)
            }
            GenModel::Er { p_num, p_den } => {
                Ok(gen_er_repair(self.n, *p_num, *p_den, self.m, self.seed))
            }
        }
    }
}

/// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`. Girth `n`.
pub fn gen_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "a directed cycle needs at least 2 vertices");
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Digraph::build(n, &edges).expect("cycle edges are valid")
}

/// Edges `i -> (i + s) mod n` for every vertex `i` and step `s`.
pub fn gen_circulant(n: usize, steps: &[u32]) -> Result<Digraph> {
    let mut sorted = steps.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::BadStep(w[0]));
        }
    }
    for &s in steps {
        if s == 0 || s as usize >= n {
            return Err(Error::BadStep(s));
        }
    }
    let mut edges = Vec::with_capacity(n * steps.len());
    for i in 0..n as u32 {
        for &s in &sorted {
            edges.push((i, (i + s) % n as u32));
        }
    }
    Digraph::build(n, &edges)
}

/// Replaces vertex `i` of a directed `base_len`-cycle by an independent
/// class of `sizes[i]` vertices; every class-`i` vertex points to every
/// class-`i+1` vertex. Classes are laid out consecutively, so vertices
/// `0..sizes[0]` form class 0 and so on. Girth = `base_len`.
pub fn gen_blowup(base_len: usize, sizes: &[usize]) -> Result<Digraph> {
    if base_len < 3 {
        return Err(Error::BadSizes(format!("base length {base_len} below 3")));
    }
    if sizes.len() != base_len {
        return Err(Error::BadSizes(format!(
            "{} sizes for a base cycle of length {base_len}",
            sizes.len()
        )));
    }
    if sizes.contains(&0) {
        return Err(Error::BadSizes("class sizes must be positive".into()));
    }
    let mut start = Vec::with_capacity(base_len + 1);
    start.push(0u32);
    for &s in sizes {
        start.push(start.last().unwrap() + s as u32);
    }
    let n = *start.last().unwrap() as usize;
    let mut edges = Vec::new();
    for c in 0..base_len {
        let next = (c + 1) % base_len;
        for u in start[c]..start[c + 1] {
            for v in start[next]..start[next + 1] {
                edges.push((u, v));
            }
        }
    }
    Digraph::build(n, &edges)
}

/// Samples each ordered non-loop pair `(u, v)` independently with
/// probability `p_num/p_den`, then repairs: while some directed cycle of
/// length at most `m` remains, delete the lexicographically smallest edge
/// of a shortest such cycle.
///
/// Stream discipline: pairs are visited in lexicographic order
/// (`u` outer, `v` inner, skipping `u == v`) and exactly one SplitMix64
/// draw is consumed per pair, whatever the outcome.
pub fn gen_er_repair(n: usize, p_num: u64, p_den: u64, m: usize, seed: u64) -> Digraph {
    assert!(p_den > 0 && p_num <= p_den, "probability must be in [0, 1]");
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v {
                continue;
            }
            if rng.bernoulli(p_num, p_den) {
                edges.push((u, v));
            }
        }
    }
    let mut g = Digraph::build(n, &edges).expect("sampled pairs are simple");
    while let Err(witness) = g.check_m_free(m) {
        let vs = witness.vertices();
        let cycle_edges = vs
            .iter()
            .enumerate()
            .map(|(i, &u)| (u, vs[(i + 1) % vs.len()]));
        let (u, v) = cycle_edges.min().expect("witness cycles are nonempty");
        g = g.without_edge(u, v);
    }
    g
}

/// The seeded corpus used by the benchmark command and the acceptance
/// suite: every model, `m` in `{4, 5, 6}`, `n` in `[8, 40]`.
pub fn standard_corpus() -> Vec<GenSpec> {
    let mut specs = Vec::new();
    for m in [4usize, 5, 6] {
        for n in [8usize, 9, 10, 11, 12, 13, 14, 17, 20, 24, 28, 33, 40] {
            specs.push(GenSpec::cycle(n, m));
        }
        // Steps {1, 2} give girth ceil(n / 2), so n >= 2m + 1 keeps the
        // instance m-free.
        let circulant_ns: &[usize] = match m {
            4 => &[9, 10, 12, 14, 16, 20, 26, 32, 40],
            5 => &[11, 12, 14, 18, 24, 30, 38],
            _ => &[13, 14, 16, 22, 28, 36, 40],
        };
        for &n in circulant_ns {
            specs.push(GenSpec::circulant(n, vec![1, 2], m));
        }
        for base in [m + 1, m + 2, m + 3] {
            specs.push(GenSpec::blowup(base, vec![2; base], m));
            let mixed: Vec<usize> = (0..base).map(|i| 1 + i % 3).collect();
            specs.push(GenSpec::blowup(base, mixed, m));
        }
        specs.push(GenSpec::blowup(m + 1, vec![3; m + 1], m));
        for n in 8..=14 {
            for seed in 1..=5 {
                specs.push(GenSpec::er(n, 3, 10, m, seed));
            }
        }
        for n in [16usize, 20, 26, 32, 40] {
            for seed in 1..=2 {
                specs.push(GenSpec::er(n, 3, 20, m, seed));
            }
        }
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_girths() {
        assert_eq!(gen_cycle(6).girth().unwrap().0, 6);
        assert_eq!(gen_cycle(2).girth().unwrap().0, 2);
        // Smallest m-free cycle: n = m + 1.
        for m in [4usize, 5, 6] {
            assert!(gen_cycle(m + 1).check_m_free(m).is_ok());
        }
    }

    #[test]
    fn circulant_examples() {
        let g = gen_circulant(7, &[1, 2]).unwrap();
        assert_eq!(g.girth().unwrap().0, 4);
        let g = gen_circulant(8, &[1]).unwrap();
        assert_eq!(g.girth().unwrap().0, 8);
        // Step n/2 pairs vertices into 2-cycles.
        let g = gen_circulant(6, &[3]).unwrap();
        assert_eq!(g.girth().unwrap().0, 2);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn circulant_rejects_bad_steps() {
        assert!(matches!(gen_circulant(6, &[0]), Err(Error::BadStep(0))));
        assert!(matches!(gen_circulant(6, &[6]), Err(Error::BadStep(6))));
        assert!(matches!(gen_circulant(6, &[2, 2]), Err(Error::BadStep(2))));
    }

    #[test]
    fn blowup_examples() {
        let g = gen_blowup(5, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(g, gen_cycle(5));
        let g = gen_blowup(5, &[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.girth().unwrap().0, 5);
        let g = gen_blowup(6, &[1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(g.girth().unwrap().0, 6);
    }

    #[test]
    fn blowup_rejects_bad_sizes() {
        assert!(gen_blowup(2, &[1, 1]).is_err());
        assert!(gen_blowup(5, &[1, 1, 1]).is_err());
        assert!(gen_blowup(4, &[1, 0, 1, 1]).is_err());
    }

    #[test]
    fn er_repair_properties() {
        let g = gen_er_repair(12, 0, 1, 4, 7);
        assert_eq!(g.edge_count(), 0);
        let g = gen_er_repair(12, 3, 10, 4, 1);
        assert!(g.check_m_free(4).is_ok());
        let h = gen_er_repair(12, 3, 10, 4, 1);
        assert_eq!(g, h);
        let different = gen_er_repair(12, 3, 10, 4, 2);
        assert_ne!(g, different);
    }

    #[test]
    fn splitmix_reference_stream() {
        // Published test vector for seed 1234567.
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }

    #[test]
    fn corpus_shape() {
        let corpus = standard_corpus();
        assert!(corpus.len() >= 200, "corpus has {}", corpus.len());
        for spec in &corpus {
            assert!((8..=40).contains(&spec.n));
            assert!([4, 5, 6].contains(&spec.m));
        }
        let models: std::collections::BTreeSet<&str> =
            corpus.iter().map(|s| s.model.name()).collect();
        assert_eq!(
            models.into_iter().collect::<Vec<_>>(),
            vec!["blowup", "circulant", "cycle", "er"]
        );
    }

    #[test]
    fn corpus_instances_are_m_free() {
        for spec in standard_corpus() {
            let g = spec.generate().unwrap();
            assert_eq!(g.vertex_count(), spec.n);
            assert!(
                g.check_m_free(spec.m).is_ok(),
                "{:?} is not {}-free",
                spec,
                spec.m
            );
        }
    }
}
