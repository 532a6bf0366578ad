//! Seeded generators for graph corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle::{is_negative_definite, is_rational};
use crate::graph::WeightedDualGraph;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labeled tree on `n` vertices, decoded from a random Prüfer sequence.
pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always remains");
        edges.push((leaf, c));
        degree[leaf] = 0;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Random tree with `1..=max_vertices` vertices and weights in `weights`,
/// resampled until the intersection matrix is negative definite.
pub fn random_negative_definite<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    weights: std::ops::RangeInclusive<i64>,
) -> WeightedDualGraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let edges = random_tree_edges(rng, n);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(weights.clone())).collect();
        let g = WeightedDualGraph::from_weights(&w, &edges).expect("generated trees are valid");
        if is_negative_definite(&g) {
            return g;
        }
    }
}

/// Random minimal graph: random tree on `2..=max_vertices` vertices, each
/// weight drawn from `max(valence, 2) ..= max(valence, 2) + slack`, kept only
/// if rational.
pub fn random_minimal<R: Rng>(rng: &mut R, max_vertices: usize, slack: i64) -> WeightedDualGraph {
    loop {
        let n = rng.gen_range(2..=max_vertices.max(2));
        let edges = random_tree_edges(rng, n);
        let mut valence = vec![0i64; n];
        for &(a, b) in &edges {
            valence[a] += 1;
            valence[b] += 1;
        }
        let w: Vec<i64> = valence
            .iter()
            .map(|&v| {
                let floor = v.max(2);
                rng.gen_range(floor..=floor + slack)
            })
            .collect();
        let g = WeightedDualGraph::from_weights(&w, &edges).expect("generated trees are valid");
        if is_negative_definite(&g) && is_rational(&g).unwrap_or(false) {
            return g;
        }
    }
}

/// Random auxiliary tree (weights may be 1), no definiteness filter.
pub fn random_auxiliary<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    weights: std::ops::RangeInclusive<i64>,
) -> WeightedDualGraph {
    let n = rng.gen_range(1..=max_vertices);
    let edges = random_tree_edges(rng, n);
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(weights.clone())).collect();
    WeightedDualGraph::auxiliary_from_weights(&w, &edges).expect("generated trees are valid")
}

/// `count` negative-definite trees from one seed.
pub fn negative_definite_corpus(
    seed: u64,
    count: usize,
    max_vertices: usize,
    weights: std::ops::RangeInclusive<i64>,
) -> Vec<WeightedDualGraph> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_negative_definite(&mut rng, max_vertices, weights.clone())).collect()
}

pub fn minimal_corpus(seed: u64, count: usize, max_vertices: usize) -> Vec<WeightedDualGraph> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_minimal(&mut rng, max_vertices, 2)).collect()
}
