#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcmg_core::{Graph, Rational, TcmGame};
use tcmg_lp::ratio;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    graph(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    graph(n, &edges)
}

/// Left part `0..a`, right part `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    graph(a + b, &edges)
}

/// Centres 0 and 1; leaves 2, 3 on 0 and 4, 5 on 1.
pub fn double_star() -> Graph {
    graph(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &edges)
}

pub fn game(g: Graph, t: usize) -> TcmGame {
    TcmGame::new(g, t).unwrap()
}

pub fn q(p: i64, d: i64) -> Rational {
    ratio(p, d)
}

pub fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, d)| ratio(p, d)).collect()
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Seeded random graphs that may be disconnected or have isolated vertices.
pub fn random_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(0.1..0.8);
            let edges: Vec<_> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
            graph(n, &edges)
        })
        .collect()
}

pub fn random_costs<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n)
        .map(|_| if rng.gen_bool(0.15) { q(0, 1) } else { q(rng.gen_range(1..=12), rng.gen_range(1..=6)) })
        .collect()
}
