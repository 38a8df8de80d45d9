//! Named graphs and seeded graph populations for cross-checking solvers.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tcmg_core::Graph;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generated edges are simple")
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn complete(n: usize) -> Graph {
    build(n, all_pairs(n))
}

pub fn cycle(n: usize) -> Graph {
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// Left part `0..a`, right part `a..a + b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

/// Centres 0 and 1; leaves 2, 3 on 0 and 4, 5 on 1.
pub fn double_star() -> Graph {
    build(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
}

pub fn petersen() -> Graph {
    build(10, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

/// One graph per isomorphism class on `n <= 7` vertices: the edge set whose
/// bitmask over the lexicographically ordered vertex pairs is smallest in
/// its class.
pub fn graphs_up_to_isomorphism(n: usize, connected_only: bool) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive enumeration is limited to 7 vertices");
    let pairs = all_pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let images: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let edges_of = |mask: u64| (0..pairs.len()).filter(move |&k| mask & (1 << k) != 0).map(|k| pairs[k]);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if connected_only && (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let is_canonical = images.iter().all(|img| {
            let image = (0..pairs.len()).filter(|&k| mask & (1 << k) != 0).fold(0u64, |acc, k| acc | 1 << img[k]);
            image >= mask
        });
        if !is_canonical {
            continue;
        }
        let g = build(n, edges_of(mask));
        if !connected_only || g.connected_components().len() == 1 {
            out.push(g);
        }
    }
    out
}

/// Seeded random connected graphs: a random spanning tree plus every other
/// pair independently with a density drawn per graph.
pub fn random_connected_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut edges: BTreeSet<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            let p = rng.gen_range(0.0..0.6);
            edges.extend(all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)));
            build(n, edges)
        })
        .collect()
}

/// Seeded random graphs, possibly disconnected.
pub fn random_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(0.1..0.8);
            let edges: Vec<_> = all_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
            build(n, edges)
        })
        .collect()
}

pub const SWEEP_SEED: u64 = 0x5eed;

/// Every connected graph on 3 to 6 vertices up to isomorphism, then
/// `random_n7` seeded random connected graphs on 7 vertices.
pub fn sweep_population(random_n7: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = (3..=6).flat_map(|n| graphs_up_to_isomorphism(n, true)).collect();
    out.extend(random_connected_graphs(7, random_n7, SWEEP_SEED));
    out
}
