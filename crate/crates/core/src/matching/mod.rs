//! Matchings: maximum cardinality (Edmonds' blossom search), exhaustive
//! enumeration by size, minimum vertex-cost matchings of a fixed size, and
//! the Gallai-Edmonds decomposition.

mod ged;
mod min_cost;
mod weighted;

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{normalize, Coalition, Edge, Graph};
use crate::Rational;

pub use ged::{gallai_edmonds, GedDecomposition};
pub use min_cost::min_cost_matching_of_size;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, normalized and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    /// `None` when two edges share a vertex or an edge is a loop.
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Option<Matching> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        let mut seen = Coalition::new();
        for &(u, v) in &edges {
            if u == v || !seen.insert(u) || !seen.insert(v) {
                return None;
            }
        }
        Some(Matching { edges })
    }

    /// Builds the matching from a symmetric mate table.
    pub fn from_mates(mate: &[Option<usize>]) -> Matching {
        let edges = mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        Matching { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self) -> Coalition {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| match () {
            _ if a == v => Some(b),
            _ if b == v => Some(a),
            _ => None,
        })
    }

    /// Every edge belongs to `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }

    /// `sum over (i, j) in M of c_i + c_j`.
    pub fn cost(&self, costs: &[Rational]) -> Rational {
        self.edges
            .iter()
            .map(|&(u, v)| &costs[u] + &costs[v])
            .sum()
    }

    /// Relabels vertices through `map` (new index to old index).
    pub fn mapped(&self, map: &[usize]) -> Matching {
        Matching::from_edges(self.edges.iter().map(|&(u, v)| (map[u], map[v])))
            .expect("relabelling is injective")
    }
}

/// A maximum cardinality matching.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mate = maximum_mates(g);
    let mates: Vec<Option<usize>> = mate.iter().map(|&m| (m != NONE).then_some(m)).collect();
    Matching::from_mates(&mates)
}

/// Size of a maximum matching of `G[S]`.
///
/// Panics when `s` has a member outside the graph.
pub fn max_matching_size_in(g: &Graph, s: &Coalition) -> usize {
    let (sub, _) = g
        .induced_subgraph(s)
        .expect("coalition members must be vertices of the graph");
    maximum_matching(&sub).len()
}

fn maximum_mates(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut mate = vec![NONE; n];
    for &(u, v) in g.edges() {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(mut u) = search.augmenting_path(g, &mate, root) {
            while u != NONE {
                let pv = search.parent[u];
                let next = mate[pv];
                mate[u] = pv;
                mate[pv] = u;
                u = next;
            }
        }
    }
    mate
}

/// Alternating-tree search from one exposed root, contracting odd cycles
/// by relabelling their vertices with a common base.
struct BlossomSearch {
    used: Vec<bool>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            used: vec![false; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// The exposed endpoint of an augmenting path from `root`, if any; the
    /// path is recovered through `parent` and `mate`.
    fn augmenting_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.vertex_count();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lowest_common_base(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    self.used[mate[to]] = true;
                    self.queue.push_back(mate[to]);
                }
            }
        }
        None
    }

    fn lowest_common_base(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }
}

/// Matchings of one size, in lexicographic order of their sorted edge lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingEnumeration {
    pub matchings: Vec<Matching>,
    /// More matchings exist beyond the limit.
    pub truncated: bool,
}

/// Every matching of exactly `t` edges, stopping after `limit` of them.
pub fn enumerate_matchings_of_size(g: &Graph, t: usize, limit: Option<usize>) -> MatchingEnumeration {
    let mut out = MatchingEnumeration {
        matchings: Vec::new(),
        truncated: false,
    };
    let mut used = vec![false; g.vertex_count()];
    let mut chosen = Vec::with_capacity(t);
    extend(g, t, limit, 0, &mut used, &mut chosen, &mut out);
    out
}

fn extend(
    g: &Graph,
    t: usize,
    limit: Option<usize>,
    from: usize,
    used: &mut [bool],
    chosen: &mut Vec<Edge>,
    out: &mut MatchingEnumeration,
) {
    if out.truncated {
        return;
    }
    if chosen.len() == t {
        if limit.map_or(false, |l| out.matchings.len() >= l) {
            out.truncated = true;
        } else {
            out.matchings.push(Matching {
                edges: chosen.clone(),
            });
        }
        return;
    }
    let edges = g.edges();
    let need = t - chosen.len();
    for k in from..edges.len() {
        if edges.len() - k < need {
            break;
        }
        let (u, v) = edges[k];
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        chosen.push((u, v));
        extend(g, t, limit, k + 1, used, chosen, out);
        chosen.pop();
        used[u] = false;
        used[v] = false;
        if out.truncated {
            return;
        }
    }
}
