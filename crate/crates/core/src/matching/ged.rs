use std::collections::VecDeque;

use serde::Serialize;

use super::{max_matching_size_in, maximum_matching, Matching};
use crate::graph::{Coalition, Graph};

/// Gallai-Edmonds structure of a graph.
///
/// `D` is the set of vertices missed by some maximum matching, `A` its
/// outside neighbourhood, and `C` the rest. Components of `G[D]` are the
/// odd components, components of `G[C]` the even ones. `G0` keeps only the
/// edges between `A` and the singleton odd components `D0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GedDecomposition {
    pub tutte_set: Coalition,
    pub even_components: Vec<Coalition>,
    pub odd_components: Vec<Coalition>,
    pub singletons: Coalition,
    /// `G0`, relabelled; `bipartite_vertices[k]` is the original index of
    /// its vertex `k`.
    #[serde(skip)]
    pub bipartite_graph: Graph,
    #[serde(skip)]
    pub bipartite_vertices: Vec<usize>,
    /// Maximum matching of `G0`, in original indices.
    pub m0: Matching,
    pub a1: Coalition,
    pub a2: Coalition,
    pub d01: Coalition,
    pub d02: Coalition,
    pub max_matching_size: usize,
}

/// Canonical decomposition: `D` by `n + 1` maximum matching computations.
pub fn gallai_edmonds(g: &Graph) -> GedDecomposition {
    let n = g.vertex_count();
    let v_star = maximum_matching(g).len();
    let all = g.vertices();
    let d: Coalition = (0..n)
        .filter(|&i| {
            let mut rest = all.clone();
            rest.remove(i);
            max_matching_size_in(g, &rest) == v_star
        })
        .collect();
    let a: Coalition = d
        .iter()
        .flat_map(|i| g.neighbors(i).iter().copied())
        .filter(|j| !d.contains(*j))
        .collect();
    let c = all.difference(&d).difference(&a);

    let components_of = |s: &Coalition| -> Vec<Coalition> {
        let (sub, map) = g.induced_subgraph(s).expect("subset of vertices");
        sub.connected_components()
            .into_iter()
            .map(|comp| comp.iter().map(|k| map[k]).collect())
            .collect()
    };
    let odd_components = components_of(&d);
    let even_components = components_of(&c);
    let singletons: Coalition = odd_components
        .iter()
        .filter(|comp| comp.len() == 1)
        .flat_map(|comp| comp.iter())
        .collect();

    let g0_vertices = a.union(&singletons);
    let (induced, map) = g.induced_subgraph(&g0_vertices).expect("subset of vertices");
    let bipartite_graph = induced.without_edges(|(u, v)| a.contains(map[u]) && a.contains(map[v]));
    let m0 = maximum_matching(&bipartite_graph).mapped(&map);
    let covered = m0.covered();
    let a1 = a.intersection(&covered);
    let d01 = singletons.intersection(&covered);

    GedDecomposition {
        a2: a.difference(&a1),
        d02: singletons.difference(&d01),
        tutte_set: a,
        even_components,
        odd_components,
        singletons,
        bipartite_graph,
        bipartite_vertices: map,
        m0,
        a1,
        d01,
        max_matching_size: v_star,
    }
}

impl GedDecomposition {
    /// Vertices of `G0` reachable from `D02` by `M0`-alternating paths,
    /// including `D02` itself. Paths leave a singleton by a non-matching
    /// edge and leave `A` by its matching edge.
    pub fn reachable_from_d02(&self) -> Coalition {
        let g0 = &self.bipartite_graph;
        let map = &self.bipartite_vertices;
        let local = |orig: usize| map.binary_search(&orig).expect("vertex of G0");
        let mut mate = vec![None; g0.vertex_count()];
        for &(u, v) in self.m0.edges() {
            mate[local(u)] = Some(local(v));
            mate[local(v)] = Some(local(u));
        }
        let mut seen = vec![false; g0.vertex_count()];
        let mut queue: VecDeque<usize> = self.d02.iter().map(local).collect();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(x) = queue.pop_front() {
            let next: Vec<usize> = if self.tutte_set.contains(map[x]) {
                mate[x].into_iter().collect()
            } else {
                g0.neighbors(x).iter().copied().filter(|&y| mate[x] != Some(y)).collect()
            };
            for y in next {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..g0.vertex_count()).filter(|&k| seen[k]).map(|k| map[k]).collect()
    }

    /// Checks every structural property of the decomposition against `g`.
    pub fn check_invariants(&self, g: &Graph) -> Result<(), String> {
        let n = g.vertex_count();
        let v_star = maximum_matching(g).len();
        if self.max_matching_size != v_star {
            return Err(format!("v* is {}, expected {v_star}", self.max_matching_size));
        }

        let mut seen = Coalition::new();
        let parts = std::iter::once(&self.tutte_set)
            .chain(&self.even_components)
            .chain(&self.odd_components);
        for part in parts {
            if !seen.is_disjoint(part) {
                return Err(format!("{part:?} overlaps another part"));
            }
            seen = seen.union(part);
        }
        if seen != g.vertices() {
            return Err("parts do not cover the vertex set".into());
        }
        if let Some(b) = self.even_components.iter().find(|b| b.len() % 2 == 1) {
            return Err(format!("even component {b:?} has odd size"));
        }
        if let Some(d) = self.odd_components.iter().find(|d| d.len() % 2 == 0) {
            return Err(format!("odd component {d:?} has even size"));
        }
        for d in &self.odd_components {
            for k in d.iter() {
                let mut rest = d.clone();
                rest.remove(k);
                if 2 * max_matching_size_in(g, &rest) != rest.len() {
                    return Err(format!("{d:?} is not factor-critical at {k}"));
                }
            }
        }

        let tutte = self.even_components.iter().map(|b| b.len() / 2).sum::<usize>()
            + self.tutte_set.len()
            + self.odd_components.iter().map(|d| (d.len() - 1) / 2).sum::<usize>();
        if tutte != v_star {
            return Err(format!("Tutte identity gives {tutte}, v* is {v_star}"));
        }

        let d_vertices: Coalition = self.odd_components.iter().flat_map(|d| d.iter()).collect();
        for i in 0..n {
            let mut rest = g.vertices();
            rest.remove(i);
            let exposable = max_matching_size_in(g, &rest) == v_star;
            if exposable != d_vertices.contains(i) {
                return Err(format!("vertex {i}: exposable = {exposable} disagrees with membership"));
            }
        }
        if n - d_vertices.len() != self.tutte_set.len() + self.even_components.iter().map(Coalition::len).sum::<usize>() {
            return Err("|A ∪ V(B)| differs from n minus the exposable count".into());
        }
        if !self.odd_components.is_empty() && self.tutte_set.len() >= self.odd_components.len() {
            return Err(format!(
                "|A| = {} is not below the {} odd components",
                self.tutte_set.len(),
                self.odd_components.len()
            ));
        }

        let singletons: Coalition = self
            .odd_components
            .iter()
            .filter(|d| d.len() == 1)
            .flat_map(|d| d.iter())
            .collect();
        if singletons != self.singletons {
            return Err("D0 is not the union of singleton odd components".into());
        }
        let g0_vertices = self.tutte_set.union(&self.singletons);
        if self.bipartite_vertices != g0_vertices.members() {
            return Err("G0 vertex map is not A ∪ D0".into());
        }
        let map = &self.bipartite_vertices;
        let expected: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| {
                (self.tutte_set.contains(u) && self.singletons.contains(v))
                    || (self.singletons.contains(u) && self.tutte_set.contains(v))
            })
            .collect();
        let mut actual: Vec<(usize, usize)> = self
            .bipartite_graph
            .edges()
            .iter()
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        actual.sort_unstable();
        if actual != expected {
            return Err("G0 edges are not the A-D0 cross edges".into());
        }
        if !self.m0.is_valid_in(g) || !self.m0.edges().iter().all(|e| expected.contains(e)) {
            return Err("M0 is not a matching of G0".into());
        }
        if self.m0.len() != maximum_matching(&self.bipartite_graph).len() {
            return Err("M0 is not maximum in G0".into());
        }
        let covered = self.m0.covered();
        if self.a1 != self.tutte_set.intersection(&covered)
            || self.a2 != self.tutte_set.difference(&covered)
            || self.d01 != self.singletons.intersection(&covered)
            || self.d02 != self.singletons.difference(&covered)
        {
            return Err("A1/A2/D01/D02 do not follow M0 coverage".into());
        }
        Ok(())
    }
}
