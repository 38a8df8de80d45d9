//! Simple undirected graphs over dense vertex indices, vertex subsets, and
//! the two text formats graphs are read from.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Deserialize;

use crate::error::GraphError;

/// A set of vertex indices, stored as a bitset.
///
/// Trailing zero words are trimmed, so equal sets compare equal whatever
/// universe they were built for. Ordering compares the ascending member
/// lists lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Coalition {
    words: Vec<u64>,
}

impl Coalition {
    pub fn new() -> Self {
        Coalition { words: Vec::new() }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut c = Coalition { words: vec![mask] };
        c.trim();
        c
    }

    /// The set as a single machine word, when every member is below 64.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .map_or(false, |w| w & (1u64 << (i % 64)) != 0)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let bit = 1u64 << (i % 64);
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let Some(word) = self.words.get_mut(i / 64) else {
            return false;
        };
        let bit = 1u64 << (i % 64);
        let present = *word & bit != 0;
        *word &= !bit;
        self.trim();
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        let (w, word) = self.words.iter().enumerate().rev().find(|(_, w)| **w != 0)?;
        Some(w * 64 + 63 - word.leading_zeros() as usize)
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        let len = self.words.len().max(other.words.len());
        let mut words = vec![0; len];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0);
        }
        Coalition { words }
    }

    pub fn intersection(&self, other: &Coalition) -> Coalition {
        let mut c = Coalition {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        c.trim();
        c
    }

    pub fn difference(&self, other: &Coalition) -> Coalition {
        let mut c = Coalition {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        c.trim();
        c
    }

    pub fn is_disjoint(&self, other: &Coalition) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.difference(other).is_empty()
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> Coalition {
        Coalition::full(n).difference(self)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut c = Coalition::new();
        for i in iter {
            c.insert(i);
        }
        c
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Serializes as the ascending member array.
impl serde::Serialize for Coalition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Unordered vertex pair, normalized so that `0 < 1`.
pub type Edge = (usize, usize);

pub fn normalize(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

/// Where in the input a graph error was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Line(usize),
    LineColumn(usize, usize),
    EdgeIndex(usize),
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Line(l) => write!(f, "line {l}"),
            Position::LineColumn(l, c) => write!(f, "line {l}, column {c}"),
            Position::EdgeIndex(k) => write!(f, "edge #{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    EdgeList,
}

impl Graph {
    /// Validates the edge list: endpoints in range, no self-loops, no
    /// duplicate pairs. Errors carry the offending edge's index.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let located = edges
            .into_iter()
            .enumerate()
            .map(|(k, e)| (e, Position::EdgeIndex(k)));
        Graph::build(n, located)
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = ((usize, usize), Position)>,
    ) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for ((u, v), at) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n, at });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u, at });
            }
            if !seen.insert(normalize(u, v)) {
                let (u, v) = normalize(u, v);
                return Err(GraphError::DuplicateEdge { u, v, at });
            }
        }
        let edges: Vec<Edge> = seen.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges with the smaller endpoint first, sorted lexicographically.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    pub fn vertices(&self) -> Coalition {
        Coalition::full(self.n)
    }

    /// `G[S]`, relabelled to `0..|S|`, with the map from new to old indices.
    pub fn induced_subgraph(&self, s: &Coalition) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(max) = s.last() {
            if max >= self.n {
                return Err(GraphError::OutOfRange {
                    vertex: max,
                    n: self.n,
                    at: Position::EdgeIndex(0),
                });
            }
        }
        let map = s.members();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| s.contains(*u) && s.contains(*v))
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::new(map.len(), edges).expect("induced edges are valid");
        Ok((g, map))
    }

    /// The graph with the edges in `drop` removed.
    pub fn without_edges(&self, drop: impl Fn(Edge) -> bool) -> Graph {
        let edges: Vec<Edge> = self.edges.iter().copied().filter(|&e| !drop(e)).collect();
        Graph::new(self.n, edges).expect("subset of valid edges")
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Coalition> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = Coalition::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// A proper 2-colouring, `true` on the left part, or `None` when the
    /// graph has an odd cycle. The smallest vertex of every component goes
    /// to the left part.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for &w in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn isolated_vertices(&self) -> Coalition {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
        match format {
            GraphFormat::Json => parse_json(text),
            GraphFormat::EdgeList => parse_edgelist(text),
        }
    }

    /// `{"n":..,"edges":[[u,v],..]}` with edges normalized and sorted.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "n": self.n, "edges": self.edges }).to_string()
    }

    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        at: Position::LineColumn(e.line(), e.column()),
        message: e.to_string(),
    })?;
    Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
}

fn parse_edgelist(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = Position::Line(lineno + 1);
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Syntax {
                at,
                message: format!("expected `u v`, found `{line}`"),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| GraphError::Syntax {
                at: at.clone(),
                message: format!("`{field}` is not a vertex index"),
            })?;
        }
        n = n.max(ends[0] + 1).max(ends[1] + 1);
        edges.push(((ends[0], ends[1]), at));
    }
    Graph::build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn parses_triangle_json() {
        let g = Graph::parse(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#, GraphFormat::Json).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parses_path_edgelist() {
        let g = Graph::parse("0 1\n1 2", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let g = Graph::parse("# comment\n\n  2 0 \n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn rejects_invalid_graphs_with_positions() {
        let err = Graph::parse(r#"{"n":2,"edges":[[0,0]]}"#, GraphFormat::Json).unwrap_err();
        assert_eq!(
            err,
            GraphError::SelfLoop {
                vertex: 0,
                at: Position::EdgeIndex(0)
            }
        );
        let err = Graph::parse(r#"{"n":2,"edges":[[0,1],[1,0]]}"#, GraphFormat::Json).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { at: Position::EdgeIndex(1), .. }));
        let err = Graph::parse(r#"{"n":2,"edges":[[0,2]]}"#, GraphFormat::Json).unwrap_err();
        assert!(matches!(err, GraphError::OutOfRange { vertex: 2, .. }));
        let err = Graph::parse("{\"n\":2,\n\"edges\":[[0,1]", GraphFormat::Json).unwrap_err();
        assert!(matches!(err, GraphError::Syntax { at: Position::LineColumn(2, _), .. }));
        let err = Graph::parse("0 1\n1 x\n", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, GraphError::Syntax { at: Position::Line(2), .. }));
        let err = Graph::parse("0 1\n\n3 3\n", GraphFormat::EdgeList).unwrap_err();
        assert_eq!(
            err,
            GraphError::SelfLoop {
                vertex: 3,
                at: Position::Line(3)
            }
        );
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (g, map) = k3.induced_subgraph(&[0, 1].into_iter().collect()).unwrap();
        assert_eq!((g.vertex_count(), g.edges()), (2, &[(0, 1)][..]));
        assert_eq!(map, vec![0, 1]);
        let (g, _) = k3.induced_subgraph(&Coalition::from_mask(1)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let (g, map) = cycle(6).induced_subgraph(&[0, 2, 4].into_iter().collect()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));
        assert_eq!(map, vec![0, 2, 4]);
        assert!(k3.induced_subgraph(&[5].into_iter().collect()).is_err());
    }

    #[test]
    fn components_are_ordered_by_smallest_member() {
        let g = Graph::new(4, [(2, 3), (0, 1)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![[0, 1].into_iter().collect(), [2, 3].into_iter().collect::<Coalition>()]
        );
        assert_eq!(cycle(6).connected_components(), vec![Coalition::full(6)]);
        assert_eq!(Graph::empty(3).connected_components().len(), 3);
    }

    #[test]
    fn bipartition_puts_smallest_vertex_left() {
        let side = cycle(6).bipartition().unwrap();
        assert_eq!(side, vec![true, false, true, false, true, false]);
        assert!(cycle(5).bipartition().is_none());
    }

    #[test]
    fn coalition_basics() {
        let mut c: Coalition = [3, 70, 1].into_iter().collect();
        assert_eq!(c.members(), vec![1, 3, 70]);
        assert_eq!(c.mask(), None);
        assert!(c.remove(70));
        assert_eq!(c.mask(), Some(0b1010));
        assert_eq!(c.last(), Some(3));
        assert_eq!(c.complement(5).members(), vec![0, 2, 4]);
        assert!(Coalition::from_mask(0b10) < Coalition::from_mask(0b100));
        assert!(Coalition::from_mask(0b11) < Coalition::from_mask(0b10));
    }
}
