//! Immutable finite simple graphs and edge masks.
//!
//! Vertices are dense ids `0..n`. Edges are stored as `(u, v)` with `u < v`,
//! sorted and deduplicated, so an edge's position in [`Graph::edges`] is a
//! stable identity that [`EdgeMask`] bits refer to.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {index} out of range for graph with {m} edges")]
    EdgeOutOfRange { index: usize, m: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge mask of width {mask} used with a graph of {graph} edges")]
    MaskWidth { mask: usize, graph: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error("missing `p <n>` header")]
    MissingHeader,
    #[error("duplicate `p` header")]
    DuplicateHeader,
    #[error("endpoint {vertex} out of range (n = {n})")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;
    fn try_from(r: GraphRepr) -> Result<Self, Self::Error> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

impl Graph {
    /// Builds a graph, normalizing each pair to `u < v`. Rejects loops,
    /// parallel edges and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<(usize, usize), GraphError> {
        self.edges.get(index).copied().ok_or(GraphError::EdgeOutOfRange {
            index,
            m: self.edges.len(),
        })
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Neighbors of `v` with the connecting edge index, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    /// Degree in the full graph.
    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.deg(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn full_mask(&self) -> EdgeMask {
        EdgeMask::full(self.edges.len())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_mask(&self, mask: &EdgeMask) -> Result<(), GraphError> {
        if mask.len() == self.edges.len() {
            Ok(())
        } else {
            Err(GraphError::MaskWidth { mask: mask.len(), graph: self.edges.len() })
        }
    }

    /// Degree of `v` counting only surviving edges.
    pub fn degree(&self, mask: &EdgeMask, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        self.check_mask(mask)?;
        Ok(self.masked_degree(mask, v))
    }

    pub(crate) fn masked_degree(&self, mask: &EdgeMask, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(_, e)| mask.contains(e)).count()
    }

    /// Connected component of `v` in the masked graph, sorted ascending.
    pub fn component_of(&self, mask: &EdgeMask, v: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(v)?;
        self.check_mask(mask)?;
        Ok(self.masked_component(mask, v))
    }

    pub(crate) fn masked_component(&self, mask: &EdgeMask, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &(y, e) in &self.adj[x] {
                if mask.contains(e) && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All components of the masked graph, each sorted, ordered by least vertex.
    pub fn components_in(&self, mask: &EdgeMask) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen[v] {
                continue;
            }
            let comp = self.masked_component(mask, v);
            for &x in &comp {
                seen[x] = true;
            }
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_in(&self.full_mask())
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.masked_component(&self.full_mask(), 0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.n
    }

    /// True iff the graph is a path `P_n` (including `K_1`).
    pub fn is_path(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        (0..self.n).all(|v| self.deg(v) <= 2)
    }

    /// True iff the graph is a cycle `C_n`, `n >= 3`.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && self.is_connected()
            && self.edges.len() == self.n
            && (0..self.n).all(|v| self.deg(v) == 2)
    }

    /// Keeps the vertices flagged in `keep`, renumbering them in ascending
    /// order. Returns the new graph and the old-to-new vertex map.
    pub fn retain_vertices(&self, keep: &[bool]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect::<Vec<_>>();
        // Relabeling is monotone, so the filtered list stays sorted.
        (Graph::from_sorted(next, edges), map)
    }

    /// Subgraph on the same vertex set containing only surviving edges.
    pub fn masked_subgraph(&self, mask: &EdgeMask) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask.contains(*i))
            .map(|(_, &e)| e)
            .collect();
        Graph::from_sorted(self.n, edges)
    }

    /// Adds `count` new vertices and the given edges.
    pub fn extend(&self, count: usize, extra: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Graph::new(self.n + count, self.edges.iter().copied().chain(extra.iter().copied()))
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::new(self.n, edges).expect("a permutation preserves simplicity")
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p {}\n", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    /// Parses the edge-list text format.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        parse_graph(text)
    }

    /// Graphviz rendering; cut edges are drawn dashed.
    pub fn to_dot(&self, mask: &EdgeMask) -> String {
        let mut s = String::from("graph G {\n  node [shape=circle];\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if mask.contains(i) {
                let _ = writeln!(s, "  {u} -- {v};");
            } else {
                let _ = writeln!(s, "  {u} -- {v} [style=dashed];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Parses the edge-list format: optional `#` comments, one `p <n>` header,
/// then `e <u> <v>` lines.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError { line: line_no, kind };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| s.parse::<usize>().map_err(|_| err(ParseErrorKind::Malformed(line.to_string())));
        match fields.as_slice() {
            ["p", count] => {
                if n.is_some() {
                    return Err(err(ParseErrorKind::DuplicateHeader));
                }
                n = Some(number(count)?);
            }
            ["e", a, b] => {
                let n = n.ok_or_else(|| err(ParseErrorKind::MissingHeader))?;
                let (u, v) = (number(a)?, number(b)?);
                for x in [u, v] {
                    if x >= n {
                        return Err(err(ParseErrorKind::OutOfRange { vertex: x, n }));
                    }
                }
                if u == v {
                    return Err(err(ParseErrorKind::SelfLoop(u)));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(err(ParseErrorKind::DuplicateEdge(key.0, key.1)));
                }
                edges.push(key);
            }
            _ => return Err(err(ParseErrorKind::Malformed(line.to_string()))),
        }
    }
    let n = n.ok_or(ParseError { line: 0, kind: ParseErrorKind::MissingHeader })?;
    edges.sort_unstable();
    Ok(Graph::from_sorted(n, edges))
}

/// Bitset over edge indices; a set bit means the edge survives.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeMask {
    words: Vec<u64>,
    len: usize,
}

impl fmt::Debug for EdgeMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EdgeMask(")?;
        for i in 0..self.len {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl EdgeMask {
    pub fn full(len: usize) -> EdgeMask {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (len % 64)) - 1;
            }
        }
        EdgeMask { words, len }
    }

    pub fn empty(len: usize) -> EdgeMask {
        EdgeMask { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.len && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.len, "edge index {e} out of range");
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.len, "edge index {e} out of range");
        self.words[e / 64] &= !(1 << (e % 64));
    }

    /// Returns a copy with edge `e` deleted.
    pub fn delete_edge(&self, e: usize) -> Result<EdgeMask, GraphError> {
        if e >= self.len {
            return Err(GraphError::EdgeOutOfRange { index: e, m: self.len });
        }
        let mut out = self.clone();
        out.remove(e);
        Ok(out)
    }

    /// Number of surviving edges.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Surviving edge indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&e| self.contains(e))
    }

    /// `self ⊆ other` on the same width.
    pub fn is_subset(&self, other: &EdgeMask) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn to_bits(&self) -> Option<u128> {
        if self.len > 128 {
            return None;
        }
        let mut bits = 0u128;
        for (i, w) in self.words.iter().enumerate() {
            bits |= (*w as u128) << (64 * i);
        }
        Some(bits)
    }

    pub fn from_bits(bits: u128, len: usize) -> EdgeMask {
        assert!(len <= 128);
        let mut m = EdgeMask::empty(len);
        for e in 0..len {
            if bits >> e & 1 == 1 {
                m.insert(e);
            }
        }
        m
    }
}
