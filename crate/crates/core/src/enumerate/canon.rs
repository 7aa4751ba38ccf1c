//! Canonical labeling by colour refinement and individualization.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub const CANON_GUARD: usize = 16;

/// Vertex count plus the upper-triangle adjacency bits under the
/// canonical labeling. Equal forms mean isomorphic graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u128,
}

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Re-ranks colours by (colour, sorted neighbour colours) until stable.
fn refine(adj: &[u32], mut colors: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colors = sigs.iter().map(|s| sorted.binary_search(s).expect("present")).collect();
        let next = sorted.len();
        if next == classes {
            return colors;
        }
        classes = next;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn bits_under(adj: &[u32], colors: &[usize]) -> u128 {
    // colors is a permutation here: vertex v gets label colors[v].
    let n = adj.len();
    let mut inv = vec![0; n];
    for v in 0..n {
        inv[colors[v]] = v;
    }
    let mut bits = 0u128;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[inv[i]] >> inv[j] & 1 == 1 {
                bits |= 1 << k;
            }
            k += 1;
        }
    }
    bits
}

fn search(adj: &[u32], colors: Vec<usize>, best: &mut Option<u128>) {
    let colors = refine(adj, colors);
    let n = adj.len();
    if count_classes(&colors) == n {
        let b = bits_under(adj, &colors);
        if best.is_none_or(|x| b < x) {
            *best = Some(b);
        }
        return;
    }
    // First non-singleton cell by colour.
    let mut size = vec![0; n];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).expect("non-discrete");
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        // Swapping twins is an automorphism fixing the partition.
        let twin = tried.iter().any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        tried.push(v);
        let next: Vec<usize> = (0..n).map(|w| 2 * colors[w] + usize::from(w != v)).collect();
        search(adj, next, best);
    }
}

/// Panics above `CANON_GUARD` vertices; enumeration checks first.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    assert!(g.n() <= CANON_GUARD, "canonical form limited to {CANON_GUARD} vertices");
    let adj = adjacency(g);
    let mut best = None;
    search(&adj, vec![0; g.n()], &mut best);
    CanonicalForm { n: g.n(), bits: best.unwrap_or(0) }
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits >> k & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(self.n, edges).expect("canonical form is simple")
    }
}
