//! Non-isomorphic small graphs: connected graphs, trees, unicyclic graphs
//! and spiders. Generation is vertex-by-vertex augmentation with
//! canonical-form deduplication; output order is deterministic.

mod canon;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{cycle, spider};
use crate::graph::Graph;
pub use canon::{canonical_form, CanonicalForm, CANON_GUARD};

pub const CONNECTED_GUARD: usize = 9;
pub const TREE_GUARD: usize = CANON_GUARD;
pub const UNICYCLIC_GUARD: usize = 12;
/// Brute force over edge subsets of `K_n`.
pub const ALL_GRAPHS_GUARD: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{class} enumeration limited to {guard} vertices, asked for {n}")]
    Guard { class: &'static str, n: usize, guard: usize },
    #[error("spider legs must be positive")]
    BadSpider,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Connected,
    Trees,
    Unicyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConfig {
    pub max_n: usize,
    pub max_m: Option<usize>,
    pub class: GraphClass,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { max_n: 7, max_m: Some(10), class: GraphClass::Connected }
    }
}

impl EnumConfig {
    pub fn trees(max_n: usize) -> Self {
        EnumConfig { max_n, max_m: None, class: GraphClass::Trees }
    }

    pub fn connected(max_n: usize, max_m: Option<usize>) -> Self {
        EnumConfig { max_n, max_m, class: GraphClass::Connected }
    }
}

fn guard(class: &'static str, n: usize, guard: usize) -> Result<(), EnumError> {
    if n > guard {
        Err(EnumError::Guard { class, n, guard })
    } else {
        Ok(())
    }
}

fn sorted(set: BTreeSet<(usize, CanonicalForm)>) -> Vec<Graph> {
    set.into_iter().map(|(_, f)| f.to_graph()).collect()
}

/// One graph per isomorphism class, ordered by (vertices, edges, form).
pub fn enumerate(cfg: &EnumConfig) -> Result<Vec<Graph>, EnumError> {
    let mut out = match cfg.class {
        GraphClass::Connected => connected_graphs(cfg.max_n, cfg.max_m)?,
        GraphClass::Trees => (1..=cfg.max_n).map(trees).collect::<Result<Vec<_>, _>>()?.concat(),
        GraphClass::Unicyclic => unicyclic(cfg.max_n)?,
    };
    if let Some(m) = cfg.max_m {
        out.retain(|g| g.edge_count() <= m);
    }
    Ok(out)
}

/// Connected graphs on 1..=max_n vertices with at most `max_m` edges.
pub fn connected_graphs(max_n: usize, max_m: Option<usize>) -> Result<Vec<Graph>, EnumError> {
    guard("connected", max_n, CONNECTED_GUARD)?;
    let mut all = Vec::new();
    let mut level: Vec<Graph> = if max_n >= 1 { vec![Graph::empty(1)] } else { Vec::new() };
    all.extend(level.iter().cloned());
    for n in 2..=max_n {
        // Every connected graph has a vertex whose removal keeps it
        // connected and drops at least one edge, so filtering by edge
        // count at each level loses nothing.
        let mut next = BTreeSet::new();
        for g in &level {
            for subset in 1u32..(1 << (n - 1)) {
                let m = g.edge_count() + subset.count_ones() as usize;
                if max_m.is_some_and(|mm| m > mm) {
                    continue;
                }
                let extra: Vec<(usize, usize)> = (0..n - 1).filter(|&v| subset >> v & 1 == 1).map(|v| (v, n - 1)).collect();
                let h = g.extend(1, &extra).expect("new vertex edges are fresh");
                next.insert((m, canonical_form(&h)));
            }
        }
        level = sorted(next);
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

/// Trees on exactly `n` vertices.
pub fn trees(n: usize) -> Result<Vec<Graph>, EnumError> {
    guard("tree", n, TREE_GUARD)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for t in &level {
            for v in 0..k - 1 {
                let h = t.extend(1, &[(v, k - 1)]).expect("leaf edge is fresh");
                next.insert((k - 1, canonical_form(&h)));
            }
        }
        level = sorted(next);
    }
    Ok(level)
}

/// Connected graphs with exactly one cycle, on 3..=max_n vertices.
pub fn unicyclic(max_n: usize) -> Result<Vec<Graph>, EnumError> {
    guard("unicyclic", max_n, UNICYCLIC_GUARD)?;
    let mut all = Vec::new();
    let mut level: Vec<Graph> = Vec::new();
    for n in 3..=max_n {
        // Either the cycle itself or a smaller one plus a leaf.
        let mut next = BTreeSet::new();
        next.insert((n, canonical_form(&cycle(n))));
        for g in &level {
            for v in 0..n - 1 {
                let h = g.extend(1, &[(v, n - 1)]).expect("leaf edge is fresh");
                next.insert((n, canonical_form(&h)));
            }
        }
        level = sorted(next);
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

pub fn spiders(specs: &[Vec<usize>]) -> Result<Vec<Graph>, EnumError> {
    specs
        .iter()
        .map(|legs| if legs.is_empty() || legs.contains(&0) { Err(EnumError::BadSpider) } else { Ok(spider(legs)) })
        .collect()
}

/// Every simple graph on exactly `n` vertices, connected or not.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, EnumError> {
    guard("all-graphs", n, ALL_GRAPHS_GUARD)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut set = BTreeSet::new();
    for subset in 0u64..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(i, _)| subset >> i & 1 == 1).map(|(_, &p)| p);
        let g = Graph::new(n, edges).expect("distinct pairs");
        set.insert((subset.count_ones() as usize, canonical_form(&g)));
    }
    Ok(sorted(set))
}

/// Concatenated edge-list text, one `# graph i` comment before each graph.
pub fn to_edge_lists(graphs: &[Graph]) -> String {
    let mut out = String::new();
    for (i, g) in graphs.iter().enumerate() {
        let _ = writeln!(out, "# graph {i}");
        out.push_str(&g.to_edge_list());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny() {
        let g = connected_graphs(2, None).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!((g[1].n(), g[1].edge_count()), (2, 1));
        assert_eq!(trees(1).unwrap(), vec![Graph::empty(1)]);
    }

    #[test]
    fn trees_on_four() {
        let t = trees(4).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().any(|g| g.is_path()));
        assert!(t.iter().any(|g| g.degree_sequence().contains(&3)));
    }

    #[test]
    fn unicyclic_counts() {
        let u = unicyclic(5).unwrap();
        // C3; C4, C3+leaf; C5, C4+leaf, C3+path, C3+two leaves apart, C3+two leaves together
        assert_eq!(u.len(), 1 + 2 + 5);
        assert!(u.iter().all(|g| g.is_connected() && g.edge_count() == g.n()));
    }

    #[test]
    fn guards() {
        assert!(matches!(connected_graphs(10, None), Err(EnumError::Guard { .. })));
        assert_eq!(spiders(&[vec![2, 0]]), Err(EnumError::BadSpider));
    }

    #[test]
    fn edge_list_output_parses() {
        let text = to_edge_lists(&trees(4).unwrap());
        let first: String = text.split("# graph 1").next().unwrap().to_string();
        assert_eq!(crate::graph::parse_graph(&first).unwrap().n(), 4);
    }
}
