//! Structural analyzers: longest paths, edge-disjoint cycles through a
//! vertex, bridges, 2-edge-connected components and the evadibility
//! threshold that bounds the cat number.

pub mod flow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeMask, Graph, GraphError};
use crate::solver::{Solver, SolverConfig};
use flow::FlowNetwork;

/// Exact longest-path search is exponential; cyclic components above this
/// size are refused.
pub const LONGEST_PATH_GUARD: usize = 16;
/// Cycle packing enumerates bipartitions of the incident edges.
pub const CYCLE_DEGREE_GUARD: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cyclic component with {0} vertices exceeds the exact longest-path guard of {LONGEST_PATH_GUARD}")]
    PathSearchTooLarge(usize),
    #[error("vertex degree {0} exceeds the cycle-packing guard of {CYCLE_DEGREE_GUARD}")]
    DegreeTooLarge(usize),
}

/// `k³ − 2k² + 3k − 2`: cuts the severing herder needs when no `P_k` exists
/// and every vertex lies on fewer than `k` edge-disjoint cycles.
pub fn herder_bound(k: u64) -> u64 {
    k * k * k - 2 * k * k + 3 * k - 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvadibilityReport {
    /// Vertex count of a longest simple path.
    pub longest_path: usize,
    /// Max over vertices of edge-disjoint cycles through the vertex.
    pub max_cycles: usize,
    /// A vertex attaining `max_cycles`.
    pub cycle_hub: Option<usize>,
    /// Smallest `k` with no `k`-vertex path and fewer than `k` cycles anywhere.
    pub threshold: usize,
    pub bound: u64,
    pub exact_cut: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeLink {
    pub edge: usize,
    pub endpoints: (usize, usize),
    pub components: (usize, usize),
}

/// Maximal 2-edge-connected components and the bridges joining them.
/// Contracting every component yields a forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTree {
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    pub bridges: Vec<BridgeLink>,
}

/// Biconnected blocks and bridges of the masked graph, via an iterative
/// lowpoint DFS. Blocks are edge-index lists.
fn blocks_and_bridges(g: &Graph, mask: &EdgeMask) -> (Vec<Vec<usize>>, Vec<usize>) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    let mut bridges = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge to parent, next neighbor slot)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent_edge, slot) = *top;
            if slot < g.neighbors(v).len() {
                top.2 += 1;
                let (w, e) = g.neighbors(v)[slot];
                if !mask.contains(e) || e == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push(e);
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                    if low[v] > disc[p] {
                        bridges.push(parent_edge);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    (blocks, bridges)
}

/// Surviving edges lying on some cycle through `v`, ascending.
pub fn cycle_edges_through(g: &Graph, mask: &EdgeMask, v: usize) -> Vec<usize> {
    let (blocks, _) = blocks_and_bridges(g, mask);
    let mut out: Vec<usize> = blocks
        .into_iter()
        .filter(|b| b.len() >= 2)
        .filter(|b| {
            b.iter().any(|&e| {
                let (x, y) = g.edges()[e];
                x == v || y == v
            })
        })
        .flatten()
        .collect();
    out.sort_unstable();
    out
}

/// Cut-edges of the graph, ascending by index.
pub fn bridges(g: &Graph) -> Vec<usize> {
    bridges_in(g, &g.full_mask())
}

pub fn bridges_in(g: &Graph, mask: &EdgeMask) -> Vec<usize> {
    blocks_and_bridges(g, mask).1
}

pub fn two_edge_connected_components(g: &Graph) -> BlockTree {
    let bridge_list = bridges(g);
    let mut mask = g.full_mask();
    for &e in &bridge_list {
        mask.remove(e);
    }
    let components = g.components_in(&mask);
    let mut component_of = vec![0; g.n()];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    let bridges = bridge_list
        .into_iter()
        .map(|e| {
            let (u, v) = g.edges()[e];
            BridgeLink { edge: e, endpoints: (u, v), components: (component_of[u], component_of[v]) }
        })
        .collect();
    BlockTree { components, component_of, bridges }
}

/// Connected, at least two vertices, and no cut-edge.
pub fn is_two_edge_connected(g: &Graph) -> bool {
    g.n() >= 2 && g.is_connected() && bridges(g).is_empty()
}

/// Farthest vertex from `from` inside a tree component, with its distance.
fn farthest(g: &Graph, from: usize) -> (usize, usize) {
    let dist = crate::solver::strategies::distances(g, &g.full_mask(), from);
    dist.iter()
        .enumerate()
        .filter(|(_, &d)| d != usize::MAX)
        .max_by_key(|&(v, &d)| (d, std::cmp::Reverse(v)))
        .map(|(v, &d)| (v, d))
        .expect("component contains its root")
}

/// Vertex count of a longest simple path.
pub fn longest_path_order(g: &Graph) -> Result<usize, StructureError> {
    let mut best = 0;
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.deg(v)).sum::<usize>() / 2;
        let order = if edges + 1 == comp.len() {
            let (a, _) = farthest(g, comp[0]);
            farthest(g, a).1 + 1
        } else {
            if comp.len() > LONGEST_PATH_GUARD {
                return Err(StructureError::PathSearchTooLarge(comp.len()));
            }
            longest_path_in_component(g, &comp)
        };
        best = best.max(order);
    }
    Ok(best)
}

/// Subset DP: `ends[S]` holds the vertices at which a simple path with
/// vertex set `S` can end.
fn longest_path_in_component(g: &Graph, comp: &[usize]) -> usize {
    let k = comp.len();
    let local = |v: usize| comp.binary_search(&v).expect("vertex in component");
    let adj: Vec<u32> = comp
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u32, |acc, &(w, _)| acc | 1 << local(w)))
        .collect();
    let mut ends = vec![0u32; 1 << k];
    for i in 0..k {
        ends[1 << i] = 1 << i;
    }
    let mut best = 1;
    for set in 1usize..(1 << k) {
        let e = ends[set];
        if e == 0 {
            continue;
        }
        best = best.max(set.count_ones() as usize);
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next = adj[v] & !(set as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[set | 1 << w] |= 1 << w;
            }
        }
    }
    best
}

/// Maximum number of pairwise edge-disjoint cycles through `v`.
///
/// Each cycle through `v` enters and leaves `v` by distinct edges. For every
/// split of `v`'s edges into a source side and a sink side, a unit-capacity
/// flow from source-side edges to sink-side edges (avoiding `v`) decomposes
/// into closed trails through `v`, each of which contains a cycle through
/// `v`. The best split realizes an optimal packing.
pub fn max_edge_disjoint_cycles_through(g: &Graph, v: usize) -> Result<usize, StructureError> {
    g.check_vertex(v)?;
    let incident: Vec<usize> = g.neighbors(v).iter().map(|&(w, _)| w).collect();
    let d = incident.len();
    if d > CYCLE_DEGREE_GUARD {
        return Err(StructureError::DegreeTooLarge(d));
    }
    if d < 2 {
        return Ok(0);
    }
    let (source, sink) = (g.n(), g.n() + 1);
    let mut base = FlowNetwork::new(g.n() + 2);
    for &(a, b) in g.edges() {
        if a != v && b != v {
            base.add_edge(a, b, 1);
        }
    }
    let ceiling = d / 2;
    let mut best = 0;
    // Fixing the first edge on the source side halves the search.
    for split in 0u32..(1 << (d - 1)) {
        let side = split << 1 | 1;
        let sources = side.count_ones() as usize;
        if sources.min(d - sources) <= best {
            continue;
        }
        let mut net = base.clone();
        for (i, &w) in incident.iter().enumerate() {
            if side >> i & 1 == 1 {
                net.add_arc(source, w, 1);
            } else {
                net.add_arc(w, sink, 1);
            }
        }
        best = best.max(net.max_flow(source, sink) as usize);
        if best == ceiling {
            break;
        }
    }
    Ok(best)
}

/// Smallest `k` with no `k`-vertex path and fewer than `k` edge-disjoint
/// cycles through every vertex: `max(L + 1, C + 1)`.
pub fn evadibility_threshold(g: &Graph) -> Result<usize, StructureError> {
    Ok(evadibility_report(g, false)?.threshold)
}

pub fn evadibility_report(g: &Graph, with_exact: bool) -> Result<EvadibilityReport, StructureError> {
    let longest_path = longest_path_order(g)?;
    let mut max_cycles = 0;
    let mut cycle_hub = None;
    for v in 0..g.n() {
        let c = max_edge_disjoint_cycles_through(g, v)?;
        if cycle_hub.is_none() || c > max_cycles {
            max_cycles = c;
            cycle_hub = Some(v);
        }
    }
    let threshold = (longest_path + 1).max(max_cycles + 1);
    let exact_cut = if with_exact {
        Solver::new(g, SolverConfig::default()).ok().map(|mut s| s.cat_number())
    } else {
        None
    };
    Ok(EvadibilityReport {
        longest_path,
        max_cycles,
        cycle_hub,
        threshold,
        bound: herder_bound(threshold as u64),
        exact_cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, from_spec, path, star};

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
    }

    #[test]
    fn herder_bound_values() {
        assert_eq!(herder_bound(2), 4);
        assert_eq!(herder_bound(3), 16);
        assert_eq!(herder_bound(9), 592);
    }

    #[test]
    fn longest_paths() {
        for n in 1..10 {
            assert_eq!(longest_path_order(&path(n)).unwrap(), n);
        }
        assert_eq!(longest_path_order(&cycle(5)).unwrap(), 5);
        assert_eq!(longest_path_order(&complete(4)).unwrap(), 4);
        assert_eq!(longest_path_order(&star(6)).unwrap(), 3);
        assert_eq!(longest_path_order(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(longest_path_order(&path(5000)).unwrap(), 5000);
        assert!(matches!(longest_path_order(&cycle(17)), Err(StructureError::PathSearchTooLarge(17))));
    }

    #[test]
    fn cycles_through_vertex() {
        assert_eq!(max_edge_disjoint_cycles_through(&from_spec("spider:2,3,1").unwrap(), 0).unwrap(), 0);
        assert_eq!(max_edge_disjoint_cycles_through(&bowtie(), 0).unwrap(), 2);
        assert_eq!(max_edge_disjoint_cycles_through(&bowtie(), 1).unwrap(), 1);
        for v in 0..4 {
            assert_eq!(max_edge_disjoint_cycles_through(&complete(4), v).unwrap(), 1);
        }
        assert_eq!(max_edge_disjoint_cycles_through(&complete(5), 0).unwrap(), 2);
    }

    #[test]
    fn thresholds() {
        let r = evadibility_report(&path(8), true).unwrap();
        assert_eq!((r.longest_path, r.max_cycles, r.threshold, r.bound), (8, 0, 9, 592));
        assert_eq!(r.exact_cut, Some(3));
        assert_eq!(evadibility_threshold(&bowtie()).unwrap(), 6);
    }

    #[test]
    fn bridge_structure() {
        let c4 = cycle(4);
        assert!(bridges(&c4).is_empty());
        assert!(is_two_edge_connected(&c4));
        let g = from_spec("two_triangles_bridge").unwrap();
        assert_eq!(bridges(&g), vec![g.edge_index(2, 3).unwrap()]);
        let bt = two_edge_connected_components(&g);
        assert_eq!(bt.components, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(bt.bridges.len(), 1);
        assert_eq!(bt.bridges[0].components, (0, 1));
        assert_eq!(bridges(&path(5)).len(), 4);
        assert!(!is_two_edge_connected(&path(2)));
        assert!(!is_two_edge_connected(&Graph::empty(1)));
    }

    #[test]
    fn cycle_edges_for_anchor() {
        let g = from_spec("triangle_tails:2,0,0").unwrap();
        assert_eq!(cycle_edges_through(&g, &g.full_mask(), 0).len(), 3);
        assert!(cycle_edges_through(&g, &g.full_mask(), 3).is_empty());
        let b = bowtie();
        assert_eq!(cycle_edges_through(&b, &b.full_mask(), 1).len(), 3);
        assert_eq!(cycle_edges_through(&b, &b.full_mask(), 0).len(), 6);
    }
}
