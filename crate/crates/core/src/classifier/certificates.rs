//! Cheap local certificates for small cat numbers.

use crate::graph::{EdgeMask, Graph};
use crate::structure::bridges;

/// A leaf scores exactly 1.
pub fn has_leaf_certificate(g: &Graph, v: usize) -> bool {
    v < g.n() && g.deg(v) == 1
}

/// First edge whose deletion leaves `v` the center of a star component.
pub fn star_component_certificate(g: &Graph, v: usize) -> Option<usize> {
    star_component_certificate_masked(g, &g.full_mask(), v)
}

pub fn star_component_certificate_masked(g: &Graph, mask: &EdgeMask, v: usize) -> Option<usize> {
    if v >= g.n() {
        return None;
    }
    mask.iter().find(|&e| {
        let rest = mask.delete_edge(e).expect("surviving edge");
        let comp = g.masked_component(&rest, v);
        comp.len() >= 2
            && comp.iter().all(|&x| x == v || (g.masked_degree(&rest, x) == 1 && g.edge_index(x, v).is_some_and(|i| rest.contains(i))))
    })
}

/// Every cut leaves `v` next to a vertex of degree at least 2.
pub fn geq3_certificate(g: &Graph, v: usize) -> bool {
    if v >= g.n() || g.edge_count() == 0 || g.deg(v) == 0 {
        return false;
    }
    let full = g.full_mask();
    let ok = full.iter().all(|e| {
        let rest = full.delete_edge(e).expect("edge exists");
        g.neighbors(v).iter().any(|&(a, i)| rest.contains(i) && g.masked_degree(&rest, a) >= 2)
    });
    ok
}

/// A cycle (as a closed vertex sequence without repetition) and an edge
/// off the cycle that touches it.
pub fn find_cycle_with_tail(g: &Graph) -> Option<(Vec<usize>, usize)> {
    let bridge_set = bridges(g);
    let full = g.full_mask();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if bridge_set.contains(&e) {
            continue;
        }
        let rest = full.delete_edge(e).expect("edge exists");
        let path = crate::solver::strategies::witness_path(g, &rest, a, b).expect("non-bridge lies on a cycle");
        let mut on_cycle = vec![false; g.n()];
        for &x in &path {
            on_cycle[x] = true;
        }
        let cycle_edges: Vec<usize> = path
            .windows(2)
            .map(|w| g.edge_index(w[0], w[1]).expect("path edge"))
            .chain([e])
            .collect();
        let tail = (0..g.edge_count()).find(|i| {
            let (x, y) = g.edges()[*i];
            !cycle_edges.contains(i) && (on_cycle[x] || on_cycle[y])
        });
        if let Some(t) = tail {
            return Some((path, t));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, star, with_pendants};

    #[test]
    fn leaf() {
        assert!(has_leaf_certificate(&path(3), 0));
        assert!(!has_leaf_certificate(&path(3), 1));
    }

    #[test]
    fn star_on_p4() {
        let p = path(4);
        assert_eq!(star_component_certificate(&p, 1), Some(1));
        assert_eq!(p.edges()[1], (1, 2));
        assert_eq!(star_component_certificate(&star(5), 0), Some(0));
        assert_eq!(star_component_certificate(&cycle(4), 0), None);
    }

    #[test]
    fn geq3() {
        assert!(geq3_certificate(&cycle(4), 0));
        assert!(!geq3_certificate(&path(3), 1));
        assert!(!geq3_certificate(&Graph::empty(1), 0));
    }

    #[test]
    fn tails() {
        assert!(find_cycle_with_tail(&cycle(4)).is_none());
        assert!(find_cycle_with_tail(&path(5)).is_none());
        let g = with_pendants(&cycle(3), &[(1, 1)]);
        let (cyc, tail) = find_cycle_with_tail(&g).unwrap();
        assert_eq!(cyc.len(), 3);
        assert_eq!(g.edges()[tail], (1, 3));
    }
}
