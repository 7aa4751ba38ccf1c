//! Isomorphism by backtracking over degree-compatible assignments.

use thiserror::Error;

use crate::graph::Graph;

pub const ISO_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("isomorphism search limited to {guard} vertices, got {n}")]
pub struct IsoError {
    pub n: usize,
    pub guard: usize,
}

/// Returns `m` with `g.has_edge(a, b) == h.has_edge(m[a], m[b])`, if any.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, IsoError> {
    for x in [g, h] {
        if x.n() > ISO_GUARD {
            return Err(IsoError { n: x.n(), guard: ISO_GUARD });
        }
    }
    Ok(find_isomorphism(g, h))
}

/// Unguarded search; callers keep inputs small.
pub(crate) fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg = g.degree_sequence();
    let mut dh = h.degree_sequence();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    // Assign g's vertices so each one (after the first of its component)
    // is adjacent to an earlier one; adjacency checks then prune early.
    let order = bfs_order(g);
    let mut map = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    extend(g, h, &order, 0, &mut map, &mut used).then_some(map)
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut seen = vec![false; g.n()];
    let mut roots: Vec<usize> = (0..g.n()).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(g.deg(v)));
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let x = order[i];
            for &(y, _) in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
    }
    order
}

fn extend(g: &Graph, h: &Graph, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&a) = order.get(depth) else { return true };
    for b in 0..h.n() {
        if used[b] || g.deg(a) != h.deg(b) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| g.has_edge(a, x) == h.has_edge(b, map[x]));
        if !consistent {
            continue;
        }
        map[a] = b;
        used[b] = true;
        if extend(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[b] = false;
        map[a] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, two_triangles_bridge};

    fn check(g: &Graph, h: &Graph, m: &[usize]) {
        for &(a, b) in g.edges() {
            assert!(h.has_edge(m[a], m[b]));
        }
    }

    #[test]
    fn relabeled_path() {
        let p = path(4);
        let q = p.relabel(&[2, 0, 3, 1]);
        let m = is_isomorphic(&p, &q).unwrap().unwrap();
        check(&p, &q, &m);
    }

    #[test]
    fn different_graphs() {
        assert!(is_isomorphic(&cycle(4), &path(4)).unwrap().is_none());
        let mut edges = cycle(6).edges().to_vec();
        edges.push((0, 3));
        let chord = Graph::new(6, edges).unwrap();
        assert!(is_isomorphic(&two_triangles_bridge(), &chord).unwrap().is_none());
    }

    #[test]
    fn guard() {
        assert_eq!(is_isomorphic(&path(13), &path(13)).unwrap_err(), IsoError { n: 13, guard: 12 });
    }
}
