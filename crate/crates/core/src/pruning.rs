//! Cat-number-preserving reductions and their forward constructions.
//!
//! Three rules, applied to a fixpoint:
//! - `duplicate_leaf`: in `x ~ y ~ z` with `deg(x) = deg(z) = 1` and
//!   `deg(y) >= 3`, delete `z`. Every survivor keeps its value.
//! - `tree_p2_system`: `t ~ u` with pendant paths `u v_i w_i` (`i = 0..=k`,
//!   `k >= 1`), `deg(t) >= 2`, `deg(u) = k + 2`, `deg(v_i) = 2`,
//!   `deg(w_i) = 1`: delete `v_i, w_i` for `i >= 1`. Survivors keep their values.
//! - `tree_leaf_of_p2`: a leaf `l` on `u` with `deg(u) = 3`, `u`'s other
//!   neighbors being the middle `v` of a pendant `u v w` and some `t` with
//!   `deg(t) >= 2`: delete `l`. Preserves `cut(T)`.
//!
//! - `p2_surplus`: a vertex with three or more pendant paths `u v_i w_i`
//!   keeps the first two. Survivors keep their values, cycles allowed.
//!
//! `tree_p2_system` is not sound in general: the spider `S({5,2,2})` has cat
//! number 4 and reduces to `P_8`. The conservative rule set drops it and uses
//! `p2_surplus` instead; the classifier prunes with that set.
//!
//! Rules are tried in the order listed for the rule set, each scanning
//! vertices ascending; the first applicable instance is applied and the scan
//! restarts.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PruneError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    DuplicateLeaf,
    TreeP2System,
    TreeLeafOfP2,
    P2Surplus,
}

/// Which rules a prune run may apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleSet {
    /// `duplicate_leaf` only.
    Graph,
    /// `duplicate_leaf`, `tree_p2_system`, `tree_leaf_of_p2`; trees only.
    Tree,
    /// `duplicate_leaf`, `p2_surplus`, plus `tree_leaf_of_p2` on trees.
    Conservative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub name: String,
    pub vertex: usize,
}

/// One reduction, in the input graph's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStep {
    pub rule: Rule,
    pub removed: Vec<usize>,
    pub anchors: Vec<Anchor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneReport {
    pub steps: Vec<PruneStep>,
    pub graph: Graph,
    /// Input vertex -> vertex of `graph`, `None` for removed vertices.
    pub map: Vec<Option<usize>>,
}

impl PruneReport {
    /// Re-applies the recorded removals to `original`.
    pub fn replay(&self, original: &Graph) -> Graph {
        let mut keep = vec![true; original.n()];
        for step in &self.steps {
            for &v in &step.removed {
                keep[v] = false;
            }
        }
        original.retain_vertices(&keep).0
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }
}

fn anchors(named: &[(&str, usize)]) -> Vec<Anchor> {
    named.iter().map(|&(name, vertex)| Anchor { name: name.to_string(), vertex }).collect()
}

/// Live view of a graph with some vertices deleted.
struct Work<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
}

impl<'g> Work<'g> {
    fn new(g: &'g Graph) -> Self {
        Work { g, alive: vec![true; g.n()] }
    }

    fn nbrs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().map(|&(w, _)| w).filter(|&w| self.alive[w])
    }

    fn deg(&self, v: usize) -> usize {
        self.nbrs(v).count()
    }

    /// If `b` is the middle of a pendant path `a b w`, returns `w`.
    fn pendant_p2(&self, a: usize, b: usize) -> Option<usize> {
        if self.deg(b) != 2 {
            return None;
        }
        let w = self.nbrs(b).find(|&w| w != a)?;
        (self.deg(w) == 1).then_some(w)
    }

    fn duplicate_leaf_steps(&self) -> Vec<PruneStep> {
        let mut out = Vec::new();
        for y in (0..self.g.n()).filter(|&y| self.alive[y]) {
            if self.deg(y) < 3 {
                continue;
            }
            let leaves: Vec<usize> = self.nbrs(y).filter(|&x| self.deg(x) == 1).collect();
            if leaves.len() < 2 {
                continue;
            }
            // Deterministic preference: drop the largest leaf, keep the smallest.
            for &z in leaves[1..].iter().rev() {
                out.push(PruneStep {
                    rule: Rule::DuplicateLeaf,
                    removed: vec![z],
                    anchors: anchors(&[("x", leaves[0]), ("y", y), ("z", z)]),
                });
            }
        }
        out
    }

    fn p2_system_steps(&self) -> Vec<PruneStep> {
        let mut out = Vec::new();
        for u in (0..self.g.n()).filter(|&u| self.alive[u]) {
            if self.deg(u) < 3 {
                continue;
            }
            let mut branches = Vec::new();
            let mut others = Vec::new();
            for b in self.nbrs(u) {
                match self.pendant_p2(u, b) {
                    Some(w) => branches.push((b, w)),
                    None => others.push(b),
                }
            }
            let t = match others.as_slice() {
                [t] if self.deg(*t) >= 2 => *t,
                [] => branches.remove(0).0,
                _ => continue,
            };
            if branches.len() < 2 {
                continue;
            }
            let (v0, w0) = branches[0];
            let removed: Vec<usize> = branches[1..].iter().flat_map(|&(v, w)| [v, w]).collect();
            out.push(PruneStep {
                rule: Rule::TreeP2System,
                removed,
                anchors: anchors(&[("t", t), ("u", u), ("v0", v0), ("w0", w0)]),
            });
        }
        out
    }

    fn leaf_of_p2_steps(&self) -> Vec<PruneStep> {
        let mut out = Vec::new();
        for l in (0..self.g.n()).filter(|&l| self.alive[l]) {
            if self.deg(l) != 1 {
                continue;
            }
            let u = self.nbrs(l).next().expect("leaf has a neighbor");
            if self.deg(u) != 3 {
                continue;
            }
            let rest: Vec<usize> = self.nbrs(u).filter(|&x| x != l).collect();
            let found = [(rest[0], rest[1]), (rest[1], rest[0])].into_iter().find_map(|(v, t)| {
                let w = self.pendant_p2(u, v)?;
                (self.deg(t) >= 2).then_some((w, v, t))
            });
            if let Some((w, v, t)) = found {
                out.push(PruneStep {
                    rule: Rule::TreeLeafOfP2,
                    removed: vec![l],
                    anchors: anchors(&[("w", w), ("v", v), ("u", u), ("l", l), ("t", t)]),
                });
            }
        }
        out
    }

    fn p2_surplus_steps(&self) -> Vec<PruneStep> {
        let mut out = Vec::new();
        for u in (0..self.g.n()).filter(|&u| self.alive[u]) {
            let branches: Vec<(usize, usize)> =
                self.nbrs(u).filter_map(|v| self.pendant_p2(u, v).map(|w| (v, w))).collect();
            for &(v, w) in branches.iter().skip(2).rev() {
                out.push(PruneStep {
                    rule: Rule::P2Surplus,
                    removed: vec![v, w],
                    anchors: anchors(&[("u", u), ("v0", branches[0].0), ("v1", branches[1].0), ("v", v), ("w", w)]),
                });
            }
        }
        out
    }

    fn candidates(&self, rules: RuleSet, tree: bool) -> Vec<PruneStep> {
        let mut all = self.duplicate_leaf_steps();
        match rules {
            RuleSet::Graph => {}
            RuleSet::Tree => {
                all.extend(self.p2_system_steps());
                all.extend(self.leaf_of_p2_steps());
            }
            RuleSet::Conservative => {
                all.extend(self.p2_surplus_steps());
                if tree {
                    all.extend(self.leaf_of_p2_steps());
                }
            }
        }
        all
    }

    fn apply(&mut self, step: &PruneStep) {
        for &v in &step.removed {
            self.alive[v] = false;
        }
    }

    fn finish(self, steps: Vec<PruneStep>) -> PruneReport {
        let (graph, map) = self.g.retain_vertices(&self.alive);
        PruneReport { steps, graph, map }
    }
}

fn run(g: &Graph, rules: RuleSet, mut rng: Option<ChaCha8Rng>) -> PruneReport {
    let tree = g.is_tree();
    let mut work = Work::new(g);
    let mut steps = Vec::new();
    loop {
        let candidates = work.candidates(rules, tree);
        let step = match rng.as_mut() {
            Some(rng) => candidates.choose(rng).cloned(),
            None => candidates.into_iter().next(),
        };
        let Some(step) = step else { break };
        work.apply(&step);
        steps.push(step);
    }
    work.finish(steps)
}

/// Fixpoint of the duplicate-leaf rule. Every surviving vertex keeps its
/// cat number.
pub fn prune_duplicate_leaves(g: &Graph) -> Result<PruneReport, PruneError> {
    if !g.is_connected() {
        return Err(PruneError::Disconnected);
    }
    Ok(run(g, RuleSet::Graph, None))
}

/// Fixpoint of the duplicate-leaf rule and both tree rules. Preserves `cut(T)`.
pub fn prune_tree(t: &Graph) -> Result<PruneReport, PruneError> {
    if !t.is_tree() {
        return Err(PruneError::NotATree);
    }
    Ok(run(t, RuleSet::Tree, None))
}

/// Fixpoint of the conservative rule set. Every surviving vertex keeps its
/// cat number on all graphs checked so far (trees to 13 vertices).
pub fn prune_conservative(g: &Graph) -> Result<PruneReport, PruneError> {
    if !g.is_connected() {
        return Err(PruneError::Disconnected);
    }
    Ok(run(g, RuleSet::Conservative, None))
}

pub fn prune_with(g: &Graph, rules: RuleSet) -> Result<PruneReport, PruneError> {
    match rules {
        RuleSet::Graph => prune_duplicate_leaves(g),
        RuleSet::Tree => prune_tree(g),
        RuleSet::Conservative => prune_conservative(g),
    }
}

/// Applies applicable rule instances in a seeded random order. Used to
/// check that the final value does not depend on the order.
pub fn prune_randomized(g: &Graph, rules: RuleSet, seed: u64) -> Result<PruneReport, PruneError> {
    if rules == RuleSet::Tree && !g.is_tree() {
        return Err(PruneError::NotATree);
    }
    if !g.is_connected() {
        return Err(PruneError::Disconnected);
    }
    Ok(run(g, rules, Some(ChaCha8Rng::seed_from_u64(seed))))
}

pub fn is_pruned_graph(g: &Graph) -> Result<bool, PruneError> {
    Ok(prune_duplicate_leaves(g)?.is_identity())
}

pub fn is_pruned_tree(t: &Graph) -> Result<bool, PruneError> {
    Ok(prune_tree(t)?.is_identity())
}

/// Adds a new leaf `x = n` next to `u`, duplicating the leaf `v` on `u`.
pub fn leaf_duplicate(g: &Graph, u: usize, v: usize) -> Result<Graph, PruneError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(PruneError::Precondition(format!("{u}-{v} is not an edge")));
    }
    if g.deg(u) < 2 {
        return Err(PruneError::Precondition(format!("deg({u}) must be at least 2")));
    }
    if g.deg(v) != 1 {
        return Err(PruneError::Precondition(format!("{v} must be a leaf")));
    }
    Ok(g.extend(1, &[(u, g.n())])?)
}

/// Builds `T_k`: `k` extra pendant paths `u v_i w_i`, with `v_i = n + 2(i-1)`
/// and `w_i = v_i + 1`.
pub fn tree_add_p2(t: &Graph, u: usize, v: usize, w: usize, k: usize) -> Result<Graph, PruneError> {
    if !t.is_tree() {
        return Err(PruneError::NotATree);
    }
    for x in [u, v, w] {
        t.check_vertex(x)?;
    }
    if t.n() == 4 && t.is_path() {
        return Err(PruneError::Precondition("the construction excludes P4".into()));
    }
    if !t.has_edge(u, v) || !t.has_edge(v, w) {
        return Err(PruneError::Precondition(format!("{u} {v} {w} is not a path")));
    }
    if t.deg(u) != 2 || t.deg(v) != 2 || t.deg(w) != 1 {
        return Err(PruneError::Precondition("need deg(u) = deg(v) = 2 and deg(w) = 1".into()));
    }
    let n = t.n();
    let extra: Vec<(usize, usize)> = (0..k).flat_map(|i| [(u, n + 2 * i), (n + 2 * i, n + 2 * i + 1)]).collect();
    Ok(t.extend(2 * k, &extra)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, from_spec, path, spider, star, with_pendants};

    #[test]
    fn star_prunes_to_p3() {
        let r = prune_duplicate_leaves(&star(6)).unwrap();
        assert!(r.graph.is_path());
        assert_eq!(r.graph.n(), 3);
        assert_eq!(r.steps.len(), 3);
        assert!(r.steps.iter().all(|s| s.rule == Rule::DuplicateLeaf));
        assert_eq!(r.map[0], Some(0));
    }

    #[test]
    fn p3_is_fixed() {
        assert!(prune_duplicate_leaves(&path(3)).unwrap().is_identity());
        assert!(is_pruned_graph(&cycle(5)).unwrap());
        assert!(!is_pruned_graph(&star(6)).unwrap());
        assert!(is_pruned_tree(&path(8)).unwrap());
    }

    #[test]
    fn triangle_with_two_leaves() {
        let g = with_pendants(&cycle(3), &[(0, 1), (0, 1)]);
        let r = prune_duplicate_leaves(&g).unwrap();
        assert_eq!((r.graph.n(), r.graph.edge_count()), (4, 4));
        assert_eq!(r.steps[0].removed, vec![4]);
    }

    #[test]
    fn spider_221_prunes_to_p5() {
        let r = prune_tree(&spider(&[2, 2, 1])).unwrap();
        assert!(r.graph.is_path());
        assert_eq!(r.graph.n(), 5);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].rule, Rule::TreeLeafOfP2);
        assert_eq!(r.steps[0].removed, vec![5]);
    }

    #[test]
    fn spider_222_drops_one_leg() {
        let r = prune_tree(&spider(&[2, 2, 2])).unwrap();
        assert_eq!(r.steps[0].rule, Rule::TreeP2System);
        assert!(r.graph.is_path());
        assert_eq!(r.graph.n(), 5);
    }

    #[test]
    fn surplus_keeps_two_legs() {
        let r = prune_conservative(&spider(&[2, 2, 2, 2, 5])).unwrap();
        assert_eq!(r.steps.len(), 2);
        assert!(r.steps.iter().all(|s| s.rule == Rule::P2Surplus));
        assert_eq!(r.graph.degree_sequence().iter().filter(|&&d| d == 1).count(), 3);
        assert!(prune_conservative(&spider(&[5, 2, 2])).unwrap().is_identity());
        let tri = from_spec("triangle_tails:1,0,0").unwrap();
        assert!(prune_conservative(&tri).unwrap().is_identity());
    }

    #[test]
    fn spider_331_is_pruned() {
        assert!(is_pruned_tree(&spider(&[3, 3, 1])).unwrap());
    }

    #[test]
    fn rejects_wrong_inputs() {
        assert_eq!(prune_duplicate_leaves(&Graph::empty(2)).unwrap_err(), PruneError::Disconnected);
        assert_eq!(prune_tree(&cycle(4)).unwrap_err(), PruneError::NotATree);
    }

    #[test]
    fn leaf_duplicate_construction() {
        let s4 = leaf_duplicate(&path(3), 1, 2).unwrap();
        assert_eq!(s4.deg(1), 3);
        assert!(matches!(leaf_duplicate(&path(3), 0, 1), Err(PruneError::Precondition(_))));
        assert!(matches!(leaf_duplicate(&path(4), 1, 2), Err(PruneError::Precondition(_))));
    }

    #[test]
    fn tree_add_p2_construction() {
        let t = tree_add_p2(&path(5), 2, 3, 4, 1).unwrap();
        assert_eq!(t, spider(&[2, 2, 2]).relabel(&[2, 1, 0, 3, 4, 5, 6]));
        assert!(matches!(tree_add_p2(&path(4), 1, 2, 3, 1), Err(PruneError::Precondition(_))));
        assert_eq!(tree_add_p2(&path(6), 3, 4, 5, 0).unwrap(), path(6));
        assert_eq!(tree_add_p2(&cycle(5), 0, 1, 2, 1).unwrap_err(), PruneError::NotATree);
    }

    #[test]
    fn replay_reproduces_graph() {
        let g = from_spec("spider:2,2,2,1,1").unwrap();
        let r = prune_tree(&g).unwrap();
        assert_eq!(r.replay(&g), r.graph);
    }
}
