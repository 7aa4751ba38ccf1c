//! Classification of connected graphs with cat number at most 3.
//!
//! A graph is pruned with the conservative rule set and the result is looked
//! up in the catalogs of pruned graphs with cat number 2 and 3. Anything else
//! is reported as scoring at least 4.

pub mod catalog;
pub mod certificates;
pub mod iso;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::pruning::{prune_conservative, PruneError, PruneReport};
pub use catalog::{catalog_cut2, catalog_cut3, CatalogEntry};
pub use certificates::{find_cycle_with_tail, geq3_certificate, has_leaf_certificate, star_component_certificate};
pub use iso::{is_isomorphic, IsoError, ISO_GUARD};

/// Witness searches for large verdicts stay below this size.
const WITNESS_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is not connected")]
    Disconnected,
    #[error(transparent)]
    Prune(#[from] PruneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Cut0,
    Cut1,
    Cut2,
    Cut3,
    AtLeast4,
}

impl Verdict {
    /// Exact value for 0..=3, and 4 as the lower bound otherwise.
    pub fn capped_value(self) -> u32 {
        match self {
            Verdict::Cut0 => 0,
            Verdict::Cut1 => 1,
            Verdict::Cut2 => 2,
            Verdict::Cut3 => 3,
            Verdict::AtLeast4 => 4,
        }
    }

    pub fn from_capped(value: u32) -> Verdict {
        match value {
            0 => Verdict::Cut0,
            1 => Verdict::Cut1,
            2 => Verdict::Cut2,
            3 => Verdict::Cut3,
            _ => Verdict::AtLeast4,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::AtLeast4 => f.write_str(">=4"),
            v => write!(f, "{}", v.capped_value()),
        }
    }
}

/// Evidence for a verdict of at least 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A simple path on at least 9 vertices.
    LongPath { vertices: Vec<usize> },
    /// A cycle on at least 6 vertices.
    LongCycle { vertices: Vec<usize> },
    /// The pruned graph is in neither catalog.
    NoCatalogMatch { pruned_vertices: usize, pruned_edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub catalog_id: Option<String>,
    pub family: Option<String>,
    /// Input vertex -> catalog vertex; `None` for pruned-away vertices.
    pub mapping: Option<Vec<Option<usize>>>,
    pub prune: Option<PruneReport>,
    pub witness: Option<Witness>,
}

impl Classification {
    fn small(verdict: Verdict, n: usize) -> Self {
        Classification {
            verdict,
            catalog_id: None,
            family: None,
            mapping: Some((0..n).map(Some).collect()),
            prune: None,
            witness: None,
        }
    }
}

pub fn classify(g: &Graph) -> Result<Classification, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    match g.n() {
        1 => return Ok(Classification::small(Verdict::Cut0, 1)),
        2 => return Ok(Classification::small(Verdict::Cut1, 2)),
        _ => {}
    }
    let report = prune_conservative(g)?;
    if let Some((entry, iso)) = catalog::lookup(&report.graph) {
        let mapping = report.map.iter().map(|m| m.map(|x| iso[x])).collect();
        return Ok(Classification {
            verdict: Verdict::from_capped(entry.value),
            catalog_id: Some(entry.id.clone()),
            family: Some(entry.family.clone()),
            mapping: Some(mapping),
            prune: Some(report),
            witness: None,
        });
    }
    let witness = large_witness(g).unwrap_or(Witness::NoCatalogMatch {
        pruned_vertices: report.graph.n(),
        pruned_edges: report.graph.edge_count(),
    });
    Ok(Classification {
        verdict: Verdict::AtLeast4,
        catalog_id: None,
        family: None,
        mapping: None,
        prune: Some(report),
        witness: Some(witness),
    })
}

fn large_witness(g: &Graph) -> Option<Witness> {
    if g.n() > WITNESS_GUARD {
        return None;
    }
    let mut path = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        path.push(s);
        on[s] = true;
        if let Some(w) = dfs(g, &mut path, &mut on) {
            return Some(w);
        }
        on[s] = false;
        path.pop();
    }
    None
}

/// Extends `path`, stopping at a cycle of 6+ back to its start or a path of 9+.
fn dfs(g: &Graph, path: &mut Vec<usize>, on: &mut [bool]) -> Option<Witness> {
    if path.len() >= 9 {
        return Some(Witness::LongPath { vertices: path.clone() });
    }
    let last = *path.last().expect("non-empty");
    for &(w, _) in g.neighbors(last) {
        if w == path[0] && path.len() >= 6 {
            return Some(Witness::LongCycle { vertices: path.clone() });
        }
        if on[w] {
            continue;
        }
        path.push(w);
        on[w] = true;
        let found = dfs(g, path, on);
        on[w] = false;
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, from_spec, path, star};

    #[test]
    fn small_cases() {
        assert_eq!(classify(&Graph::empty(1)).unwrap().verdict, Verdict::Cut0);
        assert_eq!(classify(&path(2)).unwrap().verdict, Verdict::Cut1);
        assert_eq!(classify(&Graph::empty(2)).unwrap_err(), ClassifyError::Disconnected);
    }

    #[test]
    fn p6_is_cut3() {
        let c = classify(&path(6)).unwrap();
        assert_eq!(c.verdict, Verdict::Cut3);
        assert_eq!(c.catalog_id.as_deref(), Some("path:6"));
    }

    #[test]
    fn star_prunes_to_p3() {
        let c = classify(&star(6)).unwrap();
        assert_eq!(c.verdict, Verdict::Cut2);
        assert_eq!(c.catalog_id.as_deref(), Some("path:3"));
        let mapping = c.mapping.unwrap();
        assert_eq!(mapping.iter().filter(|m| m.is_some()).count(), 3);
        assert_eq!(mapping[0], Some(1));
    }

    #[test]
    fn c6_has_cycle_witness() {
        let c = classify(&cycle(6)).unwrap();
        assert_eq!(c.verdict, Verdict::AtLeast4);
        assert!(matches!(c.witness, Some(Witness::LongCycle { ref vertices }) if vertices.len() == 6));
        let p9 = classify(&path(9)).unwrap();
        assert!(matches!(p9.witness, Some(Witness::LongPath { .. })));
    }

    #[test]
    fn pentagon() {
        let c = classify(&cycle(5)).unwrap();
        assert_eq!((c.verdict, c.family.as_deref()), (Verdict::Cut3, Some("pentagon")));
        let k4 = classify(&from_spec("complete:4").unwrap()).unwrap();
        assert_eq!(k4.verdict, Verdict::AtLeast4);
        assert!(matches!(k4.witness, Some(Witness::NoCatalogMatch { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let c = classify(&from_spec("square_leaves:1,1,0,0").unwrap()).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"verdict\":\"cut3\""));
        assert_eq!(serde_json::from_str::<Classification>(&text).unwrap(), c);
    }
}
