//! Pruned connected graphs with cat number 2 and 3.
//!
//! The cut-3 catalog has two parts. The base entries are the classical list.
//! The supplement holds the conservatively pruned graphs with cat number 3
//! that exhaustive search turned up outside it (all unicyclic graphs to 11
//! vertices, all trees to 14); none appear beyond 12 vertices.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::iso::find_isomorphism;
use crate::generators::from_spec;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Generator spec that builds the entry.
    pub id: String,
    pub family: String,
    pub value: u32,
    pub graph: Graph,
    /// Found by exhaustive search rather than part of the base list.
    #[serde(default)]
    pub supplement: bool,
}

type Families<'a> = &'a [(&'a str, &'a [&'a str])];

fn build(value: u32, families: Families, supplement: Families) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let tagged = families.iter().map(|f| (f, false)).chain(supplement.iter().map(|f| (f, true)));
    for (&(family, specs), extra) in tagged {
        for &spec in specs {
            let graph = from_spec(spec).expect("catalog spec");
            if out.iter().any(|e| find_isomorphism(&e.graph, &graph).is_some()) {
                continue;
            }
            out.push(CatalogEntry { id: spec.to_string(), family: family.to_string(), value, graph, supplement: extra });
        }
    }
    out
}

pub fn catalog_cut2() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| build(2, &[("triangle", &["cycle:3"]), ("path", &["path:3", "path:4"])], &[]))
}

pub fn catalog_cut3() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        build(
            3,
            &[
                ("path", &["path:5", "path:6", "path:7", "path:8"]),
                ("two_triangles", &["two_triangles_bridge"]),
                ("triangle_leaves", &["triangle_tails:1,0,0", "triangle_tails:1,1,0", "triangle_tails:1,1,1"]),
                (
                    "triangle_tail",
                    &["triangle_tails:1,0,0", "triangle_tails:2,0,0", "triangle_tails:3,0,0", "triangle_tails:4,0,0"],
                ),
                ("triangle_fork", &["triangle_fork:1,2"]),
                ("square", &["square_leaves:0,0,0,0", "square_leaves:1,0,0,0", "square_leaves:1,1,0,0"]),
                ("pentagon", &["cycle:5"]),
            ],
            &[
                (
                    "triangle_branch",
                    &["triangle_branch:1,1,1", "triangle_branch:2,1,1", "triangle_branch:1,0,2", "triangle_branch:1,1,2"],
                ),
                ("spider", &["spider:3,2,2", "spider:4,2,2", "spider:3,2,2,1", "spider:4,2,2,1"]),
                ("bispider", &["bispider:0,0", "bispider:1,0", "bispider:1,1"]),
            ],
        )
    })
}

/// Looks `g` up in both catalogs; returns the entry and an isomorphism
/// from `g` onto it.
pub fn lookup(g: &Graph) -> Option<(&'static CatalogEntry, Vec<usize>)> {
    catalog_cut2().iter().chain(catalog_cut3()).find_map(|e| find_isomorphism(g, &e.graph).map(|m| (e, m)))
}
