//! Exact game values by memoized minimax.
//!
//! `value(mask, v)` is the number of cuts still needed with the herder to act
//! and the cat on `v`:
//!
//! ```text
//! value(mask, v) = 0                                    if deg(v) = 0
//!                = min_e  1                             if v isolated in mask - e
//!                         1 + max_{v' ≠ v in comp(v)} value(mask - e, v')
//! ```
//!
//! Cat moves are teleports inside the cat's component: the value only depends
//! on the endpoint, so witness paths are only materialized during play.

mod play;
pub mod strategies;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeMask, Graph, GraphError};

pub use play::{play, play_from, CatStrategy, GameView, HerderStrategy, PlayError, ScoreTrace, TraceEvent};

/// Largest edge count the search accepts without an explicit budget override.
pub const DEFAULT_MAX_EDGES: usize = 22;
const HARD_MAX: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {edges} edges / {vertices} vertices; solver budget is {budget} edges")]
    TooLarge { edges: usize, vertices: usize, budget: usize },
    #[error("cat at vertex {0} is already captured")]
    Terminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Only consider cuts in the cat's component.
    pub restrict_to_component: bool,
    /// Initial memo table capacity.
    pub memo_capacity: usize,
    /// Refuse graphs with more edges than this.
    pub max_edges: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { restrict_to_component: true, memo_capacity: 1 << 12, max_edges: DEFAULT_MAX_EDGES }
    }
}

impl SolverConfig {
    pub fn unrestricted() -> Self {
        SolverConfig { restrict_to_component: false, ..Default::default() }
    }
}

/// Per-edge breakdown of the herder's options at a state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveAnalysis {
    pub cat: usize,
    /// `cut(G, cat)` for the analyzed mask.
    pub value: u32,
    pub cuts: Vec<CutOption>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutOption {
    pub edge: usize,
    pub endpoints: (usize, usize),
    /// Total cuts from this state if the herder plays this edge, counting it.
    pub value: u32,
    /// The cut isolates the cat immediately.
    pub captures: bool,
    pub optimal: bool,
    /// Cat destinations after this cut, with `cut(G - e, v')`.
    pub replies: Vec<ReplyOption>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplyOption {
    pub vertex: usize,
    pub value: u32,
    pub best: bool,
}

/// Memoized solver for one graph. Reusable across masks and start vertices.
#[derive(Debug, Clone)]
pub struct Solver {
    graph: Graph,
    cfg: SolverConfig,
    incident: Vec<u128>,
    nbrs: Vec<Vec<(usize, u128)>>,
    memo: HashMap<(u128, u8), u8>,
}

#[inline]
fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

impl Solver {
    pub fn new(graph: &Graph, cfg: SolverConfig) -> Result<Solver, SolveError> {
        let budget = cfg.max_edges.min(HARD_MAX);
        if graph.edge_count() > budget || graph.n() > HARD_MAX {
            return Err(SolveError::TooLarge { edges: graph.edge_count(), vertices: graph.n(), budget });
        }
        let mut incident = vec![0u128; graph.n()];
        let mut nbrs = vec![Vec::new(); graph.n()];
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
            nbrs[u].push((v, 1u128 << i));
            nbrs[v].push((u, 1u128 << i));
        }
        let memo = HashMap::with_capacity(cfg.memo_capacity);
        Ok(Solver { graph: graph.clone(), cfg, incident, nbrs, memo })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Number of memoized states.
    pub fn states(&self) -> usize {
        self.memo.len()
    }

    fn raw_mask(&self, mask: &EdgeMask) -> Result<u128, SolveError> {
        self.graph.check_mask(mask)?;
        Ok(mask.to_bits().expect("edge budget keeps masks within 128 bits"))
    }

    /// Vertex set (as bits) and surviving edges of `v`'s component.
    fn component(&self, mask: u128, v: usize) -> (u128, u128) {
        let mut verts: u128 = 1 << v;
        let mut edges: u128 = 0;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            edges |= self.incident[x] & mask;
            for &(y, bit) in &self.nbrs[x] {
                if mask & bit != 0 && verts >> y & 1 == 0 {
                    verts |= 1 << y;
                    stack.push(y);
                }
            }
        }
        (verts, edges)
    }

    fn value_raw(&mut self, mask: u128, v: usize) -> u8 {
        if self.incident[v] & mask == 0 {
            return 0;
        }
        let (_, within) = self.component(mask, v);
        let base = if self.cfg.restrict_to_component { within } else { mask };
        let key = (base, v as u8);
        if let Some(&val) = self.memo.get(&key) {
            return val;
        }
        let mut best = u8::MAX;
        for e in bits(base) {
            let after = base & !(1u128 << e);
            let val = if self.incident[v] & after == 0 {
                1
            } else {
                let (verts, _) = self.component(after, v);
                let mut worst = 0u8;
                for u in bits(verts & !(1u128 << v)) {
                    worst = worst.max(self.value_raw(after, u));
                    if 1 + worst >= best {
                        break;
                    }
                }
                1 + worst
            };
            best = best.min(val);
            if best == 1 {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    /// `cut(G, v)` on the masked graph, herder to act.
    pub fn value_from(&mut self, mask: &EdgeMask, v: usize) -> Result<u32, SolveError> {
        self.graph.check_vertex(v)?;
        let raw = self.raw_mask(mask)?;
        Ok(self.value_raw(raw, v) as u32)
    }

    /// `cut(G, v)` for every vertex of the full graph.
    pub fn vertex_values(&mut self) -> Vec<u32> {
        let full = self.graph.full_mask();
        (0..self.graph.n()).map(|v| self.value_from(&full, v).expect("in range")).collect()
    }

    /// `cut(G)`: the cat picks the best start.
    pub fn cat_number(&mut self) -> u32 {
        self.vertex_values().into_iter().max().unwrap_or(0)
    }

    /// Value of cutting `e` with the cat on `v`, counting the cut itself.
    pub fn cut_value(&mut self, mask: &EdgeMask, v: usize, e: usize) -> Result<u32, SolveError> {
        self.graph.check_vertex(v)?;
        let raw = self.raw_mask(mask)?;
        if raw >> e & 1 == 0 {
            return Err(GraphError::EdgeOutOfRange { index: e, m: self.graph.edge_count() }.into());
        }
        let after = raw & !(1u128 << e);
        if self.incident[v] & after == 0 {
            return Ok(1);
        }
        let (verts, _) = self.component(after, v);
        let worst = bits(verts & !(1u128 << v)).map(|u| self.value_raw(after, u)).max().unwrap_or(0);
        Ok(1 + worst as u32)
    }

    /// Lowest-index optimal cut, or `None` when the cat is already isolated.
    pub fn best_cut(&mut self, mask: &EdgeMask, v: usize) -> Result<Option<usize>, SolveError> {
        let target = self.value_from(mask, v)?;
        if target == 0 {
            return Ok(None);
        }
        let raw = self.raw_mask(mask)?;
        let (_, within) = self.component(raw, v);
        // In-component cuts first; passing moves are only consulted if no
        // in-component cut attains the value.
        for e in bits(within).chain(bits(raw & !within)) {
            if self.cut_value(mask, v, e)? == target {
                return Ok(Some(e));
            }
        }
        unreachable!("some cut attains the minimax value")
    }

    /// Best destination for the cat on `v` (lowest id among maxima), or
    /// `None` when the cat has no move.
    pub fn best_reply(&mut self, mask: &EdgeMask, v: usize) -> Result<Option<(usize, u32)>, SolveError> {
        self.graph.check_vertex(v)?;
        let raw = self.raw_mask(mask)?;
        let (verts, _) = self.component(raw, v);
        let mut best: Option<(usize, u32)> = None;
        for u in bits(verts & !(1u128 << v)) {
            let val = self.value_raw(raw, u) as u32;
            if best.is_none_or(|(_, b)| val > b) {
                best = Some((u, val));
            }
        }
        Ok(best)
    }

    /// Best opening vertex (lowest id among maxima) and its value.
    pub fn best_start(&mut self) -> (usize, u32) {
        let values = self.vertex_values();
        let mut best = (0, 0);
        for (v, &val) in values.iter().enumerate() {
            if val > best.1 {
                best = (v, val);
            }
        }
        best
    }

    /// Exhaustive table of herder cuts and cat replies at `(mask, v)`.
    /// Lists every surviving edge, including passing moves.
    pub fn analyze(&mut self, mask: &EdgeMask, v: usize) -> Result<MoveAnalysis, SolveError> {
        self.graph.check_vertex(v)?;
        let raw = self.raw_mask(mask)?;
        if self.incident[v] & raw == 0 {
            return Err(SolveError::Terminal(v));
        }
        let mut cuts = Vec::new();
        for e in bits(raw) {
            let after = raw & !(1u128 << e);
            let captures = self.incident[v] & after == 0;
            let mut replies = Vec::new();
            if !captures {
                let (verts, _) = self.component(after, v);
                for u in bits(verts & !(1u128 << v)) {
                    replies.push(ReplyOption { vertex: u, value: self.value_raw(after, u) as u32, best: false });
                }
            }
            let worst = replies.iter().map(|r| r.value).max();
            if let Some(w) = worst {
                for r in &mut replies {
                    r.best = r.value == w;
                }
            }
            let value = 1 + worst.unwrap_or(0);
            cuts.push(CutOption {
                edge: e,
                endpoints: self.graph.edges()[e],
                value,
                captures,
                optimal: false,
                replies,
            });
        }
        let min = cuts.iter().map(|c| c.value).min().expect("cat has an incident edge");
        for c in &mut cuts {
            c.optimal = c.value == min;
        }
        Ok(MoveAnalysis { cat: v, value: self.value_raw(raw, v) as u32, cuts })
    }
}

/// `cut(G, v)` on a masked graph.
pub fn cat_number_from(g: &Graph, mask: &EdgeMask, v: usize, cfg: SolverConfig) -> Result<u32, SolveError> {
    Solver::new(g, cfg)?.value_from(mask, v)
}

/// `cut(G)`: maximum over start vertices, hence over components.
pub fn cat_number(g: &Graph, cfg: SolverConfig) -> Result<u32, SolveError> {
    Ok(Solver::new(g, cfg)?.cat_number())
}

/// `cut(G, v)` for every vertex.
pub fn vertex_values(g: &Graph, cfg: SolverConfig) -> Result<Vec<u32>, SolveError> {
    Ok(Solver::new(g, cfg)?.vertex_values())
}
