use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeMask, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("herder strategy `{strategy}` chose illegal cut {edge}: {reason}")]
    IllegalCut { strategy: String, edge: usize, reason: String },
    #[error("cat strategy `{strategy}` chose illegal move {path:?}: {reason}")]
    IllegalMove { strategy: String, path: Vec<usize>, reason: String },
    #[error("cat strategy `{strategy}` placed on vertex {vertex}, outside the graph")]
    IllegalPlacement { strategy: String, vertex: usize },
    #[error("strategy `{strategy}` failed: {reason}")]
    Strategy { strategy: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceEvent {
    Cut { edge: usize, endpoints: (usize, usize) },
    Move { path: Vec<usize> },
}

/// Full record of one finite game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreTrace {
    pub start: usize,
    pub events: Vec<TraceEvent>,
    pub score: u32,
    pub final_vertex: usize,
}

/// What a strategy sees when asked for a move.
#[derive(Debug, Clone, Copy)]
pub struct GameView<'a> {
    pub graph: &'a Graph,
    pub mask: &'a EdgeMask,
    pub cat: usize,
    pub events: &'a [TraceEvent],
    /// Every vertex the cat has stood on or passed through, in order.
    pub walk: &'a [usize],
}

pub trait HerderStrategy: Send {
    fn name(&self) -> String;
    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String>;
}

pub trait CatStrategy: Send {
    fn name(&self) -> String;
    fn place(&mut self, graph: &Graph) -> Result<usize, String>;
    /// Witness path starting at the cat's vertex.
    fn respond(&mut self, view: &GameView<'_>) -> Result<Vec<usize>, String>;
}

/// Checks a cat witness path against the current mask.
pub(crate) fn check_witness(g: &Graph, mask: &EdgeMask, cat: usize, path: &[usize]) -> Result<(), String> {
    if path.len() < 2 {
        return Err("cat must move along a non-trivial path".into());
    }
    if path[0] != cat {
        return Err(format!("path must start at the cat's vertex {cat}"));
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() {
            return Err(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return Err(format!("path revisits vertex {v}"));
        }
        seen[v] = true;
    }
    for w in path.windows(2) {
        match g.edge_index(w[0], w[1]) {
            Some(e) if mask.contains(e) => {}
            Some(_) => return Err(format!("edge {}-{} has been cut", w[0], w[1])),
            None => return Err(format!("{}-{} is not an edge", w[0], w[1])),
        }
    }
    Ok(())
}

/// Plays a full game; the cat strategy chooses the start.
pub fn play(
    g: &Graph,
    cat: &mut dyn CatStrategy,
    herder: &mut dyn HerderStrategy,
) -> Result<ScoreTrace, PlayError> {
    let start = cat.place(g).map_err(|reason| PlayError::Strategy { strategy: cat.name(), reason })?;
    if start >= g.n() {
        return Err(PlayError::IllegalPlacement { strategy: cat.name(), vertex: start });
    }
    play_from(g, start, cat, herder)
}

/// Plays a full game from a fixed start vertex.
///
/// The score is the number of cuts made when the cat first stands on a
/// vertex of degree 0 at its turn.
pub fn play_from(
    g: &Graph,
    start: usize,
    cat: &mut dyn CatStrategy,
    herder: &mut dyn HerderStrategy,
) -> Result<ScoreTrace, PlayError> {
    let mut mask = g.full_mask();
    let mut pos = start;
    let mut events = Vec::new();
    let mut walk = vec![start];
    let mut score = 0u32;
    while g.masked_degree(&mask, pos) > 0 {
        let view = GameView { graph: g, mask: &mask, cat: pos, events: &events, walk: &walk };
        let e = herder
            .choose_cut(&view)
            .map_err(|reason| PlayError::Strategy { strategy: herder.name(), reason })?;
        if !mask.contains(e) {
            let reason = if e >= g.edge_count() { "no such edge" } else { "edge already cut" };
            return Err(PlayError::IllegalCut { strategy: herder.name(), edge: e, reason: reason.into() });
        }
        mask.remove(e);
        score += 1;
        events.push(TraceEvent::Cut { edge: e, endpoints: g.edges()[e] });
        if g.masked_degree(&mask, pos) == 0 {
            break;
        }
        let view = GameView { graph: g, mask: &mask, cat: pos, events: &events, walk: &walk };
        let path = cat.respond(&view).map_err(|reason| PlayError::Strategy { strategy: cat.name(), reason })?;
        check_witness(g, &mask, pos, &path)
            .map_err(|reason| PlayError::IllegalMove { strategy: cat.name(), path: path.clone(), reason })?;
        pos = *path.last().expect("non-trivial path");
        walk.extend_from_slice(&path[1..]);
        events.push(TraceEvent::Move { path });
    }
    Ok(ScoreTrace { start, events, score, final_vertex: pos })
}
