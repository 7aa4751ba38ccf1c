//! Finite-graph strategies for both sides.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::play::{CatStrategy, GameView, HerderStrategy};
use super::{Solver, SolverConfig};
use crate::classifier::certificates::star_component_certificate_masked;
use crate::graph::{EdgeMask, Graph};
use crate::structure::cycle_edges_through;

/// Shortest surviving path from `from` to `to`, preferring low vertex ids.
pub fn witness_path(g: &Graph, mask: &EdgeMask, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &(y, e) in g.neighbors(x) {
            if mask.contains(e) && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// BFS distances in the masked graph; `usize::MAX` when unreachable.
pub fn distances(g: &Graph, mask: &EdgeMask, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in g.neighbors(x) {
            if mask.contains(e) && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

fn solver_for<'a>(slot: &'a mut Option<Solver>, g: &Graph, cfg: &SolverConfig) -> Result<&'a mut Solver, String> {
    if slot.as_ref().is_none_or(|s| s.graph() != g) {
        *slot = Some(Solver::new(g, cfg.clone()).map_err(|e| e.to_string())?);
    }
    Ok(slot.as_mut().expect("just set"))
}

fn in_component_edges(g: &Graph, mask: &EdgeMask, v: usize) -> Vec<usize> {
    let comp = g.masked_component(mask, v);
    let mut inside = vec![false; g.n()];
    for &x in &comp {
        inside[x] = true;
    }
    mask.iter().filter(|&e| inside[g.edges()[e].0]).collect()
}

/// Herder playing the exact minimax cut (lowest index among optima).
#[derive(Debug, Default)]
pub struct OptimalHerder {
    cfg: SolverConfig,
    solver: Option<Solver>,
}

impl OptimalHerder {
    pub fn new(cfg: SolverConfig) -> Self {
        OptimalHerder { cfg, solver: None }
    }
}

impl HerderStrategy for OptimalHerder {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        let solver = solver_for(&mut self.solver, view.graph, &self.cfg)?;
        solver
            .best_cut(view.mask, view.cat)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| "cat is already captured".to_string())
    }
}

/// Cat opening on a best vertex and always replying to a best vertex.
#[derive(Debug, Default)]
pub struct OptimalCat {
    cfg: SolverConfig,
    solver: Option<Solver>,
}

impl OptimalCat {
    pub fn new(cfg: SolverConfig) -> Self {
        OptimalCat { cfg, solver: None }
    }
}

impl CatStrategy for OptimalCat {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn place(&mut self, graph: &Graph) -> Result<usize, String> {
        Ok(solver_for(&mut self.solver, graph, &self.cfg)?.best_start().0)
    }

    fn respond(&mut self, view: &GameView<'_>) -> Result<Vec<usize>, String> {
        let solver = solver_for(&mut self.solver, view.graph, &self.cfg)?;
        let (to, _) = solver
            .best_reply(view.mask, view.cat)
            .map_err(|e| e.to_string())?
            .ok_or("no legal move")?;
        witness_path(view.graph, view.mask, view.cat, to).ok_or_else(|| "target unreachable".into())
    }
}

/// Certificate-driven herder usable on graphs beyond the solver budget.
///
/// Cuts a lone incident edge, else an edge leaving the cat at the center of a
/// star component, else the in-component edge that shrinks the cat's
/// component the most.
#[derive(Debug, Default, Clone)]
pub struct GreedyHerder;

impl HerderStrategy for GreedyHerder {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        let (g, mask, cat) = (view.graph, view.mask, view.cat);
        let incident: Vec<usize> = g.neighbors(cat).iter().map(|&(_, e)| e).filter(|&e| mask.contains(e)).collect();
        if incident.len() == 1 {
            return Ok(incident[0]);
        }
        if let Some(e) = star_component_certificate_masked(g, mask, cat) {
            return Ok(e);
        }
        let mut best: Option<(usize, usize)> = None;
        for e in in_component_edges(g, mask, cat) {
            let after = mask.delete_edge(e).expect("surviving edge");
            let comp = g.masked_component(&after, cat);
            let size: usize = comp.iter().map(|&x| g.masked_degree(&after, x)).sum();
            if best.is_none_or(|(_, s)| size < s) {
                best = Some((e, size));
            }
        }
        best.map(|(e, _)| e).ok_or_else(|| "cat is already captured".into())
    }
}

/// Cat that opens on a maximum-degree vertex and always moves to the
/// reachable vertex of highest surviving degree.
#[derive(Debug, Default, Clone)]
pub struct GreedyCat;

impl CatStrategy for GreedyCat {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn place(&mut self, graph: &Graph) -> Result<usize, String> {
        (0..graph.n()).max_by_key(|&v| (graph.deg(v), std::cmp::Reverse(v))).ok_or_else(|| "empty graph".into())
    }

    fn respond(&mut self, view: &GameView<'_>) -> Result<Vec<usize>, String> {
        let comp = view.graph.masked_component(view.mask, view.cat);
        let to = comp
            .into_iter()
            .filter(|&v| v != view.cat)
            .max_by_key(|&v| (view.graph.masked_degree(view.mask, v), std::cmp::Reverse(v)))
            .ok_or("no legal move")?;
        witness_path(view.graph, view.mask, view.cat, to).ok_or_else(|| "target unreachable".into())
    }
}

/// Uniformly random in-component cut.
#[derive(Debug, Clone)]
pub struct RandomHerder {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomHerder {
    pub fn new(seed: u64) -> Self {
        RandomHerder { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl HerderStrategy for RandomHerder {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        in_component_edges(view.graph, view.mask, view.cat)
            .choose(&mut self.rng)
            .copied()
            .ok_or_else(|| "cat is already captured".into())
    }
}

/// Uniformly random start and destinations.
#[derive(Debug, Clone)]
pub struct RandomCat {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomCat {
    pub fn new(seed: u64) -> Self {
        RandomCat { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl CatStrategy for RandomCat {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn place(&mut self, graph: &Graph) -> Result<usize, String> {
        (0..graph.n()).collect::<Vec<_>>().choose(&mut self.rng).copied().ok_or_else(|| "empty graph".into())
    }

    fn respond(&mut self, view: &GameView<'_>) -> Result<Vec<usize>, String> {
        let targets: Vec<usize> =
            view.graph.masked_component(view.mask, view.cat).into_iter().filter(|&v| v != view.cat).collect();
        let to = *targets.choose(&mut self.rng).ok_or("no legal move")?;
        witness_path(view.graph, view.mask, view.cat, to).ok_or_else(|| "target unreachable".into())
    }
}

/// Replays a fixed list of edges (as endpoint pairs), then defers to a
/// fallback strategy once the script runs out.
pub struct ScriptedHerder {
    script: Vec<(usize, usize)>,
    next: usize,
    fallback: Box<dyn HerderStrategy>,
}

impl ScriptedHerder {
    pub fn new(script: Vec<(usize, usize)>, fallback: Box<dyn HerderStrategy>) -> Self {
        ScriptedHerder { script, next: 0, fallback }
    }
}

impl HerderStrategy for ScriptedHerder {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        match self.script.get(self.next) {
            Some(&(u, v)) => {
                self.next += 1;
                view.graph.edge_index(u, v).ok_or_else(|| format!("scripted cut {u}-{v} is not an edge"))
            }
            None => self.fallback.choose_cut(view),
        }
    }
}

/// Herder moves supplied by a callback (terminal or UI driven).
pub struct InteractiveHerder<F> {
    hook: F,
}

impl<F> InteractiveHerder<F>
where
    F: FnMut(&GameView<'_>) -> Result<usize, String> + Send,
{
    pub fn new(hook: F) -> Self {
        InteractiveHerder { hook }
    }
}

impl<F> HerderStrategy for InteractiveHerder<F>
where
    F: FnMut(&GameView<'_>) -> Result<usize, String> + Send,
{
    fn name(&self) -> String {
        "interactive".into()
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        (self.hook)(view)
    }
}

/// The bounded-victory herder: sever every cycle through the anchor vertex,
/// force the cat off it, then cut the anchor's edge toward the cat so the cat
/// can never return. Anchors form a path in the graph, so the cat is captured
/// within `herder_bound(k)` cuts when no `P_k` exists and every vertex has
/// fewer than `k` edge-disjoint cycles through it.
#[derive(Debug, Default, Clone)]
pub struct CycleSeveringHerder {
    anchor: Option<usize>,
}

impl CycleSeveringHerder {
    pub fn new() -> Self {
        CycleSeveringHerder { anchor: None }
    }

    /// Vertex the cat passed through right after its last visit to `a`.
    fn successor(walk: &[usize], a: usize) -> Option<usize> {
        let last = walk.iter().rposition(|&x| x == a)?;
        walk.get(last + 1).copied()
    }

    /// Passing move: an edge outside the cat's component, else the
    /// in-component edge farthest from the anchor.
    fn passing_move(g: &Graph, mask: &EdgeMask, cat: usize, anchor: usize) -> Option<usize> {
        let comp = g.masked_component(mask, cat);
        let mut inside = vec![false; g.n()];
        for &x in &comp {
            inside[x] = true;
        }
        if let Some(e) = mask.iter().find(|&e| !inside[g.edges()[e].0]) {
            return Some(e);
        }
        let dist = distances(g, mask, anchor);
        mask.iter()
            .filter(|&e| inside[g.edges()[e].0])
            .map(|e| {
                let (u, v) = g.edges()[e];
                (e, dist[u].min(dist[v]))
            })
            .fold(None, |best: Option<(usize, usize)>, (e, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((e, d)),
            })
            .map(|(e, _)| e)
    }
}

impl HerderStrategy for CycleSeveringHerder {
    fn name(&self) -> String {
        "cycle_severing".into()
    }

    fn choose_cut(&mut self, view: &GameView<'_>) -> Result<usize, String> {
        let (g, mask, cat) = (view.graph, view.mask, view.cat);
        if view.events.is_empty() {
            self.anchor = Some(view.walk[0]);
        }
        let comp = g.masked_component(mask, cat);
        let reachable = |x: usize| comp.binary_search(&x).is_ok();
        let mut anchor = self.anchor.unwrap_or(cat);
        // The anchor moves along the cat's trail once the cat is cut off.
        while !reachable(anchor) {
            anchor = match Self::successor(view.walk, anchor) {
                Some(s) if reachable(s) => s,
                _ => cat,
            };
        }
        loop {
            self.anchor = Some(anchor);
            if let Some(&e) = cycle_edges_through(g, mask, anchor).first() {
                return Ok(e);
            }
            if anchor == cat {
                return Self::passing_move(g, mask, cat, anchor).ok_or_else(|| "cat is already captured".into());
            }
            let next = Self::successor(view.walk, anchor).filter(|&s| reachable(s));
            match next.and_then(|s| g.edge_index(anchor, s).filter(|&e| mask.contains(e)).map(|e| (s, e))) {
                Some((s, e)) => {
                    self.anchor = Some(s);
                    return Ok(e);
                }
                None => anchor = cat,
            }
        }
    }
}
