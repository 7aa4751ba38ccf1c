//! Cat and herder strategies for the infinite families.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Board, InfiniteError, InfiniteFamily, Label};

pub trait InfiniteCat: Send {
    fn name(&self) -> String;
    fn place(&mut self, board: &mut Board) -> Result<Label, InfiniteError>;
    /// Witness path starting at `cat`.
    fn respond(&mut self, board: &mut Board, cat: &Label) -> Result<Vec<Label>, InfiniteError>;
}

pub trait InfiniteHerder: Send {
    fn name(&self) -> String;
    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError>;
}

fn mismatch(strategy: &str, family: InfiniteFamily) -> InfiniteError {
    InfiniteError::Mismatch { strategy: strategy.to_string(), family: family.to_string() }
}

fn stuck(strategy: &str, reason: impl Into<String>) -> InfiniteError {
    InfiniteError::Strategy { strategy: strategy.to_string(), reason: reason.into() }
}

/// Steps to the first surviving neighbor.
fn any_step(board: &mut Board, cat: &Label, strategy: &str) -> Result<Vec<Label>, InfiniteError> {
    let w = board.surviving_neighbors(cat)?.into_iter().next().ok_or_else(|| stuck(strategy, "no surviving edge"))?;
    Ok(vec![cat.clone(), w])
}

fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// Value for the cat standing at position `i` (1-based) of a path on `n`
/// vertices with the herder to move.
pub fn path_vertex_value(n: usize, i: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        ceil_log2(i.min(n + 1 - i)) + 1
    }
}

/// Keeps to the root of a clean binary subtree, stepping to the child whose
/// side the latest cut missed.
#[derive(Debug, Default)]
pub struct SubtreeCat {
    root: String,
}

impl SubtreeCat {
    pub fn new() -> Self {
        Self::default()
    }
}

impl InfiniteCat for SubtreeCat {
    fn name(&self) -> String {
        "subtree".into()
    }

    fn place(&mut self, board: &mut Board) -> Result<Label, InfiniteError> {
        match board.family() {
            InfiniteFamily::BinaryTree | InfiniteFamily::SubdividedBinaryTree { .. } => {
                self.root.clear();
                Ok(board.family().root())
            }
            f => Err(mismatch("subtree", f)),
        }
    }

    fn respond(&mut self, board: &mut Board, cat: &Label) -> Result<Vec<Label>, InfiniteError> {
        let left = format!("{}L", self.root);
        let in_left = |l: &Label| matches!(l, Label::Word(w, _) if w.starts_with(&left));
        let go = match board.ledger().last_cut() {
            Some((a, b)) if in_left(a) || in_left(b) => 'R',
            _ => 'L',
        };
        let child = format!("{}{go}", self.root);
        // Walk down through any subdivision vertices to the child branch vertex.
        let mut path = vec![cat.clone()];
        loop {
            let last = path.last().expect("non-empty").clone();
            if last == Label::Word(child.clone(), 0) {
                break;
            }
            let next = board
                .neighbors(&last)?
                .iter()
                .find(|n| match n {
                    Label::Word(w, _) => *w == child && !path.contains(n),
                    _ => false,
                })
                .cloned()
                .ok_or_else(|| stuck("subtree", format!("lost the way from {last} to {child}")))?;
            path.push(next);
        }
        self.root = child;
        Ok(path)
    }
}

/// Plays inside a fixed window of `2^k` path vertices, always moving to
/// the vertex of its surviving segment with the best path value.
#[derive(Debug)]
pub struct MedianPathCat {
    k: u32,
    window: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl MedianPathCat {
    pub fn new(k: u32) -> Self {
        MedianPathCat { k, window: Vec::new(), index: HashMap::new() }
    }

    /// Chooses the destination index inside segment `[a, b]` from `p`.
    fn destination(a: usize, b: usize, p: usize) -> Option<usize> {
        let n = b - a + 1;
        (a..=b)
            .filter(|&q| q != p)
            .max_by_key(|&q| (path_vertex_value(n, q - a + 1), std::cmp::Reverse(q.abs_diff(p)), std::cmp::Reverse(q)))
    }
}

impl InfiniteCat for MedianPathCat {
    fn name(&self) -> String {
        format!("median_path:{}", self.k)
    }

    fn place(&mut self, board: &mut Board) -> Result<Label, InfiniteError> {
        if self.k == 0 || self.k > 40 || (1usize << self.k) > board.budget() {
            return Err(stuck(&self.name(), format!("window 2^{} does not fit the vertex budget {}", self.k, board.budget())));
        }
        self.window = board.family().path_window(1 << self.k);
        self.index = self.window.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(self.window[(1 << (self.k - 1)) - 1].clone())
    }

    fn respond(&mut self, board: &mut Board, cat: &Label) -> Result<Vec<Label>, InfiniteError> {
        let Some(&p) = self.index.get(cat) else {
            return any_step(board, cat, &self.name());
        };
        let w = &self.window;
        let mut a = p;
        while a > 0 && !board.is_cut(&w[a - 1], &w[a]) {
            a -= 1;
        }
        let mut b = p;
        while b + 1 < w.len() && !board.is_cut(&w[b], &w[b + 1]) {
            b += 1;
        }
        match Self::destination(a, b, p) {
            Some(q) if q > p => Ok(w[p..=q].to_vec()),
            Some(q) => Ok(w[q..=p].iter().rev().cloned().collect()),
            None => any_step(board, cat, &self.name()),
        }
    }
}

/// Returns to a hub on many edge-disjoint cycles and steps onto an intact
/// cycle from there. On the ladder the hub moves: the cat keeps beyond
/// every cut, where the squares are intact.
#[derive(Debug)]
pub struct CycleHubCat {
    petals: i64,
}

impl CycleHubCat {
    /// On the flower the hub is spine vertex `petals`.
    pub fn new(petals: i64) -> Self {
        CycleHubCat { petals: petals.max(1) }
    }
}

impl InfiniteCat for CycleHubCat {
    fn name(&self) -> String {
        format!("cycle_hub:{}", self.petals)
    }

    fn place(&mut self, board: &mut Board) -> Result<Label, InfiniteError> {
        match board.family() {
            InfiniteFamily::Flower => Ok(Label::Int(self.petals)),
            InfiniteFamily::Ladder => Ok(Label::Pair(0, 0)),
            f => Err(mismatch("cycle_hub", f)),
        }
    }

    fn respond(&mut self, board: &mut Board, cat: &Label) -> Result<Vec<Label>, InfiniteError> {
        let name = self.name();
        match board.family() {
            InfiniteFamily::Flower => {
                let hub = Label::Int(self.petals);
                if *cat != hub {
                    if let Some(path) = board.path_to(cat, 3, |l| *l == hub)? {
                        return Ok(path);
                    }
                    return any_step(board, cat, &name);
                }
                for j in 0..self.petals {
                    let (x, y) = (Label::Triple(self.petals, j, 0), Label::Triple(self.petals, j, 1));
                    if !board.is_cut(&hub, &x) && !board.is_cut(&hub, &y) && !board.is_cut(&x, &y) {
                        return Ok(vec![hub, x]);
                    }
                }
                any_step(board, cat, &name)
            }
            InfiniteFamily::Ladder => {
                let Label::Pair(r, _) = cat else { return Err(stuck(&name, "not a ladder vertex")) };
                let beyond = board
                    .ledger()
                    .cuts()
                    .flat_map(|(a, b)| [a, b])
                    .filter_map(|l| if let Label::Pair(x, _) = l { Some(*x) } else { None })
                    .max()
                    .unwrap_or(-1);
                let target_rung = beyond.max(*r) + 2;
                let target = Label::Pair(target_rung, 0);
                let radius = (target_rung - r) as usize + 8;
                match board.path_to(cat, radius, |l| *l == target)? {
                    Some(path) => Ok(path),
                    None => any_step(board, cat, &name),
                }
            }
            f => Err(mismatch("cycle_hub", f)),
        }
    }
}

/// Moves to the farthest reachable vertex within a radius.
#[derive(Debug)]
pub struct RunnerCat {
    radius: usize,
}

impl RunnerCat {
    pub fn new(radius: usize) -> Self {
        RunnerCat { radius: radius.max(1) }
    }
}

impl InfiniteCat for RunnerCat {
    fn name(&self) -> String {
        format!("runner:{}", self.radius)
    }

    fn place(&mut self, board: &mut Board) -> Result<Label, InfiniteError> {
        Ok(board.family().root())
    }

    fn respond(&mut self, board: &mut Board, cat: &Label) -> Result<Vec<Label>, InfiniteError> {
        let order = board.explore(cat, self.radius)?;
        let far = order.iter().map(|(_, _, d)| *d).max().unwrap_or(0);
        if far == 0 {
            return Err(stuck(&self.name(), "no surviving edge"));
        }
        let mut i = order.iter().position(|(_, _, d)| *d == far).expect("present");
        let mut path = vec![order[i].0.clone()];
        while let Some(p) = order[i].1 {
            path.push(order[p].0.clone());
            i = p;
        }
        path.reverse();
        Ok(path)
    }
}

/// The cat strategy the families are evaluated with.
pub fn designated_cat(family: InfiniteFamily, k: u32) -> Box<dyn InfiniteCat> {
    match family {
        InfiniteFamily::BinaryTree | InfiniteFamily::SubdividedBinaryTree { .. } => Box::new(SubtreeCat::new()),
        InfiniteFamily::Ladder => Box::new(CycleHubCat::new(1)),
        InfiniteFamily::Flower => Box::new(CycleHubCat::new(i64::from(k))),
        InfiniteFamily::Ray | InfiniteFamily::DoubleRay | InfiniteFamily::StarOfRays { .. } => Box::new(MedianPathCat::new(k)),
    }
}

/// Cuts the last edge the cat walked; before the first move, an edge at the cat.
#[derive(Debug, Default)]
pub struct CutLastEdge;

impl InfiniteHerder for CutLastEdge {
    fn name(&self) -> String {
        "cut_last_edge".into()
    }

    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError> {
        if let Some(path) = board.ledger().last_move() {
            let (a, b) = (path[path.len() - 2].clone(), path[path.len() - 1].clone());
            if !board.is_cut(&a, &b) {
                return Ok((a, b));
            }
        }
        let step = any_step(board, cat, "cut_last_edge")?;
        Ok((step[0].clone(), step[1].clone()))
    }
}

/// On rays: cut next to the cat on an infinite side (the negative side
/// first), then shrink the finite segment from the cat's longer side.
#[derive(Debug, Default)]
pub struct RayCutBehind;

impl RayCutBehind {
    pub fn supports(family: InfiniteFamily) -> bool {
        matches!(family, InfiniteFamily::Ray | InfiniteFamily::DoubleRay)
    }
}

impl InfiniteHerder for RayCutBehind {
    fn name(&self) -> String {
        "ray_cut_behind".into()
    }

    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError> {
        let family = board.family();
        let (true, Label::Int(p)) = (Self::supports(family), cat) else {
            return Err(mismatch("ray_cut_behind", family));
        };
        let p = *p;
        // Segment ends from the ledger: cuts (x, x+1) left and right of p.
        let mut left: Option<i64> = if family == InfiniteFamily::Ray { Some(0) } else { None };
        let mut right: Option<i64> = None;
        for (a, b) in board.ledger().cuts() {
            if let (Label::Int(x), Label::Int(y)) = (a, b) {
                let (lo, hi) = ((*x).min(*y), (*x).max(*y));
                if hi <= p {
                    left = Some(left.map_or(hi, |l| l.max(hi)));
                } else if lo >= p {
                    right = Some(right.map_or(lo, |r| r.min(lo)));
                }
            }
        }
        let behind = (Label::Int(p - 1), Label::Int(p));
        let ahead = (Label::Int(p), Label::Int(p + 1));
        Ok(match (left, right) {
            (None, _) => behind,
            (Some(_), None) => ahead,
            (Some(l), Some(r)) => {
                if p > l && (p - l >= r - p || p == r) {
                    behind
                } else {
                    ahead
                }
            }
        })
    }
}

/// Uniform over surviving edges within `radius` of the cat.
#[derive(Debug)]
pub struct RandomHerder {
    seed: u64,
    radius: usize,
    rng: ChaCha8Rng,
}

impl RandomHerder {
    pub fn new(seed: u64, radius: usize) -> Self {
        RandomHerder { seed, radius: radius.max(1), rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl InfiniteHerder for RandomHerder {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError> {
        let order = board.explore(cat, self.radius)?;
        let within: HashMap<&Label, usize> = order.iter().map(|(l, _, d)| (l, *d)).collect();
        let mut edges = Vec::new();
        for (v, _, _) in &order {
            for w in board.surviving_neighbors(v)? {
                if v < &w && within.contains_key(&w) {
                    edges.push((v.clone(), w));
                }
            }
        }
        edges.choose(&mut self.rng).cloned().ok_or_else(|| stuck(&self.name(), "no surviving edge near the cat"))
    }
}

/// Plays a fixed list of cuts, then defers to a fallback.
pub struct ScriptedHerder {
    script: VecDeque<(Label, Label)>,
    fallback: Box<dyn InfiniteHerder>,
}

impl ScriptedHerder {
    pub fn new(script: Vec<(Label, Label)>, fallback: Box<dyn InfiniteHerder>) -> Self {
        ScriptedHerder { script: script.into(), fallback }
    }
}

impl InfiniteHerder for ScriptedHerder {
    fn name(&self) -> String {
        format!("scripted+{}", self.fallback.name())
    }

    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError> {
        match self.script.pop_front() {
            Some(cut) => Ok(cut),
            None => self.fallback.choose_cut(board, cat),
        }
    }
}

/// Asks a callback for every cut.
pub struct InteractiveHerder<F> {
    hook: F,
}

impl<F> InteractiveHerder<F>
where
    F: FnMut(&Board, &Label) -> Result<(Label, Label), String> + Send,
{
    pub fn new(hook: F) -> Self {
        InteractiveHerder { hook }
    }
}

impl<F> InfiniteHerder for InteractiveHerder<F>
where
    F: FnMut(&Board, &Label) -> Result<(Label, Label), String> + Send,
{
    fn name(&self) -> String {
        "interactive".into()
    }

    fn choose_cut(&mut self, board: &mut Board, cat: &Label) -> Result<(Label, Label), InfiniteError> {
        (self.hook)(board, cat).map_err(|reason| stuck("interactive", reason))
    }
}

/// Every built-in herder that applies to `family`; the interactive one
/// is left out.
pub fn builtin_herders(family: InfiniteFamily, seed: u64) -> Vec<Box<dyn InfiniteHerder>> {
    let mut out: Vec<Box<dyn InfiniteHerder>> = vec![
        Box::new(CutLastEdge),
        Box::new(RandomHerder::new(seed, 6)),
        Box::new(ScriptedHerder::new(vec![(family.root(), family.neighbors(&family.root())[0].clone())], Box::new(RandomHerder::new(seed ^ 0x5eed, 3)))),
    ];
    if RayCutBehind::supports(family) {
        out.push(Box::new(RayCutBehind));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path;
    use crate::solver::{vertex_values, SolverConfig};

    #[test]
    fn path_value_formula_matches_solver() {
        for n in 1..=12 {
            let values = vertex_values(&path(n), SolverConfig::default()).unwrap();
            for (i, &v) in values.iter().enumerate() {
                assert_eq!(path_vertex_value(n, i + 1), v, "P{n} vertex {i}");
            }
        }
    }

    #[test]
    fn median_opens_at_value_k() {
        for k in 1..=6u32 {
            let n = 1usize << k;
            assert_eq!(path_vertex_value(n, n / 2), k);
        }
    }
}
