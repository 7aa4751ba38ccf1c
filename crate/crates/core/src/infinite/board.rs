use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{InfiniteError, InfiniteFamily, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfiniteEvent {
    Place { vertex: Label },
    Cut { a: Label, b: Label },
    Move { path: Vec<Label> },
}

fn key(a: &Label, b: &Label) -> (Label, Label) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Deleted edges plus the move history.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutLedger {
    cuts: BTreeSet<(Label, Label)>,
    pub events: Vec<InfiniteEvent>,
}

impl CutLedger {
    pub fn is_cut(&self, a: &Label, b: &Label) -> bool {
        self.cuts.contains(&key(a, b))
    }

    pub fn cut_count(&self) -> usize {
        self.cuts.len()
    }

    pub fn cuts(&self) -> impl Iterator<Item = &(Label, Label)> {
        self.cuts.iter()
    }

    pub fn last_cut(&self) -> Option<(&Label, &Label)> {
        self.events.iter().rev().find_map(|e| match e {
            InfiniteEvent::Cut { a, b } => Some((a, b)),
            _ => None,
        })
    }

    pub fn last_move(&self) -> Option<&[Label]> {
        self.events.iter().rev().find_map(|e| match e {
            InfiniteEvent::Move { path } => Some(path.as_slice()),
            _ => None,
        })
    }
}

/// Materialized view of an infinite graph, bounded by a vertex budget.
#[derive(Debug, Clone)]
pub struct Board {
    family: InfiniteFamily,
    cache: HashMap<Label, Vec<Label>>,
    budget: usize,
    ledger: CutLedger,
}

impl Board {
    pub fn new(family: InfiniteFamily, budget: usize) -> Self {
        Board { family, cache: HashMap::new(), budget, ledger: CutLedger::default() }
    }

    pub fn family(&self) -> InfiniteFamily {
        self.family
    }

    pub fn ledger(&self) -> &CutLedger {
        &self.ledger
    }

    pub fn materialized(&self) -> usize {
        self.cache.len()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn neighbors(&mut self, v: &Label) -> Result<&[Label], InfiniteError> {
        if !self.cache.contains_key(v) {
            if self.cache.len() >= self.budget {
                return Err(InfiniteError::BudgetExceeded { budget: self.budget });
            }
            self.cache.insert(v.clone(), self.family.neighbors(v));
        }
        Ok(&self.cache[v])
    }

    pub fn is_cut(&self, a: &Label, b: &Label) -> bool {
        self.ledger.is_cut(a, b)
    }

    pub fn surviving_neighbors(&mut self, v: &Label) -> Result<Vec<Label>, InfiniteError> {
        let nbrs = self.neighbors(v)?.to_vec();
        Ok(nbrs.into_iter().filter(|w| !self.ledger.is_cut(v, w)).collect())
    }

    pub fn degree(&mut self, v: &Label) -> Result<usize, InfiniteError> {
        Ok(self.surviving_neighbors(v)?.len())
    }

    /// Why the cut `a-b` is illegal, if it is.
    pub fn check_cut(&mut self, a: &Label, b: &Label) -> Result<Option<String>, InfiniteError> {
        if !self.family.contains(a) || !self.neighbors(a)?.contains(b) {
            return Ok(Some("not an edge of the graph".into()));
        }
        if self.is_cut(a, b) {
            return Ok(Some("edge already cut".into()));
        }
        Ok(None)
    }

    /// Why `path` is not a legal cat move from `from`, if it is not.
    pub fn check_move(&mut self, from: &Label, path: &[Label]) -> Result<Option<String>, InfiniteError> {
        if path.len() < 2 {
            return Ok(Some("cat must move along a non-trivial path".into()));
        }
        if &path[0] != from {
            return Ok(Some(format!("path must start at the cat's vertex {from}")));
        }
        let mut seen = HashSet::new();
        for v in path {
            if !seen.insert(v) {
                return Ok(Some(format!("path revisits {v}")));
            }
        }
        for w in path.windows(2) {
            if !self.neighbors(&w[0])?.contains(&w[1]) {
                return Ok(Some(format!("{}-{} is not an edge", w[0], w[1])));
            }
            if self.is_cut(&w[0], &w[1]) {
                return Ok(Some(format!("edge {}-{} has been cut", w[0], w[1])));
            }
        }
        Ok(None)
    }

    pub(crate) fn record_place(&mut self, v: Label) {
        self.ledger.events.push(InfiniteEvent::Place { vertex: v });
    }

    pub(crate) fn record_cut(&mut self, a: Label, b: Label) {
        self.ledger.cuts.insert(key(&a, &b));
        self.ledger.events.push(InfiniteEvent::Cut { a, b });
    }

    pub(crate) fn record_move(&mut self, path: Vec<Label>) {
        self.ledger.events.push(InfiniteEvent::Move { path });
    }

    /// BFS over surviving edges up to `radius` steps. Returns the visited
    /// vertices in BFS order with their parent links.
    pub fn explore(&mut self, from: &Label, radius: usize) -> Result<Vec<(Label, Option<usize>, usize)>, InfiniteError> {
        let mut order: Vec<(Label, Option<usize>, usize)> = vec![(from.clone(), None, 0)];
        let mut index: HashMap<Label, usize> = HashMap::from([(from.clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (v, _, d) = order[i].clone();
            if d == radius {
                continue;
            }
            for w in self.surviving_neighbors(&v)? {
                if !index.contains_key(&w) {
                    index.insert(w.clone(), order.len());
                    queue.push_back(order.len());
                    order.push((w, Some(i), d + 1));
                }
            }
        }
        Ok(order)
    }

    /// Shortest surviving path from `from` to the first vertex satisfying
    /// `target` (other than `from`), within `radius`.
    pub fn path_to<F>(&mut self, from: &Label, radius: usize, target: F) -> Result<Option<Vec<Label>>, InfiniteError>
    where
        F: Fn(&Label) -> bool,
    {
        let order = self.explore(from, radius)?;
        let Some(mut i) = order.iter().skip(1).position(|(v, _, _)| target(v)).map(|p| p + 1) else {
            return Ok(None);
        };
        let mut path = vec![order[i].0.clone()];
        while let Some(p) = order[i].1 {
            path.push(order[p].0.clone());
            i = p;
        }
        path.reverse();
        Ok(Some(path))
    }
}
