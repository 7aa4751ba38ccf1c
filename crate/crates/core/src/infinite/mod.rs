//! Cat Herding on lazily generated, locally finite infinite graphs.
//!
//! Each built-in family has a pure neighbor function over [`Label`]s and
//! hardcoded win/evadibility metadata. A [`Board`] materializes neighbor
//! lists on demand under a vertex budget and records cuts and moves.

mod board;
mod challenge;
pub mod strategies;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use board::{Board, CutLedger, InfiniteEvent};
pub use challenge::{run_challenge, run_until_capture, ChallengeResult, HorizonOutcome, HorizonResult, Outcome};
pub use strategies::{designated_cat, InfiniteCat, InfiniteHerder};

pub const DEFAULT_VERTEX_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfiniteError {
    #[error("unknown infinite family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters for `{family}`: {reason}")]
    BadParams { family: String, reason: String },
    #[error("materialization budget of {budget} vertices exceeded")]
    BudgetExceeded { budget: usize },
    #[error("strategy `{strategy}` does not support family `{family}`")]
    Mismatch { strategy: String, family: String },
    #[error("herder strategy `{strategy}` made an illegal cut {a}-{b}: {reason}")]
    IllegalCut { strategy: String, a: Label, b: Label, reason: String },
    #[error("cat strategy `{strategy}` made an illegal move: {reason}")]
    IllegalMove { strategy: String, reason: String },
    #[error("strategy `{strategy}` failed: {reason}")]
    Strategy { strategy: String, reason: String },
    #[error("k must be at least 1")]
    BadK,
}

/// Vertex names across all families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// Rays, double rays and flower spines.
    Int(i64),
    /// Ladder `(rung, side)`; star of rays `(leg, depth)` with center `(0, 0)`.
    Pair(i64, i64),
    /// Flower petal `(spine vertex, petal, corner)`.
    Triple(i64, i64, i64),
    /// Binary-tree word over `L`/`R`; a nonzero index is the i-th
    /// subdivision vertex on the edge into that word.
    Word(String, u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Triple(a, b, c) => write!(f, "({a},{b},{c})"),
            Label::Word(w, i) => {
                f.write_str(if w.is_empty() { "ε" } else { w })?;
                if *i > 0 {
                    write!(f, "~{i}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let nums: Vec<i64> = inner
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| format!("bad tuple label `{s}`"))?;
            return match nums.as_slice() {
                [a, b] => Ok(Label::Pair(*a, *b)),
                [a, b, c] => Ok(Label::Triple(*a, *b, *c)),
                _ => Err(format!("bad tuple label `{s}`")),
            };
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(Label::Int(i));
        }
        let (word, index) = match s.split_once('~') {
            Some((w, i)) => (w, i.parse::<u32>().map_err(|_| format!("bad subdivision index in `{s}`"))?),
            None => (s, 0),
        };
        let word = if word == "ε" || word == "e" { "" } else { word };
        if word.chars().all(|c| c == 'L' || c == 'R') {
            Ok(Label::Word(word.to_string(), index))
        } else {
            Err(format!("unrecognized label `{s}`"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub cat_win: bool,
    pub omega_evadible: bool,
    pub rationale: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InfiniteFamily {
    BinaryTree,
    /// The edge into depth `d + 1` is subdivided `a + b*d` times.
    SubdividedBinaryTree { a: u32, b: u32 },
    Ray,
    DoubleRay,
    /// One-sided ladder, rungs `0, 1, 2, ...`.
    Ladder,
    StarOfRays { m: u32 },
    /// A ray whose vertex `i` carries `i` pendant triangles.
    Flower,
}

impl fmt::Display for InfiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteFamily::SubdividedBinaryTree { a, b } => write!(f, "subdivided_binary_tree:{a},{b}"),
            InfiniteFamily::StarOfRays { m } => write!(f, "star_of_rays:{m}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for InfiniteFamily {
    type Err = InfiniteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = match s.trim().split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s.trim(), None),
        };
        let bad = |reason: &str| InfiniteError::BadParams { family: name.to_string(), reason: reason.to_string() };
        let nums: Vec<u32> = match params {
            None => Vec::new(),
            Some(p) => p.split(',').map(|x| x.trim().parse::<u32>()).collect::<Result<_, _>>().map_err(|_| bad("expected non-negative integers"))?,
        };
        let none = |fam: InfiniteFamily| if nums.is_empty() { Ok(fam) } else { Err(bad("takes no parameters")) };
        match name {
            "binary_tree" => none(InfiniteFamily::BinaryTree),
            "ray" => none(InfiniteFamily::Ray),
            "double_ray" => none(InfiniteFamily::DoubleRay),
            "ladder" => none(InfiniteFamily::Ladder),
            "flower" => none(InfiniteFamily::Flower),
            "subdivided_binary_tree" => match nums.as_slice() {
                [] => Ok(InfiniteFamily::SubdividedBinaryTree { a: 1, b: 1 }),
                [a, b] if *a <= 64 && *b <= 64 => Ok(InfiniteFamily::SubdividedBinaryTree { a: *a, b: *b }),
                _ => Err(bad("expected a,b with each at most 64")),
            },
            "star_of_rays" => match nums.as_slice() {
                [] => Ok(InfiniteFamily::StarOfRays { m: 3 }),
                [m] if (1..=64).contains(m) => Ok(InfiniteFamily::StarOfRays { m: *m }),
                _ => Err(bad("expected 1 <= m <= 64")),
            },
            _ => Err(InfiniteError::UnknownFamily(name.to_string())),
        }
    }
}

pub fn builtin_generators() -> Vec<InfiniteFamily> {
    vec![
        InfiniteFamily::BinaryTree,
        InfiniteFamily::SubdividedBinaryTree { a: 1, b: 1 },
        InfiniteFamily::Ray,
        InfiniteFamily::DoubleRay,
        InfiniteFamily::Ladder,
        InfiniteFamily::StarOfRays { m: 3 },
        InfiniteFamily::Flower,
    ]
}

fn word_child(w: &str, c: char) -> String {
    let mut s = String::with_capacity(w.len() + 1);
    s.push_str(w);
    s.push(c);
    s
}

impl InfiniteFamily {
    pub fn name(&self) -> &'static str {
        match self {
            InfiniteFamily::BinaryTree => "binary_tree",
            InfiniteFamily::SubdividedBinaryTree { .. } => "subdivided_binary_tree",
            InfiniteFamily::Ray => "ray",
            InfiniteFamily::DoubleRay => "double_ray",
            InfiniteFamily::Ladder => "ladder",
            InfiniteFamily::StarOfRays { .. } => "star_of_rays",
            InfiniteFamily::Flower => "flower",
        }
    }

    pub fn metadata(&self) -> Metadata {
        let (cat_win, rationale) = match self {
            InfiniteFamily::BinaryTree => (true, "is the infinite complete binary tree; a tree with that minor is cat-win"),
            InfiniteFamily::SubdividedBinaryTree { .. } => (true, "subdivision keeps the binary-tree minor, so the tree stays cat-win"),
            InfiniteFamily::Ray => (false, "tree without a binary-tree minor, so herder-win; long paths give every k"),
            InfiniteFamily::DoubleRay => {
                (false, "herder cuts behind the cat and then ahead of it; capture is certain but the score is unbounded")
            }
            InfiniteFamily::Ladder => (true, "infinite and 2-edge-connected, hence cat-win"),
            InfiniteFamily::StarOfRays { .. } => {
                (false, "finitely many rays: no binary-tree minor and no infinite 2-edge-connected subgraph")
            }
            InfiniteFamily::Flower => {
                (false, "finite triangle blocks along a ray: herder-win; vertex i lies on i edge-disjoint cycles")
            }
        };
        // Every connected, locally finite infinite graph has arbitrarily long paths.
        Metadata { cat_win, omega_evadible: true, rationale: rationale.to_string() }
    }

    pub fn root(&self) -> Label {
        match self {
            InfiniteFamily::BinaryTree | InfiniteFamily::SubdividedBinaryTree { .. } => Label::Word(String::new(), 0),
            InfiniteFamily::Ray | InfiniteFamily::DoubleRay | InfiniteFamily::Flower => Label::Int(0),
            InfiniteFamily::Ladder | InfiniteFamily::StarOfRays { .. } => Label::Pair(0, 0),
        }
    }

    fn subdivisions(a: u32, b: u32, depth: usize) -> u32 {
        a.saturating_add(b.saturating_mul(depth as u32))
    }

    pub fn contains(&self, l: &Label) -> bool {
        match (self, l) {
            (InfiniteFamily::Ray, Label::Int(i)) => *i >= 0,
            (InfiniteFamily::DoubleRay, Label::Int(_)) => true,
            (InfiniteFamily::Ladder, Label::Pair(r, s)) => *r >= 0 && (*s == 0 || *s == 1),
            (InfiniteFamily::StarOfRays { m }, Label::Pair(leg, d)) => {
                (*leg == 0 && *d == 0) || ((1..=*m as i64).contains(leg) && *d >= 1)
            }
            (InfiniteFamily::Flower, Label::Int(i)) => *i >= 0,
            (InfiniteFamily::Flower, Label::Triple(i, j, t)) => *i >= 0 && (0..*i).contains(j) && (*t == 0 || *t == 1),
            (InfiniteFamily::BinaryTree, Label::Word(w, 0)) => w.chars().all(|c| c == 'L' || c == 'R'),
            (InfiniteFamily::SubdividedBinaryTree { a, b }, Label::Word(w, i)) => {
                w.chars().all(|c| c == 'L' || c == 'R')
                    && (*i == 0 || (!w.is_empty() && *i <= Self::subdivisions(*a, *b, w.len() - 1)))
            }
            _ => false,
        }
    }

    /// Neighbors in a fixed order. Labels outside the family have none.
    pub fn neighbors(&self, l: &Label) -> Vec<Label> {
        if !self.contains(l) {
            return Vec::new();
        }
        match (self, l) {
            (InfiniteFamily::Ray, Label::Int(i)) => {
                let mut out = Vec::new();
                if *i > 0 {
                    out.push(Label::Int(i - 1));
                }
                out.push(Label::Int(i + 1));
                out
            }
            (InfiniteFamily::DoubleRay, Label::Int(i)) => vec![Label::Int(i - 1), Label::Int(i + 1)],
            (InfiniteFamily::Ladder, Label::Pair(r, s)) => {
                let mut out = Vec::new();
                if *r > 0 {
                    out.push(Label::Pair(r - 1, *s));
                }
                out.push(Label::Pair(*r, 1 - s));
                out.push(Label::Pair(r + 1, *s));
                out
            }
            (InfiniteFamily::StarOfRays { m }, Label::Pair(leg, d)) => {
                if *leg == 0 {
                    (1..=*m as i64).map(|l| Label::Pair(l, 1)).collect()
                } else {
                    let back = if *d == 1 { Label::Pair(0, 0) } else { Label::Pair(*leg, d - 1) };
                    vec![back, Label::Pair(*leg, d + 1)]
                }
            }
            (InfiniteFamily::Flower, Label::Int(i)) => {
                let mut out = Vec::new();
                if *i > 0 {
                    out.push(Label::Int(i - 1));
                }
                out.push(Label::Int(i + 1));
                for j in 0..*i {
                    out.push(Label::Triple(*i, j, 0));
                    out.push(Label::Triple(*i, j, 1));
                }
                out
            }
            (InfiniteFamily::Flower, Label::Triple(i, j, t)) => vec![Label::Int(*i), Label::Triple(*i, *j, 1 - t)],
            (InfiniteFamily::BinaryTree, Label::Word(w, _)) => {
                let mut out = Vec::new();
                if !w.is_empty() {
                    out.push(Label::Word(w[..w.len() - 1].to_string(), 0));
                }
                out.push(Label::Word(word_child(w, 'L'), 0));
                out.push(Label::Word(word_child(w, 'R'), 0));
                out
            }
            (InfiniteFamily::SubdividedBinaryTree { a, b }, Label::Word(w, i)) => {
                let (a, b) = (*a, *b);
                let mut out = Vec::new();
                if *i == 0 {
                    if !w.is_empty() {
                        let s = Self::subdivisions(a, b, w.len() - 1);
                        out.push(if s == 0 { Label::Word(w[..w.len() - 1].to_string(), 0) } else { Label::Word(w.clone(), s) });
                    }
                    let s = Self::subdivisions(a, b, w.len());
                    for c in ['L', 'R'] {
                        out.push(Label::Word(word_child(w, c), u32::from(s > 0)));
                    }
                } else {
                    let s = Self::subdivisions(a, b, w.len() - 1);
                    out.push(if *i == 1 { Label::Word(w[..w.len() - 1].to_string(), 0) } else { Label::Word(w.clone(), i - 1) });
                    out.push(if *i == s { Label::Word(w.clone(), 0) } else { Label::Word(w.clone(), i + 1) });
                }
                out
            }
            _ => Vec::new(),
        }
    }

    pub fn adjacent(&self, a: &Label, b: &Label) -> bool {
        self.neighbors(a).contains(b)
    }

    /// A simple path on exactly `len` vertices, listed in path order.
    pub fn path_window(&self, len: usize) -> Vec<Label> {
        if len == 0 {
            return Vec::new();
        }
        let left = (len - 1) / 2;
        let right = len - 1 - left;
        match self {
            InfiniteFamily::Ray | InfiniteFamily::Flower => (0..len as i64).map(Label::Int).collect(),
            InfiniteFamily::DoubleRay => (-(left as i64)..=right as i64).map(Label::Int).collect(),
            InfiniteFamily::Ladder => (0..len as i64).map(|r| Label::Pair(r, 0)).collect(),
            InfiniteFamily::StarOfRays { m: 1 } => (0..len as i64).map(|d| Label::Pair(if d == 0 { 0 } else { 1 }, d)).collect(),
            InfiniteFamily::StarOfRays { .. } => {
                let mut out: Vec<Label> = (1..=left as i64).rev().map(|d| Label::Pair(1, d)).collect();
                out.push(Label::Pair(0, 0));
                out.extend((1..=right as i64).map(|d| Label::Pair(2, d)));
                out
            }
            InfiniteFamily::BinaryTree => {
                let mut out: Vec<Label> = (1..=left).rev().map(|d| Label::Word("L".repeat(d), 0)).collect();
                out.push(Label::Word(String::new(), 0));
                out.extend((1..=right).map(|d| Label::Word("R".repeat(d), 0)));
                out
            }
            InfiniteFamily::SubdividedBinaryTree { a, b } => {
                // Straight down the leftmost branch.
                let mut out = vec![self.root()];
                let (mut word, mut index) = (String::new(), 0u32);
                while out.len() < len {
                    if index == 0 {
                        word.push('L');
                        index = u32::from(Self::subdivisions(*a, *b, word.len() - 1) > 0);
                    } else if index == Self::subdivisions(*a, *b, word.len() - 1) {
                        index = 0;
                    } else {
                        index += 1;
                    }
                    out.push(Label::Word(word.clone(), index));
                }
                out
            }
        }
    }
}
