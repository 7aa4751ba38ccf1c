//! Finite graph families addressed by a small textual DSL:
//! `family` or `family:p1,p2,...` with non-negative integer parameters.
//!
//! Labeling conventions (tests rely on them):
//! - `path:n`: vertices `0..n` in order.
//! - `cycle:n`: vertices in cyclic order, closing edge `(0, n-1)`.
//! - `star:n`: center `0`, leaves `1..n`.
//! - `spider:a,b,...`: root `0`, then each leg's vertices outward from the root.
//! - `two_triangles_bridge`: triangles `{0,1,2}` and `{3,4,5}`, bridge `2-3`.
//! - `triangle_tails:a,b,c`: triangle `{0,1,2}`, pendant paths with `a`, `b`, `c`
//!   vertices hanging off `0`, `1`, `2`.
//! - `triangle_fork:a,b`: triangle `{0,1,2}` with two pendant paths of `a` and `b`
//!   vertices both attached at `0`.
//! - `square_leaves:a,b,c,d`: 4-cycle `0-1-2-3` with that many leaves per cycle vertex.
//! - `triangle_branch:d,l,p`: triangle `{0,1,2}`, a path of `d` vertices hanging
//!   off `0`, and at its far end `l` leaves then `p` pendant paths of 2 vertices.
//! - `bispider:a,b`: adjacent centers `0` and `1`, each carrying two pendant paths
//!   of 2 vertices, then `a` leaves on `0` and `b` leaves on `1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

const MAX_VERTICES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("malformed parameter list `{0}`")]
    Malformed(String),
    #[error("{family}: {reason}")]
    OutOfRange { family: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Spider,
    TwoTrianglesBridge,
    TriangleTails,
    TriangleFork,
    SquareLeaves,
    TriangleBranch,
    Bispider,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Complete,
        Family::Spider,
        Family::TwoTrianglesBridge,
        Family::TriangleTails,
        Family::TriangleFork,
        Family::SquareLeaves,
        Family::TriangleBranch,
        Family::Bispider,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Spider => "spider",
            Family::TwoTrianglesBridge => "two_triangles_bridge",
            Family::TriangleTails => "triangle_tails",
            Family::TriangleFork => "triangle_fork",
            Family::SquareLeaves => "square_leaves",
            Family::TriangleBranch => "triangle_branch",
            Family::Bispider => "bispider",
        }
    }

    /// Example spec string, used by listings.
    pub fn example(self) -> &'static str {
        match self {
            Family::Path => "path:8",
            Family::Cycle => "cycle:5",
            Family::Star => "star:6",
            Family::Complete => "complete:4",
            Family::Spider => "spider:2,2,1",
            Family::TwoTrianglesBridge => "two_triangles_bridge",
            Family::TriangleTails => "triangle_tails:1,1,1",
            Family::TriangleFork => "triangle_fork:1,2",
            Family::SquareLeaves => "square_leaves:1,1,0,0",
            Family::TriangleBranch => "triangle_branch:1,1,1",
            Family::Bispider => "bispider:1,0",
        }
    }
}

/// A parsed generator descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", p.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, rest) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| SpecError::UnknownFamily(name.to_string()))?;
        let params = match rest {
            None => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| SpecError::Malformed(list.to_string()))?,
        };
        let spec = GeneratorSpec { family, params };
        spec.validate()?;
        Ok(spec)
    }
}

impl GeneratorSpec {
    fn out_of_range(&self, reason: impl Into<String>) -> SpecError {
        SpecError::OutOfRange { family: self.family.name().to_string(), reason: reason.into() }
    }

    fn arity(&self, expected: usize) -> Result<(), SpecError> {
        if self.params.len() == expected {
            Ok(())
        } else {
            Err(self.out_of_range(format!("expected {expected} parameter(s), got {}", self.params.len())))
        }
    }

    fn validate(&self) -> Result<(), SpecError> {
        let p = &self.params;
        match self.family {
            Family::Path | Family::Star | Family::Complete => {
                self.arity(1)?;
                if p[0] == 0 {
                    return Err(self.out_of_range("n must be at least 1"));
                }
            }
            Family::Cycle => {
                self.arity(1)?;
                if p[0] < 3 {
                    return Err(self.out_of_range("a cycle needs at least 3 vertices"));
                }
            }
            Family::Spider => {
                if p.is_empty() || p.contains(&0) {
                    return Err(self.out_of_range("legs must be a non-empty list of positive lengths"));
                }
            }
            Family::TwoTrianglesBridge => self.arity(0)?,
            Family::TriangleTails => self.arity(3)?,
            Family::TriangleFork => self.arity(2)?,
            Family::SquareLeaves => self.arity(4)?,
            Family::TriangleBranch => {
                self.arity(3)?;
                if p[0] == 0 {
                    return Err(self.out_of_range("the tail needs at least 1 vertex"));
                }
            }
            Family::Bispider => self.arity(2)?,
        }
        let total: usize = match self.family {
            Family::Complete => p[0],
            Family::TwoTrianglesBridge => 6,
            Family::TriangleBranch => p[0] + p[1] + 2 * p[2] + 3,
            Family::Bispider => p[0] + p[1] + 10,
            _ => p.iter().sum::<usize>() + 4,
        };
        if total > MAX_VERTICES || (self.family == Family::Complete && p[0] > 2_000) {
            return Err(self.out_of_range("graph too large"));
        }
        Ok(())
    }

    pub fn to_graph(&self) -> Graph {
        let p = &self.params;
        match self.family {
            Family::Path => path(p[0]),
            Family::Cycle => cycle(p[0]),
            Family::Star => star(p[0]),
            Family::Complete => complete(p[0]),
            Family::Spider => spider(p),
            Family::TwoTrianglesBridge => two_triangles_bridge(),
            Family::TriangleTails => with_pendants(&cycle(3), &[(0, p[0]), (1, p[1]), (2, p[2])]),
            Family::TriangleFork => with_pendants(&cycle(3), &[(0, p[0]), (0, p[1])]),
            Family::SquareLeaves => {
                let mut pend = Vec::new();
                for (v, &count) in p.iter().enumerate() {
                    pend.extend(std::iter::repeat_n((v, 1), count));
                }
                with_pendants(&cycle(4), &pend)
            }
            Family::TriangleBranch => {
                let tail = with_pendants(&cycle(3), &[(0, p[0])]);
                let end = tail.n() - 1;
                let pend: Vec<(usize, usize)> =
                    std::iter::repeat_n((end, 1), p[1]).chain(std::iter::repeat_n((end, 2), p[2])).collect();
                with_pendants(&tail, &pend)
            }
            Family::Bispider => {
                let mut pend = vec![(0, 2), (0, 2), (1, 2), (1, 2)];
                pend.extend(std::iter::repeat_n((0, 1), p[0]));
                pend.extend(std::iter::repeat_n((1, 1), p[1]));
                with_pendants(&path(2), &pend)
            }
        }
    }
}

/// Parses a generator spec and builds its graph.
pub fn from_spec(spec: &str) -> Result<Graph, SpecError> {
    Ok(spec.parse::<GeneratorSpec>()?.to_graph())
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs n >= 3");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn star(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (0, i))).expect("valid star")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid complete graph")
}

/// Spider with root `0` and one pendant path per leg length.
pub fn spider(legs: &[usize]) -> Graph {
    with_pendants(&Graph::empty(1), &legs.iter().map(|&l| (0, l)).collect::<Vec<_>>())
}

pub fn two_triangles_bridge() -> Graph {
    Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).expect("valid")
}

/// Attaches, for each `(anchor, len)`, a new path of `len` vertices to `anchor`.
pub fn with_pendants(base: &Graph, pendants: &[(usize, usize)]) -> Graph {
    let mut next = base.n();
    let mut extra = Vec::new();
    for &(anchor, len) in pendants {
        let mut prev = anchor;
        for _ in 0..len {
            extra.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    base.extend(next - base.n(), &extra).expect("pendants keep the graph simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_four() {
        let g = from_spec("path:4").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn triangle_branch_and_bispider() {
        let g = from_spec("triangle_branch:1,1,1").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (3, 5), (5, 6)]);
        let b = from_spec("bispider:1,0").unwrap();
        assert_eq!((b.n(), b.edge_count()), (11, 10));
        assert!(b.is_tree());
        assert_eq!((b.deg(0), b.deg(1)), (4, 3));
        assert!(from_spec("triangle_branch:0,1,1").is_err());
        assert!(from_spec("bispider:1").is_err());
    }

    #[test]
    fn spider_221() {
        let g = from_spec("spider:2,2,1").unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.is_tree());
        assert_eq!(g.deg(0), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (0, 5), (1, 2), (3, 4)]);
    }

    #[test]
    fn two_triangles() {
        let g = from_spec("two_triangles_bridge").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert!(g.has_edge(2, 3));
    }

    #[test]
    fn family_edge_counts() {
        for n in 1..12 {
            assert_eq!(from_spec(&format!("path:{n}")).unwrap().edge_count(), n - 1);
            assert_eq!(from_spec(&format!("star:{n}")).unwrap().edge_count(), n - 1);
            if n >= 3 {
                assert_eq!(from_spec(&format!("cycle:{n}")).unwrap().edge_count(), n);
            }
        }
        assert_eq!(from_spec("complete:5").unwrap().edge_count(), 10);
    }

    #[test]
    fn catalog_helpers() {
        let g = from_spec("triangle_fork:1,2").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        assert_eq!(g.deg(0), 4);
        let sq = from_spec("square_leaves:1,1,0,0").unwrap();
        assert_eq!((sq.n(), sq.edge_count()), (6, 6));
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(from_spec("wheel:5").unwrap_err(), SpecError::UnknownFamily("wheel".into()));
        assert!(matches!(from_spec("cycle:2"), Err(SpecError::OutOfRange { .. })));
        assert!(matches!(from_spec("path:x"), Err(SpecError::Malformed(_))));
        assert!(matches!(from_spec("spider:2,0"), Err(SpecError::OutOfRange { .. })));
        assert!(matches!(from_spec("path"), Err(SpecError::OutOfRange { .. })));
    }

    #[test]
    fn display_round_trip() {
        let s: GeneratorSpec = "spider:3,3,1".parse().unwrap();
        assert_eq!(s.to_string(), "spider:3,3,1");
    }
}
