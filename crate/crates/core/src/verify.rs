//! Verification suites: exhaustive and seeded-random checks of the solver
//! against closed forms, characterizations, pruning, the herder bound and
//! the structural oracles. Used by `catherd verify` and the acceptance test.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::catalog::lookup;
use crate::classifier::{catalog_cut2, catalog_cut3, classify, is_isomorphic, star_component_certificate};
use crate::enumerate::{all_graphs, connected_graphs, trees};
use crate::generators::{complete, cycle, path, spider, star, two_triangles_bridge};
use crate::graph::{EdgeMask, Graph};
use crate::infinite::strategies::{builtin_herders, MedianPathCat, RayCutBehind, SubtreeCat};
use crate::infinite::{run_challenge, run_until_capture, HorizonOutcome, InfiniteFamily};
use crate::pruning::{prune_conservative, prune_duplicate_leaves, prune_randomized, prune_tree, RuleSet};
use crate::solver::strategies::{CycleSeveringHerder, OptimalCat};
use crate::solver::{cat_number, cat_number_from, play, vertex_values, SolverConfig};
use crate::structure::{
    bridges, evadibility_threshold, herder_bound, is_two_edge_connected, max_edge_disjoint_cycles_through,
};

/// Failures kept per suite report.
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Paths,
    Cycles,
    Stars,
    Cut1,
    Cut2,
    Catalog3,
    Monotonicity,
    Pruning,
    Bound,
    Spiders,
    Structure,
    Infinite,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Paths,
        Suite::Cycles,
        Suite::Stars,
        Suite::Cut1,
        Suite::Cut2,
        Suite::Catalog3,
        Suite::Monotonicity,
        Suite::Pruning,
        Suite::Bound,
        Suite::Spiders,
        Suite::Structure,
        Suite::Infinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Paths => "paths",
            Suite::Cycles => "cycles",
            Suite::Stars => "stars",
            Suite::Cut1 => "cut1",
            Suite::Cut2 => "cut2",
            Suite::Catalog3 => "catalog3",
            Suite::Monotonicity => "monotonicity",
            Suite::Pruning => "pruning",
            Suite::Bound => "bound",
            Suite::Spiders => "spiders",
            Suite::Structure => "structure",
            Suite::Infinite => "infinite",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, VerifyError> {
        if s.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|p| p.parse()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s.trim()).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// Bounds for the suites. `None` means the suite's own default, which
/// matches the acceptance run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_n: Option<usize>,
    pub max_m: Option<usize>,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: None, max_m: None, seed: 0x00ca_7e4d, solver: SolverConfig::default() }
    }
}

impl VerifyConfig {
    fn n_or(&self, d: usize) -> usize {
        self.max_n.unwrap_or(d)
    }

    fn m_or(&self, d: usize) -> usize {
        self.max_m.unwrap_or(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub detail: String,
}

impl Counterexample {
    fn new(g: &Graph, detail: impl Into<String>) -> Self {
        Counterexample { n: g.n(), edges: g.edges().to_vec(), detail: detail.into() }
    }

    fn note(detail: impl Into<String>) -> Self {
        Counterexample { n: 0, edges: Vec::new(), detail: detail.into() }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 && self.edges.is_empty() {
            return f.write_str(&self.detail);
        }
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "n={} edges=[{}]: {}", self.n, e.join(" "), self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub elapsed_ms: u128,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} failures, seed {}, {} ms", self.suite, self.checked, self.failures, self.seed, self.elapsed_ms)?;
        for c in &self.counterexamples {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

/// Accumulates check outcomes in a deterministic order.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Counterexample>,
}

impl Tally {
    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.failures.push(fail());
        }
    }

    /// Merges per-item results computed in parallel, keeping input order.
    fn absorb(&mut self, items: Vec<(usize, Vec<Counterexample>)>) {
        for (checked, fails) in items {
            self.checked += checked;
            self.failures.extend(fails);
        }
    }

    fn report(self, suite: Suite, seed: u64, start: Instant) -> SuiteReport {
        let failures = self.failures.len();
        SuiteReport {
            suite,
            passed: failures == 0 && self.checked > 0,
            checked: self.checked,
            failures,
            counterexamples: self.failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
            seed,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Random connected graph: a random spanning tree plus `m - (n - 1)` extra
/// edges (fewer if the graph fills up).
pub fn random_connected_graph(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let max_m = n * (n - 1) / 2;
    let target = m.clamp(n - 1, max_m);
    while edges.len() < target {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = (a.min(b), a.max(b));
        if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
            edges.push(e);
        }
    }
    Graph::new(n, edges).expect("valid random graph")
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let tally = match suite {
        Suite::Paths => paths(cfg),
        Suite::Cycles => cycles(cfg),
        Suite::Stars => stars(cfg),
        Suite::Cut1 => cut1(cfg),
        Suite::Cut2 => cut2(cfg),
        Suite::Catalog3 => catalog3(cfg),
        Suite::Monotonicity => monotonicity(cfg),
        Suite::Pruning => pruning(cfg),
        Suite::Bound => bound(cfg),
        Suite::Spiders => spiders(cfg),
        Suite::Structure => structure(cfg),
        Suite::Infinite => infinite(cfg),
    };
    tally.report(suite, cfg.seed, start)
}

pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, cfg)).collect()
}

fn solve(g: &Graph, cfg: &VerifyConfig) -> u32 {
    cat_number(g, cfg.solver.clone()).expect("solver within budget")
}

fn values(g: &Graph, cfg: &VerifyConfig) -> Vec<u32> {
    vertex_values(g, cfg.solver.clone()).expect("solver within budget")
}

fn paths(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for n in 2..=cfg.n_or(9) {
        let g = path(n);
        let v = solve(&g, cfg);
        let want = ceil_log2(n as u64);
        t.check(v == want, || Counterexample::new(&g, format!("cut(P{n}) = {v}, expected {want}")));
    }
    t
}

/// Closed form for cycles: `ceil(log2(2k)) + 1` for `C_{2k}` and `C_{2k+1}`.
pub fn cycle_formula(n: usize) -> u32 {
    ceil_log2(2 * (n / 2) as u64) + 1
}

fn cycles(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    for n in 3..=cfg.n_or(10) {
        let g = cycle(n);
        let v = solve(&g, cfg);
        let want = cycle_formula(n);
        t.check(v == want, || Counterexample::new(&g, format!("cut(C{n}) = {v}, expected {want}")));
    }
    t
}

fn stars(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    // S_n has n leaves.
    for leaves in 2..=cfg.n_or(9) {
        let g = star(leaves + 1);
        let v = solve(&g, cfg);
        t.check(v == 2, || Counterexample::new(&g, format!("cut(S{leaves}) = {v}, expected 2")));
    }
    let k1 = Graph::empty(1);
    let v = solve(&k1, cfg);
    t.check(v == 0, || Counterexample::new(&k1, format!("cut(K1) = {v}")));
    let k2 = complete(2);
    let v = solve(&k2, cfg);
    t.check(v == 1, || Counterexample::new(&k2, format!("cut(K2) = {v}")));
    t
}

fn connected_upto(max_n: usize, max_m: Option<usize>) -> Vec<Graph> {
    connected_graphs(max_n, max_m).expect("within enumeration guard")
}

fn cut1(cfg: &VerifyConfig) -> Tally {
    let gs = connected_upto(cfg.n_or(6), cfg.max_m);
    let mut t = Tally::default();
    let k2 = complete(2);
    let items = gs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let vals = values(g, cfg);
            let cut = vals.iter().copied().max().unwrap_or(0);
            let is_k2 = g.n() == 2;
            t.check((cut == 1) == is_k2, || Counterexample::new(g, format!("cut = {cut}, K2 = {is_k2}")));
            if is_k2 {
                t.check(is_isomorphic(g, &k2).ok().flatten().is_some(), || Counterexample::new(g, "not K2"));
            }
            if g.n() >= 2 {
                for (v, &x) in vals.iter().enumerate() {
                    let leaf = g.deg(v) == 1;
                    t.check((x == 1) == leaf, || Counterexample::new(g, format!("cut(G,{v}) = {x}, leaf = {leaf}")));
                }
            }
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    t
}

fn cut2(cfg: &VerifyConfig) -> Tally {
    let gs = connected_upto(cfg.n_or(6), cfg.max_m);
    let mut t = Tally::default();
    let items = gs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let vals = values(g, cfg);
            for (v, &x) in vals.iter().enumerate() {
                if x < 2 {
                    continue;
                }
                let star = star_component_certificate(g, v).is_some();
                t.check((x == 2) == star, || {
                    Counterexample::new(g, format!("cut(G,{v}) = {x}, star-component certificate = {star}"))
                });
            }
            let cut = vals.iter().copied().max().unwrap_or(0);
            let pruned = prune_duplicate_leaves(g).expect("connected").graph;
            let in_catalog = catalog_cut2().iter().any(|e| is_isomorphic(&pruned, &e.graph).ok().flatten().is_some());
            t.check((cut == 2) == in_catalog, || {
                Counterexample::new(g, format!("cut = {cut}, pruned graph in {{C3, P3, P4}} = {in_catalog}"))
            });
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    for e in catalog_cut2() {
        let v = solve(&e.graph, cfg);
        t.check(v == 2, || Counterexample::new(&e.graph, format!("{} solves to {v}", e.id)));
    }
    t
}

/// The classification domain: connected graphs up to `max_n` vertices and
/// `max_m` edges, plus all trees up to `max_n + 3` vertices.
pub fn classification_domain(max_n: usize, max_m: usize) -> Vec<Graph> {
    let mut gs = connected_upto(max_n, Some(max_m));
    for n in 1..=max_n + 3 {
        gs.extend(trees(n).expect("within tree guard").into_iter().filter(|t| t.n() > max_n || t.edge_count() > max_m));
    }
    gs
}

fn catalog3(cfg: &VerifyConfig) -> Tally {
    let max_n = cfg.n_or(7);
    let gs = classification_domain(max_n, cfg.m_or(10));
    let ttb = two_triangles_bridge();
    let mut t = Tally::default();
    let items = gs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let v = solve(g, cfg);
            let c = classify(g).expect("connected");
            let got = c.verdict.capped_value();
            t.check(got == v.min(4), || Counterexample::new(g, format!("solver {v}, classifier {:?}", c.verdict)));
            if v == 3 {
                let pruned = prune_conservative(g).expect("connected").graph;
                let hit = lookup(&pruned).map(|(e, _)| e.value);
                t.check(hit == Some(3), || Counterexample::new(g, "value 3 but pruned form not in the cut-3 catalog"));
            }
            let cyclomatic = g.edge_count() + 1 - g.n();
            if g.n() <= max_n && cyclomatic >= 2 && v == 3 {
                let ok = is_isomorphic(g, &ttb).ok().flatten().is_some();
                t.check(ok, || Counterexample::new(g, "two independent cycles, value 3, not 2C3+e"));
            }
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    for e in catalog_cut3() {
        let v = solve(&e.graph, cfg);
        t.check(v == 3, || Counterexample::new(&e.graph, format!("{} solves to {v}", e.id)));
    }
    t
}

/// Random `(G, H ⊆ G, v)` triples; checks `cut(H, v) <= cut(G, v)`.
fn monotonicity(cfg: &VerifyConfig) -> Tally {
    let count = 500;
    let max_n = cfg.n_or(8);
    let max_m = cfg.m_or(10);
    let mut t = Tally::default();
    let items = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            let n = rng.gen_range(2..=max_n);
            let m = rng.gen_range(n - 1..=max_m.max(n - 1));
            let g = random_connected_graph(n, m, &mut rng);
            let mut mask = g.full_mask();
            for e in 0..g.edge_count() {
                if rng.gen_bool(0.3) {
                    mask.remove(e);
                }
            }
            let v = rng.gen_range(0..n);
            let big = cat_number_from(&g, &g.full_mask(), v, cfg.solver.clone()).expect("in budget");
            let small = cat_number_from(&g, &mask, v, cfg.solver.clone()).expect("in budget");
            let mut t = Tally::default();
            t.check(small <= big, || {
                let removed: Vec<usize> = (0..g.edge_count()).filter(|&e| !mask.contains(e)).collect();
                Counterexample::new(&g, format!("seed {}: v={v}, removed {removed:?}: {small} > {big}", cfg.seed.wrapping_add(i as u64)))
            });
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    t
}

fn pruning(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    // Duplicate-leaf pruning keeps every survivor's value.
    let gs = connected_upto(cfg.n_or(7), cfg.max_m);
    let items = gs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let r = prune_duplicate_leaves(g).expect("connected");
            if r.is_identity() {
                return (0, Vec::new());
            }
            let before = values(g, cfg);
            let after = values(&r.graph, cfg);
            for (v, image) in r.map.iter().enumerate() {
                if let Some(w) = image {
                    t.check(before[v] == after[*w], || {
                        Counterexample::new(g, format!("vertex {v}: {} before, {} after pruning", before[v], after[*w]))
                    });
                }
            }
            t.check(r.replay(g) == r.graph, || Counterexample::new(g, "replay differs"));
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    // Tree pruning keeps cut(T); random rule orders agree on the value.
    let max_tree = cfg.n_or(7) + 2;
    let ts: Vec<Graph> = (1..=max_tree).flat_map(|n| trees(n).expect("within guard")).collect();
    let items = ts
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut t = Tally::default();
            let v = solve(g, cfg);
            let r = prune_tree(g).expect("tree");
            let p = solve(&r.graph, cfg);
            t.check(v == p, || Counterexample::new(g, format!("cut {v}, pruned tree cut {p}")));
            let again = prune_tree(&r.graph).expect("tree");
            t.check(again.is_identity(), || Counterexample::new(g, "pruning is not idempotent"));
            let seed = cfg.seed.wrapping_add(i as u64);
            let q = prune_randomized(g, RuleSet::Tree, seed).expect("tree");
            let qv = solve(&q.graph, cfg);
            t.check(qv == p, || Counterexample::new(g, format!("seed {seed}: random order gives {qv}, fixed order {p}")));
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    t
}

fn bound(cfg: &VerifyConfig) -> Tally {
    let gs = classification_domain(cfg.n_or(7), cfg.m_or(10));
    let mut t = Tally::default();
    let items = gs
        .par_iter()
        .map(|g| {
            let v = solve(g, cfg) as u64;
            let k = evadibility_threshold(g).expect("small graph") as u64;
            let b = herder_bound(k);
            let ok = v <= b;
            (1, if ok { Vec::new() } else { vec![Counterexample::new(g, format!("cut {v} > bound {b} (k = {k})"))] })
        })
        .collect();
    t.absorb(items);
    let items = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(n - 1..=10.min(n * (n - 1) / 2));
            let g = random_connected_graph(n, m, &mut rng);
            let k = evadibility_threshold(&g).expect("small graph") as u64;
            let b = herder_bound(k);
            let mut cat = OptimalCat::new(cfg.solver.clone());
            let mut herder = CycleSeveringHerder::new();
            let fails = match play(&g, &mut cat, &mut herder) {
                Ok(trace) if trace.score as u64 <= b => Vec::new(),
                Ok(trace) => vec![Counterexample::new(&g, format!("seed {seed}: captured after {} > {b}", trace.score))],
                Err(e) => vec![Counterexample::new(&g, format!("seed {seed}: {e}"))],
            };
            (1, fails)
        })
        .collect();
    t.absorb(items);
    t
}

fn spiders(cfg: &VerifyConfig) -> Tally {
    let mut t = Tally::default();
    let cases: [(&[usize], &[usize], bool); 3] =
        [(&[2, 2, 1], &[2, 2], true), (&[4, 4, 1], &[4, 4], true), (&[3, 3, 1], &[3, 3], false)];
    for (full, pruned, equal) in cases {
        let a = solve(&spider(full), cfg);
        let b = solve(&spider(pruned), cfg);
        t.check((a == b) == equal, || {
            Counterexample::note(format!("spider {full:?} = {a}, spider {pruned:?} = {b}, expected equal = {equal}"))
        });
    }
    t
}

/// Edge sets (as bitmasks) of all simple cycles through `v`.
fn cycles_through(g: &Graph, v: usize) -> Vec<u64> {
    fn walk(g: &Graph, start: usize, at: usize, visited: u64, used: u64, out: &mut Vec<u64>) {
        for &(w, e) in g.neighbors(at) {
            if used >> e & 1 == 1 {
                continue;
            }
            if w == start && used.count_ones() >= 2 {
                out.push(used | 1 << e);
            } else if visited >> w & 1 == 0 {
                walk(g, start, w, visited | 1 << w, used | 1 << e, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(g, v, v, 1 << v, 0, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Exhaustive maximum packing of pairwise edge-disjoint cycles through `v`.
pub fn brute_force_cycle_packing(g: &Graph, v: usize) -> usize {
    fn best(cycles: &[u64], used: u64) -> usize {
        match cycles.split_first() {
            None => 0,
            Some((&c, rest)) => {
                let skip = best(rest, used);
                if c & used == 0 {
                    skip.max(1 + best(rest, used | c))
                } else {
                    skip
                }
            }
        }
    }
    best(&cycles_through(g, v), 0)
}

/// Menger by brute force: every pair stays connected after deleting any
/// single edge.
pub fn brute_force_two_edge_connected(g: &Graph) -> bool {
    if g.n() < 2 || !g.is_connected() {
        return false;
    }
    (0..g.edge_count()).all(|e| {
        let mut mask = g.full_mask();
        mask.remove(e);
        g.masked_component(&mask, 0).len() == g.n()
    })
}

fn component_count(g: &Graph, mask: &EdgeMask) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for v in 0..g.n() {
        if !seen[v] {
            count += 1;
            for w in g.masked_component(mask, v) {
                seen[w] = true;
            }
        }
    }
    count
}

fn structure(cfg: &VerifyConfig) -> Tally {
    let max_n = cfg.n_or(6);
    let gs: Vec<Graph> = (1..=max_n).flat_map(|n| all_graphs(n).expect("within guard")).collect();
    let mut t = Tally::default();
    let items = gs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            for v in 0..g.n() {
                let flow = max_edge_disjoint_cycles_through(g, v).expect("in range");
                let brute = brute_force_cycle_packing(g, v);
                t.check(flow == brute, || Counterexample::new(g, format!("vertex {v}: flow {flow}, brute force {brute}")));
            }
            let fast = is_two_edge_connected(g);
            let slow = brute_force_two_edge_connected(g);
            t.check(fast == slow, || Counterexample::new(g, format!("2-edge-connected: {fast}, Menger check {slow}")));
            let br = bridges(g);
            let base = component_count(g, &g.full_mask());
            for e in 0..g.edge_count() {
                let mut mask = g.full_mask();
                mask.remove(e);
                let splits = component_count(g, &mask) > base;
                t.check(splits == br.contains(&e), || Counterexample::new(g, format!("edge {e}: splits {splits}, bridge {}", br.contains(&e))));
            }
            (t.checked, t.failures)
        })
        .collect();
    t.absorb(items);
    t
}

fn infinite(cfg: &VerifyConfig) -> Tally {
    let budget = crate::infinite::DEFAULT_VERTEX_BUDGET;
    let mut t = Tally::default();
    for family in [InfiniteFamily::BinaryTree, InfiniteFamily::SubdividedBinaryTree { a: 1, b: 1 }] {
        for mut h in builtin_herders(family, cfg.seed) {
            let name = h.name();
            let r = run_challenge(family, &mut SubtreeCat::new(), h.as_mut(), 25, budget);
            let ok = matches!(&r, Ok(r) if r.survived());
            t.check(ok, || Counterexample::note(format!("subtree cat on {family} vs {name}: {r:?}")));
        }
    }
    for family in [InfiniteFamily::Ray, InfiniteFamily::DoubleRay] {
        for k in 1..=12u32 {
            for mut h in builtin_herders(family, cfg.seed.wrapping_add(k as u64)) {
                let name = h.name();
                let r = run_challenge(family, &mut MedianPathCat::new(k), h.as_mut(), k as usize, budget);
                let ok = matches!(&r, Ok(r) if r.survived());
                t.check(ok, || Counterexample::note(format!("median path k={k} on {family} vs {name}: {r:?}")));
            }
        }
    }
    for k in 1..=12u32 {
        let r = run_until_capture(InfiniteFamily::DoubleRay, &mut MedianPathCat::new(k), &mut RayCutBehind, 10_000, budget);
        let ok = matches!(&r, Ok(r) if matches!(r.outcome, HorizonOutcome::Captured { score } if score >= k as usize));
        t.check(ok, || Counterexample::note(format!("ray_cut_behind on double_ray vs median path k={k}: {r:?}")));
    }
    t
}
