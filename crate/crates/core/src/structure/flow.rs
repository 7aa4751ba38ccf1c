//! Unit-ish capacity max-flow (Dinic) for the small networks built here.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { arcs: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// An undirected edge usable once in either direction.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: u32) {
        self.out[a].push(self.arcs.len());
        self.arcs.push(Arc { to: b, cap });
        self.out[b].push(self.arcs.len());
        self.arcs.push(Arc { to: a, cap });
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] == usize::MAX {
                    level[arc.to] = level[x] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn augment(&mut self, x: usize, t: usize, pushed: u32, level: &[usize], next: &mut [usize]) -> u32 {
        if x == t {
            return pushed;
        }
        while next[x] < self.out[x].len() {
            let a = self.out[x][next[x]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[x] + 1 {
                let got = self.augment(to, t, pushed.min(cap), level, next);
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            next[x] += 1;
        }
        0
    }

    /// Maximum flow value from `s` to `t`. Consumes residual capacity.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        if s == t {
            return 0;
        }
        let mut total = 0;
        while let Some(level) = self.levels(s, t) {
            let mut next = vec![0; self.out.len()];
            loop {
                let got = self.augment(s, t, u32::MAX, &level, &mut next);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
        total
    }
}
