use catherd::classifier::classify;
use catherd::enumerate::canonical_form;
use catherd::pruning::{leaf_duplicate, prune_conservative, prune_duplicate_leaves, prune_randomized, RuleSet};
use catherd::solver::strategies::{OptimalCat, OptimalHerder};
use catherd::solver::{cat_number, cat_number_from, play_from, vertex_values, SolverConfig};
use catherd::{parse_graph, EdgeMask, Graph};
use proptest::prelude::*;

/// Connected graph on 1..=max_n vertices: a random spanning tree plus extra
/// edges, capped at `max_m` edges.
fn connected(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
            let extra = prop::collection::vec((0..n, 0..n), 0..=max_m.saturating_sub(n.saturating_sub(1)));
            (Just(n), parents, extra, any::<u64>())
        })
        .prop_map(move |(n, parents, extra, shuffle)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            for (a, b) in extra {
                let e = (a.min(b), a.max(b));
                if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) && edges.len() < max_m {
                    edges.push(e);
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = shuffle;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            g.relabel(&perm)
        })
}

fn submask(g: &Graph, bits: u64) -> EdgeMask {
    let mut m = g.full_mask();
    for e in 0..g.edge_count() {
        if bits >> e & 1 == 0 {
            m.remove(e);
        }
    }
    m
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trip(g in connected(9, 14)) {
        let back = parse_graph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn relabeling_keeps_canonical_form(g in connected(7, 12), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed as usize % n.max(1));
        if n > 1 {
            perm.swap(0, seed as usize % n);
        }
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
    }

    #[test]
    fn components_partition_and_shrink(g in connected(9, 14), bits in any::<u64>(), e in any::<prop::sample::Index>()) {
        let mask = submask(&g, bits);
        let comps = g.components_in(&mask);
        let mut seen = vec![0; g.n()];
        for c in &comps {
            for &v in c {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        if g.edge_count() > 0 {
            let cut = mask.delete_edge(e.index(g.edge_count())).unwrap();
            for v in 0..g.n() {
                let before = g.component_of(&mask, v).unwrap();
                let after = g.component_of(&cut, v).unwrap();
                prop_assert!(after.iter().all(|x| before.contains(x)));
            }
        }
    }

    #[test]
    fn restriction_does_not_change_values(g in connected(7, 10)) {
        let a = vertex_values(&g, SolverConfig::default()).unwrap();
        let b = vertex_values(&g, SolverConfig::unrestricted()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn subgraph_monotonicity(g in connected(7, 11), bits in any::<u64>(), v in any::<prop::sample::Index>()) {
        let v = v.index(g.n());
        let h = submask(&g, bits);
        let sub = cat_number_from(&g, &h, v, cfg()).unwrap();
        let full = cat_number_from(&g, &g.full_mask(), v, cfg()).unwrap();
        prop_assert!(sub <= full, "cut(h, {v}) = {sub} > cut(g, {v}) = {full}");
    }

    #[test]
    fn value_at_most_edge_count(g in connected(8, 12)) {
        prop_assert!(cat_number(&g, cfg()).unwrap() as usize <= g.edge_count());
    }

    #[test]
    fn leaves_are_exactly_value_one(g in connected(7, 10)) {
        prop_assume!(g.n() > 1);
        let values = vertex_values(&g, cfg()).unwrap();
        for v in 0..g.n() {
            prop_assert_eq!(values[v] == 1, g.deg(v) == 1, "vertex {}", v);
        }
    }

    #[test]
    fn duplicate_leaf_prune_keeps_survivor_values(g in connected(8, 10)) {
        let r = prune_duplicate_leaves(&g).unwrap();
        let before = vertex_values(&g, cfg()).unwrap();
        let after = vertex_values(&r.graph, cfg()).unwrap();
        for (v, image) in r.map.iter().enumerate() {
            if let Some(w) = image {
                prop_assert_eq!(before[v], after[*w], "vertex {}", v);
            }
        }
    }

    #[test]
    fn conservative_prune_keeps_survivor_values(g in connected(9, 10)) {
        let r = prune_conservative(&g).unwrap();
        prop_assume!(!r.is_identity());
        let before = vertex_values(&g, cfg()).unwrap();
        let after = vertex_values(&r.graph, cfg()).unwrap();
        for (v, image) in r.map.iter().enumerate() {
            if let Some(w) = image {
                prop_assert_eq!(before[v], after[*w], "vertex {}", v);
            }
        }
    }

    #[test]
    fn pruning_is_idempotent(g in connected(10, 12)) {
        let once = prune_conservative(&g).unwrap();
        prop_assert!(prune_conservative(&once.graph).unwrap().is_identity());
        let dup = prune_duplicate_leaves(&g).unwrap();
        prop_assert!(prune_duplicate_leaves(&dup.graph).unwrap().is_identity());
        prop_assert_eq!(once.replay(&g), once.graph);
    }

    #[test]
    fn prune_order_does_not_change_value(g in connected(9, 10), seed in any::<u64>()) {
        let fixed = prune_conservative(&g).unwrap().graph;
        let shuffled = prune_randomized(&g, RuleSet::Conservative, seed).unwrap().graph;
        prop_assert_eq!(cat_number(&fixed, cfg()).unwrap(), cat_number(&shuffled, cfg()).unwrap());
    }

    #[test]
    fn leaf_duplicate_keeps_values(g in connected(7, 9), pick in any::<prop::sample::Index>()) {
        let options: Vec<(usize, usize)> = (0..g.n())
            .filter(|&v| g.deg(v) == 1)
            .map(|v| (g.neighbors(v)[0].0, v))
            .filter(|&(u, _)| g.deg(u) >= 2)
            .collect();
        prop_assume!(!options.is_empty());
        let (u, v) = options[pick.index(options.len())];
        let bigger = leaf_duplicate(&g, u, v).unwrap();
        let before = vertex_values(&g, cfg()).unwrap();
        let after = vertex_values(&bigger, cfg()).unwrap();
        prop_assert_eq!(&after[..g.n()], &before[..]);
        prop_assert_eq!(after[g.n()], 1);
    }

    #[test]
    fn optimal_play_scores_the_value(g in connected(7, 9), start in any::<prop::sample::Index>()) {
        let start = start.index(g.n());
        let trace = play_from(&g, start, &mut OptimalCat::new(cfg()), &mut OptimalHerder::new(cfg())).unwrap();
        prop_assert_eq!(trace.score, cat_number_from(&g, &g.full_mask(), start, cfg()).unwrap());
    }

    #[test]
    fn classifier_agrees_with_solver(g in connected(7, 10)) {
        let c = classify(&g).unwrap();
        prop_assert_eq!(c.verdict.capped_value(), cat_number(&g, cfg()).unwrap().min(4));
    }
}
