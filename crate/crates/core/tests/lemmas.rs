use catherd::enumerate::{connected_graphs, spiders, trees};
use catherd::generators::{cycle, from_spec, path, spider, star, two_triangles_bridge};
use catherd::pruning::{prune_tree, tree_add_p2, PruneError};
use catherd::solver::{cat_number, vertex_values, SolverConfig};
use catherd::Graph;

fn values(g: &Graph) -> Vec<u32> {
    vertex_values(g, SolverConfig::default()).unwrap()
}

fn cut(g: &Graph) -> u32 {
    cat_number(g, SolverConfig::default()).unwrap()
}

/// All `(u, v, w)` that satisfy the `tree_add_p2` hypothesis.
fn anchors(t: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for w in (0..t.n()).filter(|&w| t.deg(w) == 1) {
        let v = t.neighbors(w)[0].0;
        if t.deg(v) != 2 {
            continue;
        }
        let u = t.neighbors(v).iter().map(|&(x, _)| x).find(|&x| x != w).unwrap();
        if t.deg(u) == 2 {
            out.push((u, v, w));
        }
    }
    out
}

#[test]
fn p2_addition_keeps_values_on_small_trees() {
    let mut checked = 0;
    for n in 5..=7 {
        for t in trees(n).unwrap() {
            for (u, v, w) in anchors(&t) {
                for k in 1..=2 {
                    let tk = tree_add_p2(&t, u, v, w, k).unwrap();
                    let before = values(&t);
                    let after = values(&tk);
                    assert_eq!(&after[..n], &before[..], "T = {:?}, u={u}, k={k}", t.edges());
                    for i in 0..k {
                        assert_eq!(after[n + 2 * i], 2);
                        assert_eq!(after[n + 2 * i + 1], 1);
                    }
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 20);
}

// Known failure of the P2-addition lemma: on P8 the only anchors are 2 1 0 and
// its mirror 5 6 7, and either addition lifts some original vertex from 3 to 4.
#[test]
fn p2_addition_fails_on_p8() {
    let p8 = path(8);
    let mut broken = Vec::new();
    for (u, v, w) in anchors(&p8) {
        let tk = tree_add_p2(&p8, u, v, w, 1).unwrap();
        let before = values(&p8);
        let after = values(&tk);
        for a in 0..8 {
            if after[a] != before[a] {
                broken.push((u, a, before[a], after[a]));
            }
        }
    }
    assert!(!broken.is_empty());
    assert!(broken.iter().all(|&(_, _, b, a)| b == 3 && a == 4), "{broken:?}");
}

#[test]
fn tree_p2_system_rule_is_unsound_at_ten_vertices() {
    let s = spider(&[5, 2, 2]);
    assert_eq!(cut(&s), 4);
    let pruned = prune_tree(&s).unwrap().graph;
    assert!(pruned.is_path());
    assert_eq!(pruned.n(), 8);
    assert_eq!(cut(&pruned), 3);
}

#[test]
fn tree_prune_preserves_value_up_to_nine_vertices() {
    for n in 1..=9 {
        for t in trees(n).unwrap() {
            let p = prune_tree(&t).unwrap().graph;
            assert_eq!(cut(&p), cut(&t), "{:?}", t.edges());
        }
    }
}

#[test]
fn p2_addition_examples() {
    // P5 = 0-1-2-3-4 with u v w = 2 3 4 gives S({2,2}) rooted at 2 plus the stem.
    let t = tree_add_p2(&path(5), 2, 3, 4, 1).unwrap();
    assert_eq!(t.n(), 7);
    assert_eq!(t.deg(2), 3);
    assert_eq!(&values(&t)[..5], &values(&path(5))[..]);
    assert!(matches!(tree_add_p2(&path(4), 1, 2, 3, 1), Err(PruneError::Precondition(_))));
    assert_eq!(tree_add_p2(&path(6), 3, 4, 5, 0).unwrap(), path(6));
}

#[test]
fn spider_sentinels() {
    let got: Vec<u32> = spiders(&[vec![2, 2, 1], vec![2, 2], vec![4, 4, 1], vec![4, 4], vec![3, 3, 1], vec![3, 3]])
        .unwrap()
        .iter()
        .map(cut)
        .collect();
    assert_eq!(got, vec![3, 3, 4, 4, 4, 3]);
}

#[test]
fn cycle_with_tail_has_two_maximisers() {
    use catherd::classifier::find_cycle_with_tail;
    let mut seen = 0;
    for g in connected_graphs(6, None).unwrap() {
        if find_cycle_with_tail(&g).is_none() {
            continue;
        }
        let vals = values(&g);
        let top = *vals.iter().max().unwrap();
        assert!(top >= 3, "{:?}", g.edges());
        assert!(vals.iter().filter(|&&x| x == top).count() >= 2, "{:?}", g.edges());
        seen += 1;
    }
    assert!(seen > 0);
}

// The maximisers need not be adjacent: C4 with leaves at opposite vertices.
#[test]
fn cycle_with_tail_maximisers_can_be_far_apart() {
    let g = Graph::new(6, [(0, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)]).unwrap();
    assert_eq!(values(&g), vec![1, 1, 3, 3, 4, 4]);
    assert!(!g.has_edge(4, 5));
}

#[test]
fn paper_values() {
    for n in 1..=12 {
        assert_eq!(cut(&path(n)), (n as f64).log2().ceil() as u32, "P{n}");
    }
    assert_eq!(cut(&cycle(4)), 3);
    assert_eq!(cut(&cycle(6)), 4);
    assert_eq!(cut(&two_triangles_bridge()), 3);
    for leaves in 2..=8 {
        assert_eq!(cut(&star(leaves + 1)), 2);
    }
    assert_eq!(cut(&from_spec("complete:4").unwrap()), 5);
}
