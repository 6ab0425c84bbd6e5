mod common;

use common::*;
use contractad::graph_core::*;
use contractad::trees::*;
use std::collections::BTreeSet;

/// Stable trees by recursion over the root partition.
fn stable_count(g: &Graph) -> usize {
    if g.n() == 1 {
        return 1;
    }
    partitions(g)
        .iter()
        .filter(|p| p.len() >= 2)
        .map(|p| p.blocks().iter().map(|&b| stable_count(&restrict(g, b))).product::<usize>())
        .sum()
}

fn binary_count(g: &Graph) -> usize {
    if g.n() == 1 {
        return 1;
    }
    partitions(g)
        .iter()
        .filter(|p| p.len() == 2)
        .map(|p| p.blocks().iter().map(|&b| binary_count(&restrict(g, b))).product::<usize>())
        .sum()
}

/// Nested sets by clique search over pairwise nested-or-disjoint proper tubes.
fn nested_count(g: &Graph) -> usize {
    let tubes: Vec<VSet> = proper_tubes(g);
    let ok = |a: VSet, b: VSet| a & !b == 0 || b & !a == 0 || a & b == 0;
    fn go(i: usize, tubes: &[VSet], cur: &mut Vec<VSet>, ok: &dyn Fn(VSet, VSet) -> bool) -> usize {
        if i == tubes.len() {
            return 1;
        }
        let mut c = go(i + 1, tubes, cur, ok);
        if cur.iter().all(|&t| ok(t, tubes[i])) {
            cur.push(tubes[i]);
            c += go(i + 1, tubes, cur, ok);
            cur.pop();
        }
        c
    }
    go(0, &tubes, &mut Vec::new(), &ok)
}

#[test]
fn stable_trees_are_nested_sets_plus_one() {
    for g in graphs_up_to(5) {
        let trees = enumerate_admissible_trees(&g, &TreeFilter::Stable).unwrap();
        let nonempty = nested_count(&g) - 1;
        assert_eq!(trees.len(), nonempty + 1, "{g}");
        assert_eq!(trees.len(), stable_count(&g), "{g}");
        assert_eq!(nested_sets(&g).len(), nonempty + 1, "{g}");
    }
    let p4 = enumerate_admissible_trees(&parse_graph("P4").unwrap(), &TreeFilter::Stable).unwrap();
    assert_eq!(p4.len(), 11);
}

#[test]
fn nested_set_dictionary_is_bijective() {
    for g in graphs_up_to(5) {
        let mut seen = BTreeSet::new();
        for t in enumerate_admissible_trees(&g, &TreeFilter::Stable).unwrap() {
            let ns = nested_set_of(&t).unwrap();
            assert_eq!(tree_of_nested_set(&g, &ns), t);
            assert!(seen.insert(ns));
        }
        let all: BTreeSet<_> = nested_sets(&g).into_iter().collect();
        assert_eq!(seen, all, "{g}");
    }
}

#[test]
fn binary_trees_match_recursion() {
    let p2 = parse_graph("P2").unwrap();
    for g in graphs_up_to(5) {
        let trees = enumerate_admissible_trees(&g, &TreeFilter::Arity(vec![p2.clone()])).unwrap();
        assert_eq!(trees.len(), binary_count(&g), "{g}");
        for t in &trees {
            assert!(check_admissible(&g, &t.root).is_ok());
        }
    }
    // (2n-3)!! on complete graphs
    let k: Vec<usize> = (2..=5).map(|n| binary_count(&parse_graph(&format!("K{n}")).unwrap())).collect();
    assert_eq!(k, vec![1, 3, 15, 105]);
}

#[test]
fn contracting_an_edge_drops_one_tube() {
    for g in graphs_up_to(5) {
        for t in enumerate_admissible_trees(&g, &TreeFilter::Stable).unwrap() {
            let ns = nested_set_of(&t).unwrap();
            let fl = Flat::new(&t.root);
            let order = ordered_internal_edges(&fl);
            assert_eq!(order.len(), ns.len());
            for (i, &e) in order.iter().enumerate() {
                let (u, pos) = contract_tree_edge(&t, e).unwrap();
                assert_eq!(pos, i + 1);
                let mut expect = ns.clone();
                expect.remove(&fl.leafset[e]);
                assert_eq!(nested_set_of(&u).unwrap(), expect);
            }
        }
    }
}

#[test]
fn input_graphs_are_contractions_of_restrictions() {
    let g = parse_graph("C4").unwrap();
    for t in enumerate_admissible_trees(&g, &TreeFilter::Stable).unwrap() {
        let fl = Flat::new(&t.root);
        for v in 0..fl.len() {
            let ig = input_graph(&t, v).unwrap();
            let r = restrict(&g, fl.leafset[v]);
            assert_eq!(ig.n(), fl.blocks(v).len());
            assert!(partitions(&r).iter().any(|p| contract(&r, p).0 == ig));
        }
    }
}

#[test]
fn non_tubes_are_not_admissible() {
    let g = parse_graph("P3").unwrap();
    let bad = Node::vertex((), vec![Node::vertex((), vec![Node::Leaf(0), Node::Leaf(2)]), Node::Leaf(1)]);
    assert_eq!(check_admissible(&g, &bad), Err(0b101));
    let good = Node::vertex((), vec![Node::vertex((), vec![Node::Leaf(0), Node::Leaf(1)]), Node::Leaf(2)]);
    assert!(check_admissible(&g, &good).is_ok());
}

#[test]
fn substitution_grafts_block_trees() {
    let g = parse_graph("P4").unwrap();
    let part = GraphPartition::new(&g, vec![0b0011, 0b1100]).unwrap();
    let (q, blocks) = contract(&g, &part);
    let outer = enumerate_admissible_trees(&q, &TreeFilter::Stable).unwrap().remove(0);
    let inners: Vec<AdmissibleTree> = blocks
        .iter()
        .map(|&b| enumerate_admissible_trees(&restrict(&g, b), &TreeFilter::Stable).unwrap().remove(0))
        .collect();
    let t = substitute(&g, &part, &outer, &inners).unwrap();
    assert_eq!(t.to_string(), "((1 2) (3 4))");
    assert_eq!(nested_set_of(&t).unwrap(), [0b0011, 0b1100].into_iter().collect());
}
