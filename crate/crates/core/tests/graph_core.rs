mod common;

use common::*;
use contractad::graph_core::*;
use contractad::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

fn g(s: &str) -> Graph {
    parse_graph(s).unwrap()
}

#[test]
fn families_parse_to_expected_edges() {
    assert_eq!(g("P4").edges(), vec![(1, 2), (2, 3), (3, 4)]);
    assert_eq!(g("C5").edge_count(), 5);
    assert!(g("C5").adjacent(0, 4));
    assert_eq!(g("K4").edge_count(), 6);
    assert_eq!(g("St3").edges(), vec![(1, 2), (1, 3), (1, 4)]);
    assert_eq!(g("K(1^2,2)").edges(), vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
    assert_eq!(g("edges:1-2,2-3").edges(), vec![(1, 2), (2, 3)]);
    assert_eq!(g("P1").n(), 1);
}

#[test]
fn bad_specs_are_rejected() {
    assert!(matches!(parse_graph("diamond"), Err(Error::Parse { .. })));
    assert!(matches!(parse_graph("edges:1-2,3-4"), Err(Error::Disconnected(_))));
    assert!(matches!(parse_graph("edges:1-"), Err(Error::Parse { .. })));
    assert!(matches!(parse_graph("edges:0-1"), Err(Error::Parse { .. })));
    assert!(parse_graph("C2").is_err());
    assert!(parse_graph("Q3").is_err());
}

#[test]
fn display_round_trips() {
    for h in graphs_up_to(5) {
        assert_eq!(parse_graph(&h.to_string()).unwrap(), h);
    }
}

#[test]
fn labeled_and_unlabeled_counts() {
    let labeled: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(labeled, vec![1, 1, 4, 38, 728]);
    let classes: Vec<usize> = (1..=5).map(|n| isomorphism_classes(n).len()).collect();
    assert_eq!(classes, vec![1, 1, 2, 6, 21]);
    for n in 1..=5 {
        let total: usize = isomorphism_classes(n).iter().map(|(_, c)| c).sum();
        assert_eq!(total, labeled[n - 1]);
    }
}

#[test]
fn tubes_match_connected_subsets() {
    for h in graphs_up_to(5) {
        let expect: Vec<VSet> = (1..=h.full()).filter(|&s| is_connected(&h, s)).collect();
        let mut got: Vec<VSet> = enumerate_tubes(&h).into_iter().map(|t| t.0).collect();
        got.sort();
        assert_eq!(got, expect, "{h}");
    }
}

#[test]
fn partitions_match_brute_force() {
    for h in graphs_up_to(5) {
        let mut expect = connected_partitions(&h);
        for p in expect.iter_mut() {
            p.sort_by_key(|&b| min_vertex(b));
        }
        expect.sort();
        let mut got: Vec<Vec<VSet>> = partitions(&h).iter().map(|p| p.blocks().to_vec()).collect();
        got.sort();
        assert_eq!(got, expect, "{h}");
    }
}

#[test]
fn moebius_is_linear_chromatic_coefficient() {
    for h in graphs_up_to(5) {
        let c = chromatic_coefficients(&h);
        assert_eq!(c[1], BigRational::from_integer(BigInt::from(moebius(&h).unwrap())), "{h}");
    }
}

#[test]
fn moebius_of_families() {
    for n in 2..=6 {
        assert_eq!(moebius(&g(&format!("P{n}"))).unwrap().abs(), 1);
        assert_eq!(moebius(&g(&format!("St{}", n - 1))).unwrap().abs(), 1);
    }
    for n in 3..=6 {
        assert_eq!(moebius(&g(&format!("C{n}"))).unwrap().abs(), n as i64 - 1);
    }
    let fact = [1i64, 1, 2, 6, 24, 120];
    for n in 1..=6 {
        let m = moebius(&g(&format!("K{n}"))).unwrap();
        assert_eq!(m.abs(), fact[n - 1]);
        assert_eq!(m.signum(), if n % 2 == 1 { 1 } else { -1 });
    }
}

#[test]
fn whitney_expansion_matches_chromatic_polynomial() {
    for h in graphs_up_to(5) {
        let l = partition_lattice(&h).unwrap();
        let mu = l.moebius_from_bottom();
        let mut coeffs = vec![0i64; h.n() + 1];
        for (i, p) in l.elements.iter().enumerate() {
            coeffs[p.len()] += mu[i];
        }
        let c = chromatic_coefficients(&h);
        for k in 0..=h.n() {
            assert_eq!(c[k], BigRational::from_integer(BigInt::from(coeffs[k])), "{h} t^{k}");
        }
    }
}

#[test]
fn moebius_recursion_on_every_interval() {
    for h in graphs_up_to(5) {
        let l = partition_lattice(&h).unwrap();
        for a in 0..l.len() {
            let mu = l.moebius_from(a);
            for b in 0..l.len() {
                if !l.leq[a][b] {
                    assert_eq!(mu[b], 0);
                    continue;
                }
                let s: i64 = l.interval(a, b).iter().map(|&x| mu[x]).sum();
                assert_eq!(s, if a == b { 1 } else { 0 }, "{h}");
            }
        }
    }
}

#[test]
fn intervals_factor_through_minors() {
    for h in graphs_up_to(5) {
        let l = partition_lattice(&h).unwrap();
        let from_bottom = l.moebius_from_bottom();
        for (i, p) in l.elements.iter().enumerate() {
            // [p, top] is the lattice of the contraction.
            let (q, _) = contract(&h, p);
            assert_eq!(l.moebius_from(i)[l.top], moebius(&q).unwrap(), "{h} / {p}");
            assert_eq!(l.interval(i, l.top).len(), partitions(&q).len());
            // [bottom, p] is the product of the block lattices.
            let prod: i64 = p.blocks().iter().map(|&b| moebius(&restrict(&h, b)).unwrap()).product();
            assert_eq!(from_bottom[i], prod, "{h} at {p}");
            let size: usize = p.blocks().iter().map(|&b| partitions(&restrict(&h, b)).len()).product();
            assert_eq!(l.interval(l.bottom, i).len(), size);
        }
    }
}

#[test]
fn contraction_and_restriction() {
    let (q, part) = contract_tube(&g("K3"), 0b011);
    assert_eq!(q, g("P2"));
    assert_eq!(part.len(), 2);
    let (q, _) = contract_tube(&g("C4"), 0b0011);
    assert_eq!(q, g("K3"));
    let (q, _) = contract_tube(&g("P4"), 0b0110);
    assert_eq!(q, g("P3"));
    assert_eq!(restrict(&g("C5"), 0b00111), g("P3"));
    assert!(GraphPartition::new(&g("P3"), vec![0b101, 0b010]).is_err());
}

#[test]
fn canonical_forms_detect_isomorphism() {
    let c4a = g("C4");
    let c4b = g("edges:1-3,1-4,2-3,2-4");
    assert!(c4a.is_isomorphic(&c4b));
    assert!(!c4a.is_isomorphic(&g("P4")));
    assert_eq!(automorphisms(&c4a).unwrap().len(), 8);
    assert_eq!(automorphisms(&g("K4")).unwrap().len(), 24);
    assert_eq!(automorphisms(&diamond()).unwrap().len(), 4);
    assert_eq!(family_name(&diamond()), "K(1^2,2)");
}
