mod common;

use common::*;
use contractad::algebra::{fmt_mono, q, Q};
use contractad::graph_core::*;
use contractad::orlik_solomon::*;
use contractad::presets::gc_gerst;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

fn shuffled(g: &Graph, r: &mut rand_chacha::ChaCha8Rng) -> EdgeOrder {
    let mut es = g.edges();
    es.shuffle(r);
    EdgeOrder::from_list(g, &es).unwrap()
}

fn word(x: Vec<usize>) -> OSElement {
    [(x, q(1))].into_iter().collect()
}

#[test]
fn hilbert_series_counts_broken_circuit_free_sets() {
    let mut r = rng(3);
    for g in graphs_up_to(5) {
        let h = os_hilbert(&g);
        assert_eq!(h, nbc_counts(&EdgeOrder::lex(&g).edges, g.n()), "{g}");
        let o = shuffled(&g, &mut r);
        let by_order: Vec<usize> = (0..g.n()).map(|k| nbc_basis(&g, &o, k).len()).collect();
        assert_eq!(by_order, h, "{g}");
        assert_eq!(by_order, nbc_counts(&o.edges, g.n()));
        let lattice = os_hilbert_lattice(&g).unwrap();
        assert_eq!(h.iter().map(|&x| x as i64).collect::<Vec<_>>(), lattice);
        let c = chromatic_coefficients(&g);
        for k in 0..g.n() {
            assert_eq!(c[g.n() - k].abs(), num_rational::BigRational::from_integer(h[k].into()), "{g}");
        }
        assert_eq!(h[g.n() - 1] as i64, moebius(&g).unwrap().abs());
    }
}

#[test]
fn circuit_boundaries_vanish() {
    for g in graphs_up_to(5) {
        let o = EdgeOrder::lex(&g);
        for c in circuits(&o.edges) {
            assert!(os_reduce(&o, &c).is_empty(), "{g}");
            let mut boundary = OSElement::new();
            for i in 0..c.len() {
                let mut w = c.clone();
                w.remove(i);
                let s = if i % 2 == 0 { q(1) } else { q(-1) };
                for (k, v) in os_reduce(&o, &w) {
                    *boundary.entry(k).or_insert_with(|| q(0)) += s.clone() * v;
                }
            }
            boundary.retain(|_, v| *v != q(0));
            assert!(boundary.is_empty(), "{g} circuit {c:?}");
        }
    }
}

#[test]
fn reduction_on_the_triangle() {
    let k3 = parse_graph("K3").unwrap();
    let o = EdgeOrder::lex(&k3);
    assert_eq!(o.edges, vec![(1, 2), (1, 3), (2, 3)]);
    let x = os_reduce(&o, &[1, 2]);
    let expect: OSElement = [(vec![0, 1], q(-1)), (vec![0, 2], q(1))].into_iter().collect();
    assert_eq!(x, expect);
    assert_eq!(os_reduce(&o, &[2, 0]), [(vec![0, 2], q(-1))].into_iter().collect());
    assert!(os_reduce(&o, &[1, 1]).is_empty());
    assert_eq!(sort_word(&[2, 0, 1]), Some((1, vec![0, 1, 2])));
    assert_eq!(sort_word(&[1, 0]), Some((-1, vec![0, 1])));
    assert_eq!(sort_word(&[1, 1]), None);
}

#[test]
fn multiplication_is_associative_and_graded_commutative() {
    let mut r = rng(4);
    for _ in 0..300 {
        let g = random_graph(&mut r, 3, 5);
        let o = EdgeOrder::lex(&g);
        let m = o.len();
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let k = r.gen_range(0..=2usize);
            let mut w: Vec<usize> = (0..m).collect();
            w.shuffle(r);
            w.truncate(k);
            os_reduce(&o, &w)
        };
        let (x, y, z) = (pick(&mut r), pick(&mut r), pick(&mut r));
        let left = os_multiply(&o, &os_multiply(&o, &x, &y), &z);
        let right = os_multiply(&o, &x, &os_multiply(&o, &y, &z));
        assert_eq!(left, right, "{g}");
        assert_eq!(os_multiply(&o, &one(), &x), x);
    }
    let k3 = parse_graph("K3").unwrap();
    let o = EdgeOrder::lex(&k3);
    let (a, b) = (word(vec![0]), word(vec![2]));
    let ab = os_multiply(&o, &a, &b);
    let ba: OSElement = os_multiply(&o, &b, &a).into_iter().map(|(k, v)| (k, -v)).collect();
    assert_eq!(ab, ba);
}

#[test]
fn nbc_sets_are_independent_and_reduced() {
    for g in graphs_up_to(5) {
        let o = EdgeOrder::lex(&g);
        for s in nbc_sets(&g, &o) {
            assert!(is_nbc(&o, &s));
            assert_eq!(os_reduce(&o, &s), word(s.clone()));
            let sub: Vec<(usize, usize)> = s.iter().map(|&i| o.edges[i]).collect();
            assert!(Graph::forest(g.n(), &sub).is_ok(), "{g}");
        }
    }
}

#[test]
fn cocomposition_is_well_defined_and_unital() {
    let mut r = rng(5);
    let mut checked = 0;
    for g in graphs_up_to(5).into_iter().filter(|g| g.n() >= 3) {
        let o = EdgeOrder::lex(&g);
        let tubes = proper_tubes(&g);
        for _ in 0..4 {
            let t = tubes[r.gen_range(0..tubes.len())];
            let k = r.gen_range(1..g.n());
            let mut w: Vec<usize> = (0..o.len()).collect();
            w.shuffle(&mut r);
            w.truncate(k);
            let raw = os_cocompose(&g, &o, &word(w.clone()), t).unwrap();
            let reduced = os_cocompose(&g, &o, &os_reduce(&o, &w), t).unwrap();
            assert_eq!(raw, reduced, "{g} {w:?}");
            checked += 1;
        }
        let unit = os_cocompose(&g, &o, &one(), tubes[0]).unwrap();
        assert_eq!(unit, [((vec![], vec![]), <Q as num_traits::One>::one())].into_iter().collect());
    }
    assert!(checked > 1000);
    assert!(os_cocompose(&parse_graph("P3").unwrap(), &EdgeOrder::lex(&parse_graph("P3").unwrap()), &one(), 0b101).is_err());
}

#[test]
fn trees_of_nbc_sets_pair_diagonally() {
    let mut r = rng(6);
    for g in graphs_up_to(5) {
        let (sets, m) = pairing_matrix(&g, &EdgeOrder::lex(&g)).unwrap();
        assert_eq!(sets.len(), os_hilbert(&g).iter().sum::<usize>());
        assert!(is_signed_identity(&m), "{g}");
        let o = shuffled(&g, &mut r);
        assert!(is_signed_identity(&pairing_matrix(&g, &o).unwrap().1), "{g} {:?}", o.edges);
    }
}

#[test]
fn trees_of_nbc_sets_have_m_at_the_bottom() {
    let gens = gc_gerst().generators;
    let b = gens.iter().position(|x| x.name == "b").unwrap() as u16;
    for g in graphs_up_to(4) {
        let o = EdgeOrder::lex(&g);
        for s in nbc_sets(&g, &o) {
            let t = tree_of_nbc(&g, &o, &s).unwrap();
            assert!(m_at_bottom(&t));
            assert_eq!(t.count_letter(b), s.len());
            assert_eq!(t.host, g);
            assert_eq!(gerst_pairing(&t, &o, &s).unwrap().abs(), 1);
        }
    }
}

#[test]
fn diamond_top_degree() {
    let d = diamond();
    let o = EdgeOrder::lex(&d);
    let gens = gc_gerst().generators;
    let top = nbc_basis(&d, &o, 3);
    let named: Vec<Vec<(usize, usize)>> = top.iter().map(|s| s.iter().map(|&i| o.edges[i]).collect()).collect();
    assert_eq!(
        named,
        vec![
            vec![(1, 2), (1, 4), (2, 3)],
            vec![(1, 2), (1, 4), (3, 4)],
            vec![(1, 2), (2, 3), (2, 4)],
            vec![(1, 2), (2, 3), (3, 4)],
        ]
    );
    let trees: Vec<String> = top.iter().map(|s| fmt_mono(&tree_of_nbc(&d, &o, s).unwrap(), &gens)).collect();
    assert_eq!(trees[0], "b(b(1,4),b(2,3))");
    assert_eq!(trees[2], "b(1,b(b(2,4),3))");
    assert_eq!(os_hilbert(&d), vec![1, 5, 8, 4]);
}

#[test]
fn edge_orders_validate() {
    let g = parse_graph("P3").unwrap();
    assert!(EdgeOrder::from_list(&g, &[(2, 3), (1, 2)]).is_ok());
    assert!(EdgeOrder::from_list(&g, &[(1, 2)]).is_err());
    assert!(EdgeOrder::from_list(&g, &[(1, 2), (1, 3)]).is_err());
    assert_eq!(EdgeOrder::lex(&g).index_of(3, 2), Some(1));
}
