//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use contractad::algebra::{enumerate_monomials, Generator, TreeMonomial};
use contractad::graph_core::{bit, connected_graphs, members, Graph, VSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

pub fn diamond() -> Graph {
    contractad::graph_core::parse_graph("edges:1-2,1-4,2-3,2-4,3-4").unwrap()
}

pub fn random_graph(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    let n = r.gen_range(lo..=hi);
    let all = connected_graphs(n);
    all[r.gen_range(0..all.len())].clone()
}

/// Proper colorings of `g` with `t` colors, counted directly.
pub fn colorings(g: &Graph, t: usize) -> i64 {
    let n = g.n();
    let edges = g.edges();
    let mut col = vec![0usize; n];
    fn go(i: usize, n: usize, t: usize, col: &mut Vec<usize>, edges: &[(usize, usize)]) -> i64 {
        if i == n {
            return 1;
        }
        let mut c = 0;
        for x in 0..t {
            col[i] = x;
            if edges.iter().all(|&(u, v)| !(v - 1 == i && u - 1 < i && col[u - 1] == x)) {
                c += go(i + 1, n, t, col, edges);
            }
        }
        c
    }
    go(0, n, t, &mut col, &edges)
}

/// Coefficients of the chromatic polynomial, lowest degree first, by exact interpolation.
pub fn chromatic_coefficients(g: &Graph) -> Vec<BigRational> {
    let n = g.n();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<i64> = xs.iter().map(|&t| colorings(g, t as usize)).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, &xi) in xs.iter().enumerate() {
        // Lagrange basis polynomial for node i.
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b.clone();
                next[k] -= b * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * BigRational::from_integer(BigInt::from(ys[i])) / &denom;
        }
    }
    coeffs
}

pub fn is_connected(g: &Graph, s: VSet) -> bool {
    if s == 0 {
        return false;
    }
    let start = s.trailing_zeros() as usize;
    let mut seen = bit(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in members(s) {
            if seen & bit(u) == 0 && g.adjacent(u, v) {
                seen |= bit(u);
                stack.push(u);
            }
        }
    }
    seen == s
}

/// Set partitions of the vertices into connected blocks, by direct recursion.
pub fn connected_partitions(g: &Graph) -> Vec<Vec<VSet>> {
    fn go(g: &Graph, rest: VSet, cur: &mut Vec<VSet>, out: &mut Vec<Vec<VSet>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        let mut sub = others;
        loop {
            let block = sub | low;
            if is_connected(g, block) {
                cur.push(block);
                go(g, rest & !block, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go(g, g.full(), &mut Vec::new(), &mut out);
    out
}

/// Edge subsets forming a cycle (connected, every touched vertex of degree two).
pub fn circuits(edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let m = edges.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        let es: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if es.len() < 3 {
            continue;
        }
        let mut deg = std::collections::BTreeMap::new();
        for &e in &es {
            *deg.entry(edges[e].0).or_insert(0) += 1;
            *deg.entry(edges[e].1).or_insert(0) += 1;
        }
        if deg.values().any(|&d| d != 2) || deg.len() != es.len() {
            continue;
        }
        // connectedness of the edge set
        let mut reach = vec![es[0]];
        let mut k = 0;
        while k < reach.len() {
            let (a, b) = edges[reach[k]];
            for &f in &es {
                let (c, d) = edges[f];
                if !reach.contains(&f) && (a == c || a == d || b == c || b == d) {
                    reach.push(f);
                }
            }
            k += 1;
        }
        if reach.len() == es.len() {
            out.push(es);
        }
    }
    out
}

/// nbc sets by size, brute force: subsets containing no circuit minus its least edge.
pub fn nbc_counts(edges: &[(usize, usize)], n: usize) -> Vec<usize> {
    let broken: Vec<Vec<usize>> = circuits(edges).into_iter().map(|c| c[1..].to_vec()).collect();
    let m = edges.len();
    let mut counts = vec![0usize; n];
    for mask in 0u32..(1u32 << m) {
        let ok = broken.iter().all(|b| !b.iter().all(|&e| mask >> e & 1 == 1));
        if ok {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    counts
}

/// Number of spanning trees by edge-subset search.
pub fn spanning_tree_count(g: &Graph) -> usize {
    let es = g.edges();
    let n = g.n();
    (0u32..(1u32 << es.len()))
        .filter(|m| m.count_ones() as usize + 1 == n)
        .filter(|&m| {
            let sub: Vec<(usize, usize)> = (0..es.len()).filter(|i| m >> i & 1 == 1).map(|i| es[i]).collect();
            Graph::new(n, &sub).is_ok()
        })
        .count()
}

pub fn random_monomial(r: &mut ChaCha8Rng, gens: &[Generator], g: &Graph) -> Option<TreeMonomial> {
    let ms = enumerate_monomials(gens, g, g.n().saturating_sub(1)).ok()?;
    if ms.is_empty() {
        None
    } else {
        Some(ms[r.gen_range(0..ms.len())].clone())
    }
}

/// Nonempty proper tubes with at least two vertices.
pub fn proper_tubes(g: &Graph) -> Vec<VSet> {
    (1..g.full())
        .filter(|&s: &VSet| s.count_ones() >= 2 && is_connected(g, s))
        .collect()
}
