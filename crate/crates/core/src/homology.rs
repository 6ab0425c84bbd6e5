//! Bar complexes of degree-0 contractads with a certified monomial basis,
//! homology ranks, and Euler characteristics of Koszul complexes.

use crate::algebra::{compose, fmt_mono, Element, Q, TreeMonomial};
use crate::error::{Error, Result};
use crate::graph_core::{min_vertex, partitions, restrict, contract, Graph, VSet};
use crate::grobner::GrobnerBasis;
use crate::linalg::rank_of;
use crate::trees::{
    enumerate_admissible_trees, input_graph_of, is_stable, merge_vertex, ordered_internal_edges, Flat, Node,
    TreeFilter,
};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Sparse map `column -> coefficient`.
pub type Vector = BTreeMap<usize, Q>;

/// Cochain complex `C^0 -> C^1 -> ...` with exact rational differentials.
/// `differentials[s][i]` is the image of basis element `i` of degree `s`.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub basis: Vec<Vec<String>>,
    pub differentials: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyReport {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub euler: i64,
}

impl ChainComplex {
    pub fn new(basis: Vec<Vec<String>>, differentials: Vec<Vec<Vector>>) -> Result<ChainComplex> {
        if differentials.len() != basis.len() {
            return Err(Error::Invalid("one differential per degree is required".into()));
        }
        for (s, d) in differentials.iter().enumerate() {
            if d.len() != basis[s].len() {
                return Err(Error::Invalid(format!("differential {s} has the wrong number of columns")));
            }
            let target = basis.get(s + 1).map_or(0, |b| b.len());
            if d.iter().any(|v| v.keys().any(|&k| k >= target)) {
                return Err(Error::Invalid(format!("differential {s} leaves the next degree")));
            }
        }
        Ok(ChainComplex { basis, differentials })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.iter().all(|b| b.is_empty())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn rank_of_differential(&self, s: usize) -> usize {
        self.differentials.get(s).map_or(0, |d| rank_of(d))
    }

    /// First degree `s` with `d_{s+1} d_s != 0`.
    pub fn square_defect(&self) -> Option<usize> {
        for s in 0..self.len().saturating_sub(1) {
            let next = &self.differentials[s + 1];
            for v in &self.differentials[s] {
                let mut acc: Vector = BTreeMap::new();
                for (j, a) in v {
                    for (k, b) in &next[*j] {
                        *acc.entry(*k).or_insert_with(Q::zero) += a * b;
                    }
                }
                if acc.values().any(|x| !x.is_zero()) {
                    return Some(s);
                }
            }
        }
        None
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims().iter().enumerate().map(|(s, &d)| if s % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Ranks `dim ker d_s − rank d_{s−1}`; fails when `d² ≠ 0`.
pub fn homology_ranks(c: &ChainComplex) -> Result<Vec<usize>> {
    if let Some(s) = c.square_defect() {
        return Err(Error::NotAComplex(s));
    }
    let ranks: Vec<usize> = (0..c.len()).map(|s| c.rank_of_differential(s)).collect();
    Ok((0..c.len())
        .map(|s| c.basis[s].len() - ranks[s] - if s > 0 { ranks[s - 1] } else { 0 })
        .collect())
}

pub fn homology(c: &ChainComplex) -> Result<HomologyReport> {
    let ranks = homology_ranks(c)?;
    Ok(HomologyReport { dims: c.dims(), ranks, euler: c.euler_characteristic() })
}

/// Decorated stable tree: each vertex carries a normal monomial of its input graph.
type BarTree = Node<TreeMonomial>;

fn label(t: &BarTree, gb: &GrobnerBasis) -> String {
    match t {
        Node::Leaf(v) => (v + 1).to_string(),
        Node::Vertex(m, ch) => {
            let inner: Vec<String> = ch.iter().map(|c| label(c, gb)).collect();
            format!("[{}]({})", fmt_mono(m, &gb.generators), inner.join(","))
        }
    }
}

fn vertex_count<D>(t: &Node<D>) -> usize {
    match t {
        Node::Leaf(_) => 0,
        Node::Vertex(_, ch) => 1 + ch.iter().map(vertex_count).sum::<usize>(),
    }
}

/// All decorations of an undecorated stable tree by normal monomials.
fn decorate(g: &Graph, tree: &Node<()>, gb: &GrobnerBasis) -> Result<Vec<BarTree>> {
    match tree {
        Node::Leaf(v) => Ok(vec![Node::Leaf(*v)]),
        Node::Vertex(_, ch) => {
            let blocks: Vec<VSet> = ch.iter().map(|c| c.leaves()).collect();
            let ig = input_graph_of(g, tree.leaves(), &blocks);
            let decos = gb.normal_monomials_in(&ig, ig.n() - 1)?;
            let mut combos: Vec<Vec<BarTree>> = vec![vec![]];
            for c in ch {
                let opts = decorate(g, c, gb)?;
                combos = combos
                    .into_iter()
                    .flat_map(|pre| {
                        opts.iter().map(move |o| {
                            let mut p = pre.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            let mut out = Vec::new();
            for m in decos {
                for kids in &combos {
                    out.push(Node::Vertex(m.clone(), kids.clone()));
                }
            }
            Ok(out)
        }
    }
}

fn set_decoration(t: &BarTree, leafset: VSet, m: &TreeMonomial) -> BarTree {
    match t {
        Node::Leaf(v) => Node::Leaf(*v),
        Node::Vertex(d, ch) => {
            if t.leaves() == leafset {
                Node::Vertex(m.clone(), ch.clone())
            } else {
                Node::Vertex(d.clone(), ch.iter().map(|c| set_decoration(c, leafset, m)).collect())
            }
        }
    }
}

/// `d T = Σ_i (−1)^{i−1} T/e_i`, edges in increasing order, with the merged vertex
/// decorated by the normal form of the composite.
fn differential(g: &Graph, t: &BarTree, gb: &GrobnerBasis) -> Result<Vec<(BarTree, Q)>> {
    let fl: Flat<TreeMonomial> = Flat::new(t);
    let mut out = Vec::new();
    for (i, &e) in ordered_internal_edges(&fl).iter().enumerate() {
        let p = fl.parent[e].expect("internal edge");
        let merged = merge_vertex(&fl, e);
        let mut blocks: Vec<VSet> = fl.blocks(p).into_iter().filter(|&b| b != fl.leafset[e]).collect();
        blocks.extend(fl.blocks(e));
        blocks.sort_by_key(|&b| min_vertex(b));
        let ig = input_graph_of(g, fl.leafset[p], &blocks);
        let tube: VSet = blocks
            .iter()
            .enumerate()
            .filter(|(_, &b)| b & !fl.leafset[e] == 0)
            .fold(0, |a, (j, _)| a | (1 << j));
        let (sign, comp) = compose(&ig, tube, &fl.dec[p], &fl.dec[e], &gb.generators)?;
        let nf = gb.normal_form(&Element::monomial(comp))?;
        let s = if (i % 2 == 0) == (sign > 0) { Q::one() } else { -Q::one() };
        for (m, c) in nf.terms {
            out.push((set_decoration(&merged, fl.leafset[p], &m), &s * c));
        }
    }
    Ok(out)
}

/// Bar complex of the contractad presented by `gb` in component `g`. Degree
/// `s = n − 1 − #vertices`; degree 0 holds binary trees decorated by generators.
pub fn bar_complex(gb: &GrobnerBasis, g: &Graph) -> Result<ChainComplex> {
    if gb.generators.iter().any(|x| x.degree != 0) {
        return Err(Error::Unsupported("bar complexes are built for degree-0 generators only".into()));
    }
    if g.n() > 6 {
        return Err(Error::Bound("bar complexes are limited to 6 vertices".into()));
    }
    let n = g.n();
    let top = n.saturating_sub(1).max(1);
    let mut basis: Vec<Vec<BarTree>> = vec![Vec::new(); top];
    if n == 1 {
        return ChainComplex::new(vec![vec!["1".into()]], vec![vec![BTreeMap::new()]]);
    }
    for t in enumerate_admissible_trees(g, &TreeFilter::Stable)? {
        debug_assert!(is_stable(&t.root));
        let s = n - 1 - vertex_count(&t.root);
        basis[s].extend(decorate(g, &t.root, gb)?);
    }
    for b in basis.iter_mut() {
        b.sort();
    }
    let index: Vec<HashMap<&BarTree, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
    let mut diffs = Vec::with_capacity(top);
    for s in 0..top {
        let mut cols = Vec::with_capacity(basis[s].len());
        for t in &basis[s] {
            let mut v: Vector = BTreeMap::new();
            for (u, c) in differential(g, t, gb)? {
                let j = *index[s + 1].get(&u).ok_or_else(|| Error::Invalid("differential left the basis".into()))?;
                *v.entry(j).or_insert_with(Q::zero) += c;
            }
            v.retain(|_, c| !c.is_zero());
            cols.push(v);
        }
        diffs.push(cols);
    }
    let labels = basis.iter().map(|b| b.iter().map(|t| label(t, gb)).collect()).collect();
    ChainComplex::new(labels, diffs)
}

/// Euler characteristic of the twisted product `Q ∘ P` at `g`:
/// `Σ_{I} (−1)^{|I|−1} dim Q(g/I) Π_{G∈I} dim P(g|_G)`.
pub fn koszul_euler(
    dims_dual: &dyn Fn(&Graph) -> Option<i64>,
    dims_primal: &dyn Fn(&Graph) -> Option<i64>,
    g: &Graph,
) -> Result<i64> {
    let mut chi = 0i64;
    for part in partitions(g) {
        let (gq, blocks) = contract(g, &part);
        let q = dims_dual(&gq).ok_or_else(|| Error::Invalid(format!("no dual dimension for {gq}")))?;
        let mut term = q;
        for &b in &blocks {
            let r = restrict(g, b);
            term *= dims_primal(&r).ok_or_else(|| Error::Invalid(format!("no dimension for {r}")))?;
        }
        chi += if blocks.len() % 2 == 1 { term } else { -term };
    }
    Ok(chi)
}
