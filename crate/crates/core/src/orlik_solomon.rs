//! Orlik-Solomon algebras of graphic arrangements: nbc bases, circuit
//! straightening, Hilbert series, cocomposition and the pairing with gcGerst
//! tree monomials.
//!
//! Edges are one-based vertex pairs; sets of edges are stored as sorted indices
//! into an [`EdgeOrder`]. Every generator `ω_e` has degree 1.

use crate::algebra::{q, TreeMonomial, Q};
use crate::error::{Error, Result};
use crate::graph_core::{bit, contract, contract_tube, members, moebius, partitions, restrict, Graph, VSet};
use crate::trees::{Flat, Node};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Total order on the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeOrder {
    pub edges: Vec<(usize, usize)>,
}

impl EdgeOrder {
    /// Lexicographic on `(min endpoint, max endpoint)`.
    pub fn lex(g: &Graph) -> EdgeOrder {
        let mut edges = g.edges();
        edges.sort();
        EdgeOrder { edges }
    }

    /// An explicit ordering; must list every edge of `g` once.
    pub fn from_list(g: &Graph, list: &[(usize, usize)]) -> Result<EdgeOrder> {
        let norm: Vec<(usize, usize)> = list.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let given: BTreeSet<_> = norm.iter().copied().collect();
        let actual: BTreeSet<_> = g.edges().into_iter().collect();
        if given != actual || given.len() != norm.len() {
            return Err(Error::Invalid("edge order must list every edge of the graph exactly once".into()));
        }
        Ok(EdgeOrder { edges: norm })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = (u.min(v), u.max(v));
        self.edges.iter().position(|&x| x == e)
    }
}

/// Product `ω_{e_1} ⋯ ω_{e_k}` in the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OSMonomial {
    pub host: Graph,
    pub edges: Vec<(usize, usize)>,
}

impl OSMonomial {
    pub fn degree(&self) -> usize {
        self.edges.len()
    }
}

/// Linear combination of sorted edge-index sets.
pub type OSElement = BTreeMap<Vec<usize>, Q>;

fn add(x: &mut OSElement, k: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        x.remove(&k);
    }
}

/// Sorts an index word; returns the permutation sign, or `None` on a repeated edge.
pub fn sort_word(word: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            } else if w[j] == w[j + 1] {
                return None;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

/// Path between `u` and `v` (zero-based) in the forest spanned by edge indices `set`.
fn forest_path(o: &EdgeOrder, set: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut stack = vec![u];
    let mut seen = bit(u);
    while let Some(x) = stack.pop() {
        if x == v {
            let mut path = Vec::new();
            let mut y = v;
            while y != u {
                let (p, e) = prev[&y];
                path.push(e);
                y = p;
            }
            return Some(path);
        }
        for &e in set {
            let (a, b) = o.edges[e];
            let (a, b) = (a - 1, b - 1);
            let y = if a == x { b } else if b == x { a } else { continue };
            if seen & bit(y) == 0 {
                seen |= bit(y);
                prev.insert(y, (x, e));
                stack.push(y);
            }
        }
    }
    None
}

fn is_forest(o: &EdgeOrder, set: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..32).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in set {
        let (a, b) = o.edges[e];
        let (ra, rb) = (find(&mut parent, a - 1), find(&mut parent, b - 1));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// A broken circuit inside `set`: the circuit's minimum edge `e0` and the broken part.
/// Among all choices the one with the largest `e0` is returned.
pub fn broken_circuit_in(o: &EdgeOrder, set: &[usize]) -> Option<(usize, Vec<usize>)> {
    if !is_forest(o, set) {
        // `set` contains a circuit; any of its own broken circuits will do.
        return set.iter().find_map(|&e| {
            let rest: Vec<usize> = set.iter().copied().filter(|&x| x != e).collect();
            let (a, b) = o.edges[e];
            let mut cyc = forest_path(o, &rest, a - 1, b - 1)?;
            cyc.push(e);
            cyc.sort();
            Some((cyc[0], cyc[1..].to_vec()))
        });
    }
    (0..o.len()).rev().find_map(|e0| {
        let (a, b) = o.edges[e0];
        if set.contains(&e0) {
            return None;
        }
        let mut p = forest_path(o, set, a - 1, b - 1)?;
        if p.iter().all(|&e| e > e0) {
            p.sort();
            Some((e0, p))
        } else {
            None
        }
    })
}

pub fn is_nbc(o: &EdgeOrder, set: &[usize]) -> bool {
    broken_circuit_in(o, set).is_none()
}

/// All `k`-subsets of edges containing no broken circuit.
pub fn nbc_basis(g: &Graph, o: &EdgeOrder, k: usize) -> Vec<Vec<usize>> {
    let m = o.len();
    let mut out = Vec::new();
    if k > g.n().saturating_sub(1) {
        return out;
    }
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, o: &EdgeOrder, out: &mut Vec<Vec<usize>>) {
        if !is_nbc(o, cur) {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..m {
            cur.push(e);
            go(e + 1, m, k, cur, o, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut Vec::new(), o, &mut out);
    out
}

/// nbc sets of every degree, by degree then lexicographically.
pub fn nbc_sets(g: &Graph, o: &EdgeOrder) -> Vec<Vec<usize>> {
    (0..g.n()).flat_map(|k| nbc_basis(g, o, k)).collect()
}

/// Rewrites `ω_word` in the nbc basis by repeated circuit straightening.
pub fn os_reduce(o: &EdgeOrder, word: &[usize]) -> OSElement {
    let mut todo: OSElement = BTreeMap::new();
    if let Some((s, w)) = sort_word(word) {
        add(&mut todo, w, q(s));
    }
    os_reduce_element(o, &todo)
}

pub fn os_reduce_element(o: &EdgeOrder, x: &OSElement) -> OSElement {
    let mut todo = x.clone();
    let mut done: OSElement = BTreeMap::new();
    // Largest sets first; each rewrite replaces an edge by a smaller one.
    while let Some((set, c)) = todo.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
        todo.remove(&set);
        match broken_circuit_in(o, &set) {
            None => add(&mut done, set, c),
            Some((e0, broken)) => {
                // ω_S = ± ω_B ω_R with B the broken circuit in increasing order.
                let rest: Vec<usize> = set.iter().copied().filter(|e| !broken.contains(e)).collect();
                let mut word = broken.clone();
                word.extend(&rest);
                let (s0, _) = sort_word(&word).expect("distinct edges");
                // ω_{c_1..c_r} = Σ_{i≥1} (−1)^{i+1} ω_{C ∖ c_i}, C = (e0, c_1, .., c_r).
                let mut circ = vec![e0];
                circ.extend(&broken);
                for i in 1..circ.len() {
                    let mut w: Vec<usize> = circ.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
                    w.extend(&rest);
                    if let Some((s1, sorted)) = sort_word(&w) {
                        let sign = if i % 2 == 1 { 1 } else { -1 } * s0 * s1;
                        add(&mut todo, sorted, &c * q(sign));
                    }
                }
            }
        }
    }
    done
}

/// Product of two elements in the nbc basis.
pub fn os_multiply(o: &EdgeOrder, x: &OSElement, y: &OSElement) -> OSElement {
    let mut out: OSElement = BTreeMap::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let mut w = a.clone();
            w.extend(b);
            for (k, v) in os_reduce(o, &w) {
                add(&mut out, k, v * ca * cb);
            }
        }
    }
    out
}

/// Number of nbc sets per degree.
pub fn os_hilbert(g: &Graph) -> Vec<usize> {
    let o = EdgeOrder::lex(g);
    (0..g.n()).map(|k| nbc_basis(g, &o, k).len()).collect()
}

/// `Σ_{I∈Π_gr(g)} t^{rk I} Π_{G∈I} |μ(g|_G)|`, computed from the lattice alone.
pub fn os_hilbert_lattice(g: &Graph) -> Result<Vec<i64>> {
    let n = g.n();
    let mut coeffs = vec![0i64; n.max(1)];
    for part in partitions(g) {
        let mut prod = 1i64;
        for &b in part.blocks() {
            prod *= moebius(&restrict(g, b))?.abs();
        }
        coeffs[part.rank(n)] += prod;
    }
    Ok(coeffs)
}

/// Tensor element `OS(g/G) ⊗ OS(g|_G)` over the lexicographic edge orders of both factors.
pub type OSTensor = BTreeMap<(Vec<usize>, Vec<usize>), Q>;

/// Cocomposition at the tube `tube`: `ω_e ↦ 1⊗ω_e` for `e ⊆ G`, else `ω_{e′}⊗1`,
/// extended multiplicatively with Koszul signs and reduced to nbc ⊗ nbc.
pub fn os_cocompose(g: &Graph, o: &EdgeOrder, x: &OSElement, tube: VSet) -> Result<OSTensor> {
    if !g.is_tube(tube) {
        return Err(Error::NotATube(crate::graph_core::fmt_set(tube)));
    }
    let (gq, part) = contract_tube(g, tube);
    let (_, blocks) = contract(g, &part);
    let gr = restrict(g, tube);
    let (oq, or) = (EdgeOrder::lex(&gq), EdgeOrder::lex(&gr));
    let mem = members(tube);
    let block_of = |v: usize| blocks.iter().position(|&b| b & bit(v) != 0).unwrap();
    let mut out: OSTensor = BTreeMap::new();
    for (set, c) in x {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut sign = 1i64;
        for &e in set {
            let (a, b) = o.edges[e];
            let (a, b) = (a - 1, b - 1);
            if tube & bit(a) != 0 && tube & bit(b) != 0 {
                let ia = mem.iter().position(|&v| v == a).unwrap();
                let ib = mem.iter().position(|&v| v == b).unwrap();
                right.push(or.index_of(ia + 1, ib + 1).expect("edge of the tube"));
            } else {
                // Moving ω_{e′} left past the right factors collected so far.
                if right.len() % 2 == 1 {
                    sign = -sign;
                }
                left.push(oq.index_of(block_of(a) + 1, block_of(b) + 1).expect("image edge"));
            }
        }
        let l = os_reduce(&oq, &left);
        let r = os_reduce(&or, &right);
        for (lk, lc) in &l {
            for (rk, rc) in &r {
                let key = (lk.clone(), rk.clone());
                let v = c * lc * rc * q(sign);
                let e = out.entry(key.clone()).or_insert_with(Q::zero);
                *e += v;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
    }
    Ok(out)
}

/// Generator letters of gcGerst used by [`tree_of_nbc`].
pub const M: u16 = 0;
pub const B: u16 = 1;

/// The m-comb on `g`: `v_1` is the minimal vertex, `v_{i+1}` the minimal vertex adjacent
/// to `{v_1, …, v_i}`; leaves may be replaced by subtrees via `subs`.
fn m_comb(g: &Graph, subs: &[Node<u16>]) -> Node<u16> {
    let n = g.n();
    if n == 1 {
        return subs[0].clone();
    }
    let mut seen = bit(0);
    let mut t = subs[0].clone();
    for _ in 1..n {
        let nb = members(seen).iter().fold(0, |a, &v| a | g.nbrs(v)) & !seen;
        let v = members(nb)[0];
        seen |= bit(v);
        t = Node::vertex(M, vec![t, subs[v].clone()]);
    }
    t
}

/// The monomial `T(S)`: b-corollas joined from the largest edge down, capped by the m-comb.
pub fn tree_of_nbc(g: &Graph, o: &EdgeOrder, s: &[usize]) -> Result<TreeMonomial> {
    let mut s = s.to_vec();
    s.sort();
    if !is_nbc(o, &s) {
        return Err(Error::Invalid("edge set is not nbc".into()));
    }
    // forest[v] = component tree containing leaf v.
    let mut comp: Vec<Node<u16>> = (0..g.n()).map(|v| Node::Leaf(v as u8)).collect();
    let mut owner: Vec<usize> = (0..g.n()).collect();
    for &e in s.iter().rev() {
        let (a, b) = o.edges[e];
        let (ra, rb) = (owner[a - 1], owner[b - 1]);
        let t = Node::vertex(B, vec![comp[ra].clone(), comp[rb].clone()]);
        let keep = ra.min(rb);
        let gone = ra.max(rb);
        for w in owner.iter_mut() {
            if *w == gone {
                *w = keep;
            }
        }
        comp[keep] = t;
    }
    let roots: BTreeSet<usize> = owner.iter().copied().collect();
    let blocks: Vec<VSet> = roots.iter().map(|&r| comp[r].leaves()).collect();
    let part = crate::graph_core::GraphPartition::new(g, blocks)?;
    let (gq, bs) = contract(g, &part);
    let subs: Vec<Node<u16>> = bs.iter().map(|&b| comp[owner[members(b)[0]]].clone()).collect();
    Ok(TreeMonomial { host: g.clone(), root: m_comb(&gq, &subs) })
}

/// Whether no m-vertex sits above a b-vertex.
pub fn m_at_bottom(t: &TreeMonomial) -> bool {
    fn go(n: &Node<u16>, below_b: bool) -> bool {
        match n {
            Node::Leaf(_) => true,
            Node::Vertex(d, ch) => {
                if *d == M && below_b {
                    return false;
                }
                ch.iter().all(|c| go(c, below_b || *d == B))
            }
        }
    }
    go(&t.root, false)
}

/// `φ_{T,S}`: each edge `{v,w}` of `S` goes to the depth-first index of the lowest vertex
/// on the path between leaves `v` and `w`.
pub fn phi(t: &TreeMonomial, o: &EdgeOrder, s: &[usize]) -> Vec<usize> {
    let fl = Flat::new(&t.root);
    s.iter()
        .map(|&e| {
            let (a, b) = o.edges[e];
            let both = bit(a - 1) | bit(b - 1);
            // The deepest vertex whose leaf set contains both ends.
            (0..fl.len())
                .filter(|&v| fl.leafset[v] & both == both)
                .max_by_key(|&v| {
                    let mut d = 0;
                    let mut x = v;
                    while let Some(p) = fl.parent[x] {
                        d += 1;
                        x = p;
                    }
                    d
                })
                .expect("root contains every leaf")
        })
        .collect()
}

/// `⟨T, ω_S⟩` for `T` with its m-vertices at the bottom: `±1` when `φ_{T,S}` is a bijection
/// onto the b-vertices, else 0. The sign is that of `φ` read against depth-first order.
pub fn gerst_pairing(t: &TreeMonomial, o: &EdgeOrder, s: &[usize]) -> Result<i64> {
    if !m_at_bottom(t) {
        return Err(Error::Invalid("pairing needs the m-vertices at the bottom".into()));
    }
    let fl = Flat::new(&t.root);
    let bs: Vec<usize> = (0..fl.len()).filter(|&v| fl.dec[v] == B).collect();
    if bs.len() != s.len() {
        return Ok(0);
    }
    let mut sorted = s.to_vec();
    sorted.sort();
    let img = phi(t, o, &sorted);
    let distinct: BTreeSet<usize> = img.iter().copied().collect();
    if distinct.len() != img.len() || img.iter().any(|v| fl.dec[*v] != B) {
        return Ok(0);
    }
    let pos: Vec<usize> = img.iter().map(|v| bs.iter().position(|x| x == v).unwrap()).collect();
    Ok(sort_word(&pos).map_or(0, |(sign, _)| sign))
}

/// `(⟨T(S), ω_{S′}⟩)` over all nbc sets `S`, `S′` (rows `S`).
pub fn pairing_matrix(g: &Graph, o: &EdgeOrder) -> Result<(Vec<Vec<usize>>, Vec<Vec<i64>>)> {
    let sets = nbc_sets(g, o);
    let mut rows = Vec::with_capacity(sets.len());
    for s in &sets {
        let t = tree_of_nbc(g, o, s)?;
        rows.push(sets.iter().map(|s2| gerst_pairing(&t, o, s2)).collect::<Result<Vec<_>>>()?);
    }
    Ok((sets, rows))
}

/// Whether a square matrix is diagonal with entries `±1`.
pub fn is_signed_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| if i == j { x.abs() == 1 } else { x == 0 }))
}

/// Unit of the algebra.
pub fn one() -> OSElement {
    let mut x = BTreeMap::new();
    x.insert(Vec::new(), Q::one());
    x
}
