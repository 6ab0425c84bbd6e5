//! Γ-admissible rooted trees, canonical planar forms, substitution and the
//! stable tree / nested set dictionary.

use crate::error::{Error, Result};
use crate::graph_core::{
    bit, contract, enumerate_tubes, members, min_vertex, restrict, Graph, GraphPartition, VSet,
};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub const MAX_TREE_VERTICES: usize = 8;
pub const MAX_TREE_WEIGHT: usize = 7;

/// Rooted tree whose leaves carry zero-based host vertices. Children are kept
/// sorted by their minimal leaf.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node<D> {
    Leaf(u8),
    Vertex(D, Vec<Node<D>>),
}

impl<D: fmt::Debug> fmt::Debug for Node<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(v) => write!(f, "{}", v + 1),
            Node::Vertex(d, ch) => {
                write!(f, "{:?}(", d)?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{:?}", c)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl<D: Clone> Node<D> {
    /// Vertex with children re-sorted into canonical order.
    pub fn vertex(d: D, mut children: Vec<Node<D>>) -> Node<D> {
        children.sort_by_key(|c| c.min_leaf());
        Node::Vertex(d, children)
    }

    pub fn leaves(&self) -> VSet {
        match self {
            Node::Leaf(v) => bit(*v as usize),
            Node::Vertex(_, ch) => ch.iter().fold(0, |a, c| a | c.leaves()),
        }
    }

    pub fn min_leaf(&self) -> u8 {
        match self {
            Node::Leaf(v) => *v,
            Node::Vertex(_, ch) => ch.iter().map(|c| c.min_leaf()).min().unwrap_or(u8::MAX),
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vertex(_, ch) => 1 + ch.iter().map(|c| c.weight()).sum::<usize>(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    /// Recursively re-sorts children.
    pub fn canonical(self) -> Node<D> {
        match self {
            Node::Leaf(v) => Node::Leaf(v),
            Node::Vertex(d, ch) => Node::vertex(d, ch.into_iter().map(|c| c.canonical()).collect()),
        }
    }

    /// Renames leaves through `f` and re-sorts.
    pub fn relabel(&self, f: &dyn Fn(u8) -> u8) -> Node<D> {
        match self {
            Node::Leaf(v) => Node::Leaf(f(*v)),
            Node::Vertex(d, ch) => Node::vertex(d.clone(), ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Decorations in depth-first order (root first, children in canonical order).
    pub fn dfs(&self) -> Vec<D> {
        let mut out = Vec::new();
        fn go<D: Clone>(n: &Node<D>, out: &mut Vec<D>) {
            if let Node::Vertex(d, ch) = n {
                out.push(d.clone());
                for c in ch {
                    go(c, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    /// Leaf labels read left to right.
    pub fn leaf_sequence(&self) -> Vec<u8> {
        let mut out = Vec::new();
        fn go<D>(n: &Node<D>, out: &mut Vec<u8>) {
            match n {
                Node::Leaf(v) => out.push(*v),
                Node::Vertex(_, ch) => ch.iter().for_each(|c| go(c, out)),
            }
        }
        go(self, &mut out);
        out
    }

    /// Root-to-leaf decoration words, indexed by leaf label.
    pub fn path_words(&self, n: usize) -> Vec<Vec<D>> {
        let mut out = vec![Vec::new(); n];
        fn go<D: Clone>(nd: &Node<D>, pre: &mut Vec<D>, out: &mut Vec<Vec<D>>) {
            match nd {
                Node::Leaf(v) => out[*v as usize] = pre.clone(),
                Node::Vertex(d, ch) => {
                    pre.push(d.clone());
                    for c in ch {
                        go(c, pre, out);
                    }
                    pre.pop();
                }
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn map_dec<E: Clone>(&self, f: &mut dyn FnMut(&D) -> E) -> Node<E> {
        match self {
            Node::Leaf(v) => Node::Leaf(*v),
            Node::Vertex(d, ch) => {
                let e = f(d);
                Node::Vertex(e, ch.iter().map(|c| c.map_dec(f)).collect())
            }
        }
    }

    /// Replaces leaf `j` by `subs[j]` and re-sorts.
    pub fn graft(&self, subs: &[Node<D>]) -> Node<D> {
        match self {
            Node::Leaf(v) => subs[*v as usize].clone(),
            Node::Vertex(d, ch) => Node::vertex(d.clone(), ch.iter().map(|c| c.graft(subs)).collect()),
        }
    }
}

/// Input leaf blocks of the vertex, in canonical order.
pub fn child_blocks<D: Clone>(children: &[Node<D>]) -> Vec<VSet> {
    children.iter().map(|c| c.leaves()).collect()
}

/// Compresses `sub ⊆ within` to the positions of `within`'s members.
pub fn compress(within: VSet, sub: VSet) -> VSet {
    members(within)
        .iter()
        .enumerate()
        .filter(|(_, &v)| sub & bit(v) != 0)
        .fold(0, |a, (i, _)| a | bit(i))
}

/// `(g|_L)/{blocks}` as an ordered graph.
pub fn input_graph_of(g: &Graph, leafset: VSet, blocks: &[VSet]) -> Graph {
    let r = restrict(g, leafset);
    let bs: Vec<VSet> = blocks.iter().map(|&b| compress(leafset, b)).collect();
    let p = GraphPartition::from_sorted(bs);
    contract(&r, &p).0
}

/// Checks the admissibility condition of every subtree. Returns the first offending leaf set.
pub fn check_admissible<D: Clone>(g: &Graph, root: &Node<D>) -> std::result::Result<(), VSet> {
    fn go<D: Clone>(g: &Graph, n: &Node<D>) -> std::result::Result<(), VSet> {
        if let Node::Vertex(_, ch) = n {
            for c in ch {
                if !g.is_connected_set(c.leaves()) {
                    return Err(c.leaves());
                }
                go(g, c)?;
            }
        }
        Ok(())
    }
    if root.leaves() != g.full() {
        return Err(root.leaves());
    }
    go(g, root)
}

/// Undecorated admissible tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AdmissibleTree {
    pub host: Graph,
    pub root: Node<()>,
}

impl fmt::Display for AdmissibleTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(n: &Node<()>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match n {
                Node::Leaf(v) => write!(f, "{}", v + 1),
                Node::Vertex(_, ch) => {
                    write!(f, "(")?;
                    for (i, c) in ch.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        go(c, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        go(&self.root, f)
    }
}

/// Flat view of a tree: vertices in depth-first order.
#[derive(Clone, Debug)]
pub struct Flat<D> {
    pub dec: Vec<D>,
    pub parent: Vec<Option<usize>>,
    /// Children of each vertex: `Ok(vertex)` or `Err(leaf)`, canonical order.
    pub kids: Vec<Vec<std::result::Result<usize, u8>>>,
    pub leafset: Vec<VSet>,
}

impl<D: Clone> Flat<D> {
    pub fn new(root: &Node<D>) -> Flat<D> {
        let mut fl = Flat { dec: vec![], parent: vec![], kids: vec![], leafset: vec![] };
        fn go<D: Clone>(n: &Node<D>, par: Option<usize>, fl: &mut Flat<D>) -> std::result::Result<usize, u8> {
            match n {
                Node::Leaf(v) => Err(*v),
                Node::Vertex(d, ch) => {
                    let id = fl.dec.len();
                    fl.dec.push(d.clone());
                    fl.parent.push(par);
                    fl.kids.push(vec![]);
                    fl.leafset.push(n.leaves());
                    for c in ch {
                        let k = go(c, Some(id), fl);
                        fl.kids[id].push(k);
                    }
                    Ok(id)
                }
            }
        }
        let _ = go(root, None, &mut fl);
        fl
    }

    pub fn len(&self) -> usize {
        self.dec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dec.is_empty()
    }

    /// Child leaf blocks of vertex `v`.
    pub fn blocks(&self, v: usize) -> Vec<VSet> {
        self.kids[v]
            .iter()
            .map(|k| match *k {
                Ok(c) => self.leafset[c],
                Err(l) => bit(l as usize),
            })
            .collect()
    }

    /// Subtree rooted at vertex `v`, with substitution of selected vertices handled by the caller.
    pub fn node(&self, v: usize) -> Node<D> {
        Node::Vertex(
            self.dec[v].clone(),
            self.kids[v]
                .iter()
                .map(|k| match *k {
                    Ok(c) => self.node(c),
                    Err(l) => Node::Leaf(l),
                })
                .collect(),
        )
    }

    /// Internal edges, each named by its upper (child) vertex.
    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_some()).collect()
    }
}

/// Which trees to enumerate.
#[derive(Clone, Debug)]
pub enum TreeFilter {
    /// Every vertex has at least two inputs.
    Stable,
    /// Every vertex's input graph must be one of these ordered graphs.
    Arity(Vec<Graph>),
    /// Vertices with at least one input, total weight bounded.
    UpToWeight(usize),
}

/// Generic enumerator: at each vertex, `decos(input graph)` lists the allowed decorations.
/// `block_counts` bounds the number of children (`min..=max`).
pub fn enumerate_decorated<D, F>(
    g: &Graph,
    decos: &F,
    min_blocks: usize,
    max_blocks: usize,
    max_weight: usize,
) -> Vec<Node<D>>
where
    D: Clone + Ord,
    F: Fn(&Graph) -> Vec<D>,
{
    let mut memo: HashMap<(VSet, usize), Vec<(Node<D>, usize)>> = HashMap::new();
    let mut out: Vec<Node<D>> = rec(g, g.full(), max_weight, decos, min_blocks, max_blocks, &mut memo)
        .into_iter()
        .map(|(n, _)| n)
        .collect();
    out.sort();
    out
}

fn rec<D, F>(
    g: &Graph,
    leafset: VSet,
    budget: usize,
    decos: &F,
    min_blocks: usize,
    max_blocks: usize,
    memo: &mut HashMap<(VSet, usize), Vec<(Node<D>, usize)>>,
) -> Vec<(Node<D>, usize)>
where
    D: Clone + Ord,
    F: Fn(&Graph) -> Vec<D>,
{
    if leafset.count_ones() == 1 {
        return vec![(Node::Leaf(min_vertex(leafset) as u8), 0)];
    }
    if budget == 0 {
        return vec![];
    }
    if let Some(r) = memo.get(&(leafset, budget)) {
        return r.clone();
    }
    let mut out = Vec::new();
    for blocks in tube_partitions(g, leafset, min_blocks, max_blocks) {
        let ig = input_graph_of(g, leafset, &blocks);
        let ds = decos(&ig);
        if ds.is_empty() {
            continue;
        }
        // Children trees with total weight <= budget - 1.
        let child_lists: Vec<Vec<(Node<D>, usize)>> = blocks
            .iter()
            .map(|&b| rec(g, b, budget - 1, decos, min_blocks, max_blocks, memo))
            .collect();
        if child_lists.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut combos: Vec<(Vec<Node<D>>, usize)> = vec![(vec![], 0)];
        for list in &child_lists {
            let mut next = Vec::new();
            for (pre, w) in &combos {
                for (c, cw) in list {
                    if w + cw < budget {
                        let mut p = pre.clone();
                        p.push(c.clone());
                        next.push((p, w + cw));
                    }
                }
            }
            combos = next;
        }
        for (ch, w) in combos {
            for d in &ds {
                out.push((Node::Vertex(d.clone(), ch.clone()), w + 1));
            }
        }
    }
    memo.insert((leafset, budget), out.clone());
    out
}

/// Partitions of `leafset` into tubes with a block count in `min..=max`,
/// blocks sorted by minimum. Blocks of size one are allowed.
pub fn tube_partitions(g: &Graph, leafset: VSet, min: usize, max: usize) -> Vec<Vec<VSet>> {
    fn go(g: &Graph, rest: VSet, max: usize, cur: &mut Vec<VSet>, out: &mut Vec<Vec<VSet>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max {
            return;
        }
        let v = min_vertex(rest);
        let others = rest & !bit(v);
        let mut sub = others;
        loop {
            let blk = sub | bit(v);
            if g.is_connected_set(blk) {
                cur.push(blk);
                go(g, rest & !blk, max, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    go(g, leafset, max, &mut Vec::new(), &mut out);
    out.retain(|p| p.len() >= min);
    out
}

pub fn enumerate_admissible_trees(g: &Graph, filter: &TreeFilter) -> Result<Vec<AdmissibleTree>> {
    if g.n() > MAX_TREE_VERTICES {
        return Err(Error::Bound(format!("tree enumeration limited to {MAX_TREE_VERTICES} vertices")));
    }
    let n = g.n();
    let roots: Vec<Node<()>> = match filter {
        TreeFilter::Stable => enumerate_decorated(g, &|_: &Graph| vec![()], 2, n, n.max(1)),
        TreeFilter::Arity(hosts) => {
            let maxb = hosts.iter().map(|h| h.n()).max().unwrap_or(0);
            let minb = hosts.iter().map(|h| h.n()).min().unwrap_or(1).max(1);
            let f = |ig: &Graph| if hosts.contains(ig) { vec![()] } else { vec![] };
            enumerate_decorated(g, &f, minb, maxb, MAX_TREE_WEIGHT)
        }
        TreeFilter::UpToWeight(w) => {
            if *w > MAX_TREE_WEIGHT {
                return Err(Error::Bound(format!("weight limited to {MAX_TREE_WEIGHT}")));
            }
            enumerate_decorated(g, &|_: &Graph| vec![()], 1, n, *w)
        }
    };
    let mut out: Vec<AdmissibleTree> = roots
        .into_iter()
        .map(|root| AdmissibleTree { host: g.clone(), root })
        .collect();
    if n == 1 {
        out = vec![AdmissibleTree { host: g.clone(), root: Node::Leaf(0) }];
    }
    Ok(out)
}

/// Grafts block trees into the leaves of `outer` (hosted on `g/I`).
pub fn substitute(
    g: &Graph,
    part: &GraphPartition,
    outer: &AdmissibleTree,
    inners: &[AdmissibleTree],
) -> Result<AdmissibleTree> {
    let (gi, blocks) = contract(g, part);
    if outer.host != gi {
        return Err(Error::HostMismatch("outer tree is not hosted on the contracted graph".into()));
    }
    if inners.len() != blocks.len() {
        return Err(Error::HostMismatch("one inner tree per block is required".into()));
    }
    let mut subs = Vec::new();
    for (t, &b) in inners.iter().zip(&blocks) {
        if t.host != restrict(g, b) {
            return Err(Error::HostMismatch("inner tree is not hosted on the block".into()));
        }
        let mem = members(b);
        subs.push(t.root.relabel(&|v| mem[v as usize] as u8));
    }
    Ok(AdmissibleTree { host: g.clone(), root: outer.root.graft(&subs) })
}

/// Input graph of the vertex with depth-first index `v`.
pub fn input_graph(t: &AdmissibleTree, v: usize) -> Result<Graph> {
    let fl = Flat::new(&t.root);
    if v >= fl.len() {
        return Err(Error::Invalid(format!("tree has no vertex {v}")));
    }
    Ok(input_graph_of(&t.host, fl.leafset[v], &fl.blocks(v)))
}

/// Canonical planar data: path words per leaf and the left-to-right leaf order (one-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarForm<D> {
    pub path_sequence: Vec<Vec<D>>,
    pub leaf_permutation: Vec<usize>,
}

pub fn canonical_planar<D: Clone>(host: &Graph, root: &Node<D>) -> PlanarForm<D> {
    PlanarForm {
        path_sequence: root.path_words(host.n()),
        leaf_permutation: root.leaf_sequence().iter().map(|&v| v as usize + 1).collect(),
    }
}

/// Key of the edge order on internal edges: larger words come first.
pub fn edge_word(leafset: VSet) -> Vec<usize> {
    members(leafset)
}

/// Internal edges (named by upper vertex) sorted increasingly for the bar differential sign.
pub fn ordered_internal_edges<D: Clone>(fl: &Flat<D>) -> Vec<usize> {
    let mut es = fl.internal_edges();
    es.sort_by(|&a, &b| edge_word(fl.leafset[b]).cmp(&edge_word(fl.leafset[a])));
    es
}

/// Contracts the internal edge above vertex `e` (depth-first index). Also returns the
/// one-based position of the edge in the increasing edge order.
pub fn contract_tree_edge(t: &AdmissibleTree, e: usize) -> Result<(AdmissibleTree, usize)> {
    let fl = Flat::new(&t.root);
    if e >= fl.len() || fl.parent[e].is_none() {
        return Err(Error::Invalid("edge is not internal".into()));
    }
    let pos = ordered_internal_edges(&fl).iter().position(|&x| x == e).unwrap() + 1;
    Ok((AdmissibleTree { host: t.host.clone(), root: merge_vertex(&fl, e) }, pos))
}

/// Tree with vertex `e` merged into its parent.
pub fn merge_vertex<D: Clone>(fl: &Flat<D>, e: usize) -> Node<D> {
    fn build<D: Clone>(fl: &Flat<D>, v: usize, e: usize) -> Node<D> {
        let mut ch = Vec::new();
        for k in &fl.kids[v] {
            match *k {
                Ok(c) if c == e => {
                    for kk in &fl.kids[c] {
                        ch.push(match *kk {
                            Ok(cc) => build(fl, cc, e),
                            Err(l) => Node::Leaf(l),
                        });
                    }
                }
                Ok(c) => ch.push(build(fl, c, e)),
                Err(l) => ch.push(Node::Leaf(l)),
            }
        }
        Node::vertex(fl.dec[v].clone(), ch)
    }
    build(fl, 0, e)
}

pub fn is_stable<D: Clone>(root: &Node<D>) -> bool {
    match root {
        Node::Leaf(_) => true,
        Node::Vertex(_, ch) => ch.len() >= 2 && ch.iter().all(is_stable),
    }
}

/// Leaf sets of internal edges of a stable tree.
pub fn nested_set_of(t: &AdmissibleTree) -> Result<BTreeSet<VSet>> {
    if !is_stable(&t.root) {
        return Err(Error::Invalid("tree is not stable".into()));
    }
    let fl = Flat::new(&t.root);
    Ok(fl.internal_edges().into_iter().map(|v| fl.leafset[v]).collect())
}

/// Inverse of [`nested_set_of`].
pub fn tree_of_nested_set(g: &Graph, ns: &BTreeSet<VSet>) -> AdmissibleTree {
    fn build(s: VSet, ns: &BTreeSet<VSet>) -> Node<()> {
        if s.count_ones() == 1 {
            return Node::Leaf(min_vertex(s) as u8);
        }
        let inside: Vec<VSet> = ns.iter().copied().filter(|&t| t != s && t & !s == 0).collect();
        let maximal: Vec<VSet> = inside
            .iter()
            .copied()
            .filter(|&t| !inside.iter().any(|&u| u != t && t & !u == 0))
            .collect();
        let covered = maximal.iter().fold(0, |a, &t| a | t);
        let mut ch: Vec<Node<()>> = maximal.iter().map(|&t| build(t, ns)).collect();
        for v in members(s & !covered) {
            ch.push(Node::Leaf(v as u8));
        }
        Node::vertex((), ch)
    }
    AdmissibleTree { host: g.clone(), root: build(g.full(), ns) }
}

/// Independent enumeration of nested sets (including the empty one) for the building
/// set of tubes: families of nontrivial proper tubes, pairwise nested or disjoint.
/// Disjoint tubes may be adjacent; their join is a two-block flat, never a tube.
pub fn nested_sets(g: &Graph) -> Vec<BTreeSet<VSet>> {
    let tubes: Vec<VSet> = enumerate_tubes(g)
        .into_iter()
        .map(|t| t.0)
        .filter(|&t| t.count_ones() >= 2 && t != g.full())
        .collect();
    let compatible = |a: VSet, b: VSet| a & !b == 0 || b & !a == 0 || a & b == 0;
    let mut out = Vec::new();
    fn go(
        i: usize,
        tubes: &[VSet],
        cur: &mut Vec<VSet>,
        out: &mut Vec<BTreeSet<VSet>>,
        ok: &dyn Fn(VSet, VSet) -> bool,
    ) {
        if i == tubes.len() {
            out.push(cur.iter().copied().collect());
            return;
        }
        go(i + 1, tubes, cur, out, ok);
        if cur.iter().all(|&c| ok(c, tubes[i])) {
            cur.push(tubes[i]);
            go(i + 1, tubes, cur, out, ok);
            cur.pop();
        }
    }
    go(0, &tubes, &mut Vec::new(), &mut out, &compatible);
    out
}
