//! Connected simple graphs on `1..n`, tubes, restrictions, contractions and
//! the lattice of graph partitions.
//!
//! Vertex sets are bitmasks: bit `i` stands for vertex `i + 1`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Vertex subset as a bitmask (bit `i` is vertex `i + 1`).
pub type VSet = u32;

pub const MAX_VERTICES: usize = 16;
pub const DEFAULT_LATTICE_BOUND: usize = 8;

#[inline]
pub fn bit(v: usize) -> VSet {
    1 << v
}

#[inline]
pub fn min_vertex(s: VSet) -> usize {
    s.trailing_zeros() as usize
}

/// Zero-based members of a mask in increasing order.
pub fn members(s: VSet) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    let mut m = s;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Formats a mask with one-based labels, e.g. `{1,2,4}`.
pub fn fmt_set(s: VSet) -> String {
    let inner: Vec<String> = members(s).iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A simple graph with vertices `1..=n`. Internally zero-based adjacency masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<VSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "P1");
        }
        let es: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "edges:{}", es.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(j.n, &edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Connected graph from one-based edges; loops and disconnected input are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let g = Graph::forest(n, edges)?;
        if !g.is_connected_set(g.full()) {
            return Err(Error::Disconnected(g.to_string()));
        }
        Ok(g)
    }

    /// Possibly disconnected graph. Only used for bookkeeping of products of components.
    pub fn forest(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Bound(format!("vertex count {n} outside 1..={MAX_VERTICES}")));
        }
        let mut adj = vec![0; n];
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Invalid(format!("edge {u}-{v} outside vertex range 1..={n}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            adj[u - 1] |= bit(v - 1);
            adj[v - 1] |= bit(u - 1);
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn from_adj(adj: Vec<VSet>) -> Graph {
        Graph { n: adj.len(), adj }
    }

    pub fn point() -> Graph {
        Graph { n: 1, adj: vec![0] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> VSet {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Adjacency mask of zero-based vertex `v`.
    pub fn nbrs(&self, v: usize) -> VSet {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[VSet] {
        &self.adj
    }

    /// Zero-based adjacency test.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// One-based sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in members(self.adj[u]) {
                if u < v {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected_set(&self, s: VSet) -> bool {
        if s == 0 {
            return false;
        }
        let mut seen = bit(min_vertex(s));
        let mut frontier = seen;
        while frontier != 0 {
            let v = min_vertex(frontier);
            frontier &= !bit(v);
            let new = self.adj[v] & s & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == s
    }

    pub fn is_tube(&self, s: VSet) -> bool {
        s != 0 && s & !self.full() == 0 && self.is_connected_set(s)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n
    }

    /// Graph with vertex `v` renamed `perm[v]` (zero-based).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0; self.n];
        for u in 0..self.n {
            for v in members(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph { n: self.n, adj }
    }

    /// Lexicographically smallest relabeling; equal forms mean isomorphic graphs.
    pub fn canonical_form(&self) -> Graph {
        let mut best: Option<Graph> = None;
        for p in permutations(self.n) {
            let h = self.relabel(&p);
            if best.as_ref().map_or(true, |b| h.adj < b.adj) {
                best = Some(h);
            }
        }
        best.expect("at least one permutation")
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Graph families of the built-in vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Complete(usize),
    Cycle(usize),
    /// Star with `k` leaves; the sun is vertex 1.
    Star(usize),
    /// Join of `K_m` with `k` isolated vertices.
    CompleteJoin { m: usize, k: usize },
}

pub fn make_family(f: &Family) -> Result<Graph> {
    match *f {
        Family::Path(n) => {
            if n == 0 {
                return Err(Error::Invalid("path P_n needs n >= 1".into()));
            }
            let e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            Graph::new(n, &e)
        }
        Family::Complete(n) => {
            if n == 0 {
                return Err(Error::Invalid("complete graph K_n needs n >= 1".into()));
            }
            let mut e = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    e.push((i, j));
                }
            }
            Graph::new(n, &e)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(Error::Invalid("cycle C_n needs n >= 3".into()));
            }
            let mut e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
            e.push((1, n));
            Graph::new(n, &e)
        }
        Family::Star(k) => {
            let e: Vec<_> = (2..=k + 1).map(|i| (1, i)).collect();
            Graph::new(k + 1, &e)
        }
        Family::CompleteJoin { m, k } => {
            if m == 0 {
                return Err(Error::Invalid("K_(1^m,k) needs m >= 1".into()));
            }
            let n = m + k;
            let mut e = Vec::new();
            for i in 1..=m {
                for j in i + 1..=n {
                    e.push((i, j));
                }
            }
            Graph::new(n, &e)
        }
    }
}

/// Parses `P4`, `C5`, `K4`, `St3`, `K(1^2,2)` or `edges:1-2,2-3`.
pub fn parse_graph(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    if let Some(rest) = s.strip_prefix("edges:") {
        let base = s.len() - rest.len();
        let mut edges = Vec::new();
        let mut n = 0;
        let mut off = base;
        for tok in rest.split(',') {
            let parts: Vec<&str> = tok.split('-').collect();
            if parts.len() != 2 {
                return Err(perr(off, "expected an edge of the form u-v"));
            }
            let u: usize = parts[0].trim().parse().map_err(|_| perr(off, "bad vertex label"))?;
            let v: usize = parts[1]
                .trim()
                .parse()
                .map_err(|_| perr(off + parts[0].len() + 1, "bad vertex label"))?;
            if u == 0 || v == 0 {
                return Err(perr(off, "vertex labels start at 1"));
            }
            n = n.max(u).max(v);
            edges.push((u, v));
            off += tok.len() + 1;
        }
        return Graph::new(n, &edges);
    }
    if let Some(rest) = s.strip_prefix("K(") {
        let body = rest.strip_suffix(')').ok_or_else(|| perr(s.len(), "missing ')'"))?;
        let (a, b) = body.split_once(',').ok_or_else(|| perr(2, "expected K(1^m,k)"))?;
        let m = a
            .trim()
            .strip_prefix("1^")
            .ok_or_else(|| perr(2, "expected 1^m"))?
            .parse()
            .map_err(|_| perr(4, "bad exponent"))?;
        let k = b.trim().parse().map_err(|_| perr(3 + a.len(), "bad count"))?;
        return make_family(&Family::CompleteJoin { m, k });
    }
    let (tag, num) = if let Some(r) = s.strip_prefix("St") {
        ("St", r)
    } else if s.len() > 1 {
        s.split_at(1)
    } else {
        return Err(perr(0, "unknown graph spec"));
    };
    let k: usize = num
        .parse()
        .map_err(|_| perr(tag.len(), "expected a vertex count"))?;
    let fam = match tag {
        "P" => Family::Path(k),
        "K" => Family::Complete(k),
        "C" => Family::Cycle(k),
        "St" => Family::Star(k),
        _ => return Err(perr(0, "unknown family; use P, C, K, St, K(1^m,k) or edges:")),
    };
    make_family(&fam)
}

/// Tube, i.e. a connected vertex subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tube(pub VSet);

impl Tube {
    pub fn vertices(&self) -> Vec<usize> {
        members(self.0).into_iter().map(|v| v + 1).collect()
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Tube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_set(self.0))
    }
}

fn size_lex_key(s: VSet) -> (u32, Vec<usize>) {
    (s.count_ones(), members(s))
}

/// Tubes ordered by size, then lexicographically.
pub fn enumerate_tubes(g: &Graph) -> Vec<Tube> {
    let mut t: Vec<VSet> = (1..=g.full()).filter(|&s| g.is_connected_set(s)).collect();
    t.sort_by_key(|&s| size_lex_key(s));
    t.into_iter().map(Tube).collect()
}

/// Restriction to `s` relabeled `1..|s|` in increasing order; second value maps old to new (one-based).
pub fn induced_subgraph(g: &Graph, s: Tube) -> Result<(Graph, Vec<(usize, usize)>)> {
    if !g.is_tube(s.0) {
        return Err(Error::NotATube(fmt_set(s.0)));
    }
    let map: Vec<(usize, usize)> = members(s.0)
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v + 1, i + 1))
        .collect();
    Ok((restrict(g, s.0), map))
}

/// Restriction to a vertex mask without the tube check.
pub fn restrict(g: &Graph, s: VSet) -> Graph {
    let vs = members(s);
    let mut adj = vec![0; vs.len()];
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate() {
            if g.adjacent(u, v) {
                adj[i] |= bit(j);
            }
        }
    }
    Graph::from_adj(adj)
}

/// Partition of the vertices into tubes, blocks sorted by minimal vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphPartition {
    blocks: Vec<VSet>,
}

impl fmt::Debug for GraphPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GraphPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| members(b).iter().map(|v| (v + 1).to_string()).collect::<String>())
            .collect();
        write!(f, "{}", bs.join("|"))
    }
}

impl GraphPartition {
    /// Validates blocks against `g`.
    pub fn new(g: &Graph, mut blocks: Vec<VSet>) -> Result<GraphPartition> {
        let mut seen = 0;
        for &b in &blocks {
            if b & seen != 0 {
                return Err(Error::Invalid("partition blocks overlap".into()));
            }
            if !g.is_tube(b) {
                return Err(Error::NotATube(fmt_set(b)));
            }
            seen |= b;
        }
        if seen != g.full() {
            return Err(Error::Invalid("partition blocks do not cover the vertex set".into()));
        }
        blocks.sort_by_key(|&b| min_vertex(b));
        Ok(GraphPartition { blocks })
    }

    pub(crate) fn from_sorted(blocks: Vec<VSet>) -> GraphPartition {
        GraphPartition { blocks }
    }

    pub fn bottom(g: &Graph) -> GraphPartition {
        GraphPartition { blocks: (0..g.n()).map(bit).collect() }
    }

    pub fn top(g: &Graph) -> GraphPartition {
        GraphPartition { blocks: vec![g.full()] }
    }

    pub fn blocks(&self) -> &[VSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Rank in the lattice: `n - #blocks`.
    pub fn rank(&self, n: usize) -> usize {
        n - self.blocks.len()
    }

    /// `true` if every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &GraphPartition) -> bool {
        self.blocks
            .iter()
            .all(|&b| other.blocks.iter().any(|&c| b & !c == 0))
    }

    /// Index of the block containing zero-based vertex `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|&b| b & bit(v) != 0).expect("covering partition")
    }
}

/// Contracted graph `g/I`; blocks are vertices in order of their minima. The second
/// value lists each block's vertex mask in that order.
pub fn contract(g: &Graph, part: &GraphPartition) -> (Graph, Vec<VSet>) {
    let bs = part.blocks.clone();
    let k = bs.len();
    let mut adj = vec![0; k];
    for i in 0..k {
        let nb: VSet = members(bs[i]).iter().fold(0, |a, &v| a | g.nbrs(v));
        for j in 0..k {
            if i != j && nb & bs[j] != 0 {
                adj[i] |= bit(j);
            }
        }
    }
    (Graph::from_adj(adj), bs)
}

/// `g` with the single tube `s` contracted; the contracted vertex sits at its minimum's rank.
pub fn contract_tube(g: &Graph, s: VSet) -> (Graph, GraphPartition) {
    let mut blocks = vec![s];
    for v in 0..g.n() {
        if s & bit(v) == 0 {
            blocks.push(bit(v));
        }
    }
    blocks.sort_by_key(|&b| min_vertex(b));
    let p = GraphPartition::from_sorted(blocks);
    (contract(g, &p).0, p)
}

/// All graph partitions in a deterministic order (by number of blocks descending, then blocks).
pub fn partitions(g: &Graph) -> Vec<GraphPartition> {
    fn rec(g: &Graph, rest: VSet, cur: &mut Vec<VSet>, out: &mut Vec<GraphPartition>) {
        if rest == 0 {
            out.push(GraphPartition { blocks: cur.clone() });
            return;
        }
        let v = min_vertex(rest);
        let others = rest & !bit(v);
        let mut sub = others;
        loop {
            let blk = sub | bit(v);
            if g.is_connected_set(blk) {
                cur.push(blk);
                rec(g, rest & !blk, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    rec(g, g.full(), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.blocks.len().cmp(&a.blocks.len()).then_with(|| a.blocks.cmp(&b.blocks)));
    out
}

/// Π_gr(Γ) stored explicitly.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    pub elements: Vec<GraphPartition>,
    /// `leq[i][j]` iff element `i` refines element `j`.
    pub leq: Vec<Vec<bool>>,
    pub bottom: usize,
    pub top: usize,
}

impl PartitionLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &GraphPartition) -> Option<usize> {
        self.elements.iter().position(|q| q == p)
    }

    /// Indices of the closed interval `[a, b]`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq[a][x] && self.leq[x][b]).collect()
    }

    /// Möbius values `μ(bottom, x)` for all `x`.
    pub fn moebius_from_bottom(&self) -> Vec<i64> {
        self.moebius_from(self.bottom)
    }

    /// Möbius values `μ(a, x)`, zero outside the up-set of `a`.
    pub fn moebius_from(&self, a: usize) -> Vec<i64> {
        let mut order: Vec<usize> = (0..self.len()).filter(|&x| self.leq[a][x]).collect();
        // Elements of the up-set in a linear extension: fewer blocks later.
        order.sort_by_key(|&x| std::cmp::Reverse(self.elements[x].len()));
        let mut mu = vec![0i64; self.len()];
        for (k, &x) in order.iter().enumerate() {
            if x == a {
                mu[x] = 1;
                continue;
            }
            let s: i64 = order[..k].iter().filter(|&&y| self.leq[y][x]).map(|&y| mu[y]).sum();
            mu[x] = -s;
        }
        mu
    }
}

pub fn partition_lattice(g: &Graph) -> Result<PartitionLattice> {
    partition_lattice_bounded(g, DEFAULT_LATTICE_BOUND)
}

pub fn partition_lattice_bounded(g: &Graph, bound: usize) -> Result<PartitionLattice> {
    if g.n() > bound {
        return Err(Error::Bound(format!("partition lattice limited to {bound} vertices")));
    }
    let elements = partitions(g);
    let leq: Vec<Vec<bool>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| a.refines(b)).collect())
        .collect();
    let bottom = elements.iter().position(|p| p.len() == g.n()).unwrap();
    let top = elements.iter().position(|p| p.len() == 1).unwrap();
    Ok(PartitionLattice { elements, leq, bottom, top })
}

/// Signed Möbius value μ(0̂, 1̂) of Π_gr(g).
pub fn moebius(g: &Graph) -> Result<i64> {
    let l = partition_lattice(g)?;
    Ok(l.moebius_from_bottom()[l.top])
}

/// Vertex permutations (zero-based images) preserving edges, identity first.
pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    if g.n() > DEFAULT_LATTICE_BOUND {
        return Err(Error::Bound(format!(
            "automorphism search limited to {DEFAULT_LATTICE_BOUND} vertices"
        )));
    }
    Ok(permutations(g.n()).into_iter().filter(|p| &g.relabel(p) == g).collect())
}

/// Every labeled connected graph on `1..=n`, in order of their adjacency encoding.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let es: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if let Ok(g) = Graph::new(n, &es) {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// Every labeled connected graph with at most `n` vertices.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

/// One representative per isomorphism class, with the number of labelings of each.
pub fn isomorphism_classes(n: usize) -> Vec<(Graph, usize)> {
    let mut classes: std::collections::BTreeMap<Graph, usize> = Default::default();
    for g in connected_graphs(n) {
        *classes.entry(g.canonical_form()).or_default() += 1;
    }
    classes.into_iter().collect()
}

/// Human name for small graphs (used in reports).
pub fn family_name(g: &Graph) -> String {
    let n = g.n();
    let e = g.edge_count();
    let degs: Vec<u32> = (0..n).map(|v| g.nbrs(v).count_ones()).collect();
    let maxd = degs.iter().copied().max().unwrap_or(0) as usize;
    if n == 1 {
        return "P1".into();
    }
    if e == n * (n - 1) / 2 {
        return format!("K{n}");
    }
    if g.is_tree() && maxd <= 2 {
        return format!("P{n}");
    }
    if g.is_tree() && maxd == n - 1 {
        return format!("St{}", n - 1);
    }
    if e == n && degs.iter().all(|&d| d == 2) {
        return format!("C{n}");
    }
    if n == 4 && e == 4 {
        return "paw".into();
    }
    if n == 4 && e == 5 {
        return "K(1^2,2)".into();
    }
    g.to_string()
}
