//! Built-in presentations and the rooted-spanning-tree model.

use crate::algebra::{q, sym_act, sym_comp, symmetrize_presentation, Flip, Generator, SymElement};
use crate::error::{Error, Result};
use crate::graph_core::{bit, members, Graph, VSet};
use crate::grobner::Presentation;
use crate::orders::{MonomialOrder, OrderKind};
use crate::trees::Node;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const PRESET_NAMES: [&str; 8] = ["gcCom", "gcLie", "gcAss-nu", "gcAss-mb", "gcGerst", "En", "RST", "RST-dual"];

fn p3() -> Graph {
    Graph::new(3, &[(1, 2), (2, 3)]).unwrap()
}

fn k3() -> Graph {
    Graph::new(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
}

/// `x ∘_{ab} y` on three vertices.
fn c(x: u16, a: usize, b: usize, y: u16) -> Node<u16> {
    sym_comp(x, a, b, y, 3)
}

fn act(n: Node<u16>, perm: [usize; 3]) -> Node<u16> {
    sym_act(&n, &perm)
}

fn rel(host: &Graph, terms: Vec<(i64, Node<u16>)>) -> SymElement {
    SymElement { host: host.clone(), terms: terms.into_iter().map(|(a, n)| (q(a), n)).collect() }
}

const C123: [usize; 3] = [2, 3, 1];
const C321: [usize; 3] = [3, 1, 2];
const T23: [usize; 3] = [1, 3, 2];

/// `x ∘12 x + (x ∘12 x)^(123) + (x ∘12 x)^(321)` on K3.
fn jacobi(x: u16) -> SymElement {
    rel(&k3(), vec![(1, c(x, 1, 2, x)), (1, act(c(x, 1, 2, x), C123)), (1, act(c(x, 1, 2, x), C321))])
}

fn assoc(host: &Graph, x: u16, sign: i64) -> SymElement {
    rel(host, vec![(1, c(x, 1, 2, x)), (-sign, c(x, 2, 3, x))])
}

fn build(name: &str, gens: Vec<Generator>, rels: Vec<SymElement>) -> Result<Presentation> {
    let relations = symmetrize_presentation(&rels, &gens)?;
    Presentation::new(name, gens, relations)
}

pub fn gc_com() -> Presentation {
    let gens = vec![Generator::binary("m", 0, Flip::Scalar(1))];
    build("gcCom", gens, vec![assoc(&p3(), 0, 1), assoc(&k3(), 0, 1)]).expect("gcCom")
}

pub fn gc_lie() -> Presentation {
    let gens = vec![Generator::binary("b", 0, Flip::Scalar(-1))];
    build("gcLie", gens, vec![assoc(&p3(), 0, 1), jacobi(0)]).expect("gcLie")
}

/// The single-generator presentation with `ν` and `ν^(12)` as letters 0 and 1.
pub fn gc_ass_nu() -> Presentation {
    let gens = vec![
        Generator::binary("nu", 0, Flip::Letter(1, 1)),
        Generator::binary("nuop", 0, Flip::Letter(0, 1)),
    ];
    let (n, o) = (0, 1);
    let rels = vec![
        rel(&p3(), vec![(1, c(n, 1, 2, n)), (-1, c(n, 2, 3, n))]),
        rel(&p3(), vec![(1, c(o, 1, 2, n)), (-1, c(n, 2, 3, o))]),
        rel(&p3(), vec![(1, c(n, 1, 2, o)), (-1, c(o, 2, 3, n))]),
        rel(&k3(), vec![(1, c(n, 1, 2, n)), (-1, c(n, 2, 3, n))]),
    ];
    build("gcAss-nu", gens, rels).expect("gcAss-nu")
}

/// The even/odd presentation `m = ν + ν^(12)`, `b = ν − ν^(12)`.
pub fn gc_ass_mb() -> Presentation {
    let gens = vec![Generator::binary("m", 0, Flip::Scalar(1)), Generator::binary("b", 0, Flip::Scalar(-1))];
    let (m, b) = (0, 1);
    let rels = vec![
        assoc(&p3(), m, 1),
        assoc(&p3(), b, 1),
        rel(&p3(), vec![(1, c(m, 1, 2, b)), (-1, c(b, 2, 3, m))]),
        rel(&k3(), vec![(1, c(m, 1, 2, m)), (-1, c(m, 2, 3, m)), (1, c(b, 1, 3, b))]),
        jacobi(b),
        rel(&k3(), vec![(1, c(b, 1, 2, m)), (-1, c(m, 2, 3, b)), (-1, c(m, 1, 3, b))]),
    ];
    build("gcAss-mb", gens, rels).expect("gcAss-mb")
}

fn en_like(name: &str, cname: &str, degree: i32, flip: i8, p3_sign: i64) -> Result<Presentation> {
    let gens = vec![Generator::binary("m", 0, Flip::Scalar(1)), Generator::binary(cname, degree, Flip::Scalar(flip))];
    let (m, b) = (0, 1);
    let rels = vec![
        assoc(&p3(), m, 1),
        assoc(&p3(), b, p3_sign),
        rel(&p3(), vec![(1, c(b, 1, 2, m)), (-1, c(m, 2, 3, b))]),
        assoc(&k3(), m, 1),
        jacobi(b),
        rel(&k3(), vec![(1, c(b, 1, 2, m)), (-1, c(m, 2, 3, b)), (-1, act(c(m, 1, 2, b), T23))]),
    ];
    build(name, gens, rels)
}

pub fn gc_gerst() -> Presentation {
    en_like("gcGerst", "b", 1, 1, -1).expect("gcGerst")
}

/// Homology of little `n`-disks: `c` of degree `n − 1` with `c^(12) = (−1)^n c`.
pub fn en(n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::Invalid("En needs n >= 2".into()));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    en_like(&format!("E{n}"), "c", n as i32 - 1, sign, -sign as i64)
}

pub fn rst() -> Presentation {
    let gens = vec![Generator::binary("mu", 0, Flip::Letter(1, 1)), Generator::binary("muop", 0, Flip::Letter(0, 1))];
    let (u, o) = (0, 1);
    let x = |s: i64| vec![(s, c(u, 1, 2, u)), (-s, c(u, 2, 3, u))];
    let mut k = x(1);
    k.extend(x(-1).into_iter().map(|(a, n)| (a, act(n, T23))));
    let rels = vec![
        rel(&p3(), x(1)),
        rel(&p3(), vec![(1, c(u, 1, 2, o)), (-1, c(o, 2, 3, u))]),
        rel(&p3(), vec![(1, c(o, 1, 2, u))]),
        rel(&k3(), k),
    ];
    build("RST", gens, rels).expect("RST")
}

pub fn rst_dual() -> Presentation {
    let gens = vec![Generator::binary("nu", 0, Flip::Letter(1, 1)), Generator::binary("nuop", 0, Flip::Letter(0, 1))];
    let (n, o) = (0, 1);
    let rels = vec![
        rel(&p3(), vec![(1, c(n, 1, 2, n)), (-1, c(n, 2, 3, n))]),
        rel(&p3(), vec![(1, c(n, 1, 2, o)), (-1, c(o, 2, 3, n))]),
        rel(&k3(), vec![(1, c(n, 1, 2, n)), (-1, c(n, 2, 3, n))]),
        rel(&k3(), vec![(1, c(n, 2, 3, n)), (-1, act(c(n, 2, 3, n), T23))]),
    ];
    build("RST-dual", gens, rels).expect("RST-dual")
}

/// Looks up a preset by name; `n` parametrizes `En`.
pub fn preset(name: &str, n: Option<usize>) -> Result<Presentation> {
    match name {
        "gcCom" => Ok(gc_com()),
        "gcLie" => Ok(gc_lie()),
        "gcAss-nu" => Ok(gc_ass_nu()),
        "gcAss-mb" | "gcAss" => Ok(gc_ass_mb()),
        "gcGerst" => Ok(gc_gerst()),
        "En" => en(n.unwrap_or(2)),
        "RST" => Ok(rst()),
        "RST-dual" => Ok(rst_dual()),
        _ => Err(Error::UnknownPreset(format!("{name}; known presets: {}", PRESET_NAMES.join(", ")))),
    }
}

/// The order under which a preset has a quadratic Gröbner basis.
pub fn default_order(p: &Presentation) -> MonomialOrder {
    let k = p.generators.len();
    match p.name.as_str() {
        "gcCom" => MonomialOrder::rev_graphpermlex(k),
        "gcAss-mb" | "gcGerst" => MonomialOrder::quantum(),
        s if s.starts_with('E') && p.generators.len() == 2 => MonomialOrder::quantum(),
        _ => MonomialOrder::new(OrderKind::Graphpermlex, k),
    }
}

// ---------------------------------------------------------------------------
// Rooted spanning trees.

/// A spanning tree of `host` restricted to the vertex set `vertices`, with a root.
/// Vertices and edges are one-based labels of `host`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootedSpanningTree {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    pub root: usize,
}

impl RootedSpanningTree {
    pub fn vertex_set(&self) -> VSet {
        self.vertices.iter().fold(0, |a, &v| a | bit(v - 1))
    }

    /// Whether the edges form a spanning tree of `g` restricted to the vertex set.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if !self.vertices.contains(&self.root) || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut parent: BTreeMap<usize, usize> = self.vertices.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, v: usize) -> usize {
            let r = p[&v];
            if r == v {
                v
            } else {
                let s = find(p, r);
                p.insert(v, s);
                s
            }
        }
        for &(a, b) in &self.edges {
            if !self.vertices.contains(&a) || !self.vertices.contains(&b) || !g.adjacent(a - 1, b - 1) {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent.insert(ra, rb);
        }
        true
    }
}

/// All rooted spanning trees of `g` restricted to the tube `block`.
pub fn rooted_spanning_trees_on(g: &Graph, block: VSet) -> Result<Vec<RootedSpanningTree>> {
    if !g.is_tube(block) {
        return Err(Error::NotATube(crate::graph_core::fmt_set(block)));
    }
    let vs: BTreeSet<usize> = members(block).into_iter().map(|v| v + 1).collect();
    let es: Vec<(usize, usize)> = g.edges().into_iter().filter(|(a, b)| vs.contains(a) && vs.contains(b)).collect();
    let need = vs.len() - 1;
    let mut trees = Vec::new();
    fn go(i: usize, es: &[(usize, usize)], need: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<BTreeSet<(usize, usize)>>, g: &Graph, vs: &BTreeSet<usize>) {
        if cur.len() == need {
            let t = RootedSpanningTree { vertices: vs.clone(), edges: cur.iter().copied().collect(), root: *vs.iter().next().unwrap() };
            if t.is_valid(g) {
                out.push(t.edges);
            }
            return;
        }
        if es.len() - i < need - cur.len() {
            return;
        }
        cur.push(es[i]);
        go(i + 1, es, need, cur, out, g, vs);
        cur.pop();
        go(i + 1, es, need, cur, out, g, vs);
    }
    go(0, &es, need, &mut Vec::new(), &mut trees, g, &vs);
    let mut out = Vec::new();
    for edges in trees {
        for &r in &vs {
            out.push(RootedSpanningTree { vertices: vs.clone(), edges: edges.clone(), root: r });
        }
    }
    out.sort();
    Ok(out)
}

pub fn rooted_spanning_trees(g: &Graph) -> Result<Vec<RootedSpanningTree>> {
    if g.n() > 8 {
        return Err(Error::Bound("rooted spanning trees limited to 8 vertices".into()));
    }
    rooted_spanning_trees_on(g, g.full())
}

/// Formal integer combination of rooted spanning trees.
pub type TreeSum = BTreeMap<RootedSpanningTree, i64>;

/// Grafts the root of `t2` onto every vertex of `t1` adjacent to it in `g`.
pub fn rst_star(g: &Graph, t1: &RootedSpanningTree, t2: &RootedSpanningTree) -> Result<TreeSum> {
    if t1.vertex_set() & t2.vertex_set() != 0 || !t1.is_valid(g) || !t2.is_valid(g) {
        return Err(Error::Invalid("⋆ needs rooted spanning trees on disjoint blocks".into()));
    }
    let mut out = TreeSum::new();
    for &v in &t1.vertices {
        if g.adjacent(v - 1, t2.root - 1) {
            let mut edges: BTreeSet<(usize, usize)> = t1.edges.union(&t2.edges).copied().collect();
            edges.insert((v.min(t2.root), v.max(t2.root)));
            let t = RootedSpanningTree { vertices: t1.vertices.union(&t2.vertices).copied().collect(), edges, root: t1.root };
            *out.entry(t).or_insert(0) += 1;
        }
    }
    Ok(out)
}

/// Bilinear extension of [`rst_star`].
pub fn rst_star_sum(g: &Graph, a: &TreeSum, b: &TreeSum) -> Result<TreeSum> {
    let mut out = TreeSum::new();
    for (x, cx) in a {
        for (y, cy) in b {
            for (t, c) in rst_star(g, x, y)? {
                *out.entry(t).or_insert(0) += cx * cy * c;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `(t1 ⋆ t2) ⋆ t3 − t1 ⋆ (t2 ⋆ t3)`.
pub fn rst_associator(g: &Graph, t1: &RootedSpanningTree, t2: &RootedSpanningTree, t3: &RootedSpanningTree) -> Result<TreeSum> {
    let one = |t: &RootedSpanningTree| -> TreeSum { [(t.clone(), 1)].into_iter().collect() };
    let left = rst_star_sum(g, &rst_star(g, t1, t2)?, &one(t3))?;
    let right = rst_star_sum(g, &one(t1), &rst_star(g, t2, t3)?)?;
    let mut out = left;
    for (t, c) in right {
        *out.entry(t).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}
