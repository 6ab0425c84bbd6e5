//! Free shuffle contractads: decorated tree monomials, graded compositions,
//! divisibility, replacement and exact linear combinations.

use crate::error::{Error, Result};
use crate::graph_core::{
    bit, contract_tube, members, permutations, restrict, Graph, VSet,
};
use crate::trees::{enumerate_decorated, input_graph_of, Flat, Node};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// How the transposition of the two inputs acts on a binary generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flip {
    /// `x^(12) = ε x`.
    Scalar(i8),
    /// `x^(12) = ε y` for another letter `y`.
    Letter(usize, i8),
    /// Not a binary generator, or no action recorded.
    Unspecified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub host: Graph,
    pub degree: i32,
    pub flip: Flip,
}

impl Generator {
    pub fn binary(name: &str, degree: i32, flip: Flip) -> Generator {
        Generator {
            name: name.to_string(),
            host: Graph::new(2, &[(1, 2)]).unwrap(),
            degree,
            flip,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Decorated admissible tree; decorations index a generator list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeMonomial {
    pub host: Graph,
    pub root: Node<u16>,
}

impl fmt::Debug for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.root)
    }
}

impl TreeMonomial {
    pub fn weight(&self) -> usize {
        self.root.weight()
    }

    pub fn degree(&self, gens: &[Generator]) -> i32 {
        self.root.dfs().iter().map(|&x| gens[x as usize].degree).sum()
    }

    /// Number of vertices decorated by letter `x`.
    pub fn count_letter(&self, x: u16) -> usize {
        self.root.dfs().iter().filter(|&&y| y == x).count()
    }

    pub fn identity(host: &Graph) -> TreeMonomial {
        TreeMonomial { host: host.clone(), root: Node::Leaf(0) }
    }

    /// Corolla on the generator's host.
    pub fn corolla(gens: &[Generator], x: u16) -> TreeMonomial {
        let h = gens[x as usize].host.clone();
        let ch = (0..h.n()).map(|v| Node::Leaf(v as u8)).collect();
        TreeMonomial { host: h, root: Node::Vertex(x, ch) }
    }
}

/// Renders a monomial with generator names, e.g. `m(b(1,2),3)`.
pub fn fmt_mono(m: &TreeMonomial, gens: &[Generator]) -> String {
    fn go(n: &Node<u16>, gens: &[Generator], out: &mut String) {
        match n {
            Node::Leaf(v) => out.push_str(&(v + 1).to_string()),
            Node::Vertex(d, ch) => {
                out.push_str(&gens[*d as usize].name);
                out.push('(');
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    go(c, gens, out);
                }
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    go(&m.root, gens, &mut s);
    s
}

/// Exact linear combination of monomials of one component.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Element {
    pub terms: BTreeMap<TreeMonomial, Q>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{}*{:?}", fmt_q(c), m)).collect();
        write!(f, "{}", if ts.is_empty() { "0".into() } else { ts.join(" + ") })
    }
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn monomial(m: TreeMonomial) -> Element {
        let mut e = Element::zero();
        e.add_term(m, Q::one());
        e
    }

    pub fn from_terms(terms: Vec<(TreeMonomial, Q)>) -> Element {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: TreeMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Q) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn host(&self) -> Option<&Graph> {
        self.terms.keys().next().map(|m| &m.host)
    }

    pub fn weight(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.weight())
    }

    pub fn coefficient(&self, m: &TreeMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Homogeneity check: one host, one weight, one degree.
    pub fn is_homogeneous(&self, gens: &[Generator]) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return true };
        let (h, w, d) = (&first.host, first.weight(), first.degree(gens));
        it.all(|m| &m.host == h && m.weight() == w && m.degree(gens) == d)
    }

    /// Scales so that the coefficient of the structurally largest monomial is one.
    pub fn normalized(&self) -> Element {
        match self.terms.iter().next_back() {
            None => Element::zero(),
            Some((_, c)) => self.scaled(&(Q::one() / c)),
        }
    }

    pub fn to_json(&self, gens: &[Generator]) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "tree": fmt_mono(m, gens),
                        "decorations": m.root.dfs().iter().map(|&x| gens[x as usize].name.clone()).collect::<Vec<_>>(),
                        "coefficient": format!("{}/{}", c.numer(), c.denom()),
                    })
                })
                .collect(),
        )
    }

    pub fn fmt_with(&self, gens: &[Generator]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&fmt_q(&a));
                s.push('*');
            }
            s.push_str(&fmt_mono(m, gens));
        }
        s
    }
}

/// Tag layout for sign bookkeeping: group in the high bits, position in the low bits.
type Tagged = Node<(u16, u32)>;

fn tag_node(n: &Node<u16>, group: u32) -> Tagged {
    let mut i = 0u32;
    n.map_dec(&mut |&d| {
        let t = (group << 20) | i;
        i += 1;
        (d, t)
    })
}

/// Tags vertices by their depth-first index in `fl`, in the given group.
fn tag_flat(fl: &Flat<u16>, v: usize, group: &dyn Fn(usize) -> u32) -> Tagged {
    Node::Vertex(
        (fl.dec[v], (group(v) << 20) | v as u32),
        fl.kids[v]
            .iter()
            .map(|k| match *k {
                Ok(c) => tag_flat(fl, c, group),
                Err(l) => Node::Leaf(l),
            })
            .collect(),
    )
}

/// Strips tags after canonicalization. The sign is that of the permutation taking
/// tag order to depth-first order, restricted to odd decorations.
fn strip(n: Tagged, gens: &[Generator]) -> (i32, Node<u16>) {
    let n = n.canonical();
    let tags: Vec<u32> = n
        .dfs()
        .into_iter()
        .filter(|(d, _)| gens[*d as usize].is_odd())
        .map(|(_, t)| t)
        .collect();
    let mut inv = 0usize;
    for i in 0..tags.len() {
        for j in i + 1..tags.len() {
            if tags[i] > tags[j] {
                inv += 1;
            }
        }
    }
    let sign = if inv % 2 == 0 { 1 } else { -1 };
    (sign, n.map_dec(&mut |&(d, _)| d))
}

/// Graded infinitesimal composition `outer ∘_G inner` in component `g`.
pub fn compose(
    g: &Graph,
    tube: VSet,
    outer: &TreeMonomial,
    inner: &TreeMonomial,
    gens: &[Generator],
) -> Result<(i32, TreeMonomial)> {
    if !g.is_tube(tube) {
        return Err(Error::NotATube(crate::graph_core::fmt_set(tube)));
    }
    let (gq, part) = contract_tube(g, tube);
    if outer.host != gq {
        return Err(Error::HostMismatch(format!("outer host {} is not {}", outer.host, gq)));
    }
    let gr = restrict(g, tube);
    if inner.host != gr {
        return Err(Error::HostMismatch(format!("inner host {} is not {}", inner.host, gr)));
    }
    let mem = members(tube);
    let inner_t = tag_node(&inner.root, 1).relabel(&|v| mem[v as usize] as u8);
    let subs: Vec<Tagged> = part
        .blocks()
        .iter()
        .map(|&b| {
            if b == tube {
                inner_t.clone()
            } else {
                Node::Leaf(crate::graph_core::min_vertex(b) as u8)
            }
        })
        .collect();
    let res = tag_node(&outer.root, 0).graft(&subs);
    let (s, root) = strip(res, gens);
    Ok((s, TreeMonomial { host: g.clone(), root }))
}

/// All monomials of weight `w` in component `g`.
pub fn enumerate_monomials(gens: &[Generator], g: &Graph, w: usize) -> Result<Vec<TreeMonomial>> {
    if g.n() > crate::trees::MAX_TREE_VERTICES || w > crate::trees::MAX_TREE_WEIGHT {
        return Err(Error::Bound("monomial enumeration limited to 8 vertices and weight 7".into()));
    }
    if g.n() == 1 {
        return Ok(if w == 0 { vec![TreeMonomial::identity(g)] } else { vec![] });
    }
    let minb = gens.iter().map(|x| x.host.n()).min().unwrap_or(2).max(2);
    let maxb = gens.iter().map(|x| x.host.n()).max().unwrap_or(2);
    let decos = |ig: &Graph| -> Vec<u16> {
        gens.iter()
            .enumerate()
            .filter(|(_, x)| &x.host == ig)
            .map(|(i, _)| i as u16)
            .collect()
    };
    Ok(enumerate_decorated(g, &decos, minb, maxb, w)
        .into_iter()
        .filter(|n| n.weight() == w)
        .map(|root| TreeMonomial { host: g.clone(), root })
        .collect())
}

/// A decorated subtree: a connected set of vertices (depth-first indices) of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub vertices: Vec<usize>,
}

/// Connected vertex sets of size `k` (top vertex first is not guaranteed; sorted).
pub fn connected_vertex_sets<D: Clone>(fl: &Flat<D>, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    fn grow<D: Clone>(fl: &Flat<D>, cur: &mut Vec<usize>, frontier: Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let mut c = cur.clone();
            c.sort();
            out.push(c);
            return;
        }
        // Choose the next vertex among the frontier; forbid earlier frontier entries afterwards.
        for (i, &v) in frontier.iter().enumerate() {
            cur.push(v);
            let mut nf: Vec<usize> = frontier[i + 1..].to_vec();
            for kk in &fl.kids[v] {
                if let Ok(c) = *kk {
                    nf.push(c);
                }
            }
            grow(fl, cur, nf, k, out);
            cur.pop();
        }
    }
    for top in 0..fl.len() {
        let fr: Vec<usize> = fl.kids[top].iter().filter_map(|k| k.ok()).collect();
        grow(fl, &mut vec![top], fr, k, &mut out);
    }
    out
}

/// The pattern of a connected vertex set: the decorated subtree on its own ordered host.
pub fn pattern_at(m: &TreeMonomial, fl: &Flat<u16>, set: &[usize]) -> TreeMonomial {
    let inset = |v: usize| set.binary_search(&v).is_ok();
    let top = *set.iter().find(|&&v| fl.parent[v].map_or(true, |p| !inset(p))).unwrap();
    let blocks = input_blocks(fl, set, top);
    let bidx = |s: VSet| blocks.iter().position(|&b| b == s).unwrap() as u8;
    fn build(fl: &Flat<u16>, v: usize, inset: &dyn Fn(usize) -> bool, bidx: &dyn Fn(VSet) -> u8) -> Node<u16> {
        let ch = fl.kids[v]
            .iter()
            .map(|k| match *k {
                Ok(c) if inset(c) => build(fl, c, inset, bidx),
                Ok(c) => Node::Leaf(bidx(fl.leafset[c])),
                Err(l) => Node::Leaf(bidx(bit(l as usize))),
            })
            .collect();
        Node::vertex(fl.dec[v], ch)
    }
    let root = build(fl, top, &inset, &bidx);
    let host = input_graph_of(&m.host, fl.leafset[top], &blocks);
    TreeMonomial { host, root }
}

/// Leaf sets of the inputs of a connected vertex set, sorted by minimum.
fn input_blocks(fl: &Flat<u16>, set: &[usize], _top: usize) -> Vec<VSet> {
    let inset = |v: usize| set.binary_search(&v).is_ok();
    let mut blocks = Vec::new();
    for &v in set {
        for k in &fl.kids[v] {
            match *k {
                Ok(c) if inset(c) => {}
                Ok(c) => blocks.push(fl.leafset[c]),
                Err(l) => blocks.push(bit(l as usize)),
            }
        }
    }
    blocks.sort_by_key(|&b| crate::graph_core::min_vertex(b));
    blocks
}

/// Every embedding of `pattern` as a decorated subtree of `t`.
pub fn occurrences(t: &TreeMonomial, pattern: &TreeMonomial) -> Vec<Occurrence> {
    let w = pattern.weight();
    if w == 0 {
        return vec![];
    }
    let fl = Flat::new(&t.root);
    connected_vertex_sets(&fl, w)
        .into_iter()
        .filter(|s| &pattern_at(t, &fl, s) == pattern)
        .map(|vertices| Occurrence { vertices })
        .collect()
}

/// Substitutes the decorated subtree at `occ` by a monomial `s` on the same host.
/// Returns the Koszul sign relative to the context convention and the new monomial.
/// The sign is normalized against the original subtree, so replacing a subtree by
/// itself gives `+1`.
fn graft_at(fl: &Flat<u16>, set: &[usize], s: &Node<u16>, gens: &[Generator]) -> (i32, Node<u16>) {
    let inset = |v: usize| set.binary_search(&v).is_ok();
    let top = *set.iter().find(|&&v| fl.parent[v].map_or(true, |p| !inset(p))).unwrap();
    let blocks = input_blocks(fl, set, top);
    // Input subtrees in block order; vertices of input j get group 2 + j.
    let mut inputs: Vec<Tagged> = Vec::new();
    for (j, &b) in blocks.iter().enumerate() {
        let mut found: Option<Tagged> = None;
        for &v in set {
            for k in &fl.kids[v] {
                match *k {
                    Ok(c) if !inset(c) && fl.leafset[c] == b => {
                        found = Some(tag_flat(fl, c, &|_| 2 + j as u32));
                    }
                    Err(l) if bit(l as usize) == b => found = Some(Node::Leaf(l)),
                    _ => {}
                }
            }
        }
        inputs.push(found.expect("input block"));
    }
    let s_tagged = tag_node(s, 1).graft(&inputs);
    fn build(fl: &Flat<u16>, v: usize, top: usize, repl: &Tagged) -> Tagged {
        if v == top {
            return repl.clone();
        }
        Node::Vertex(
            (fl.dec[v], v as u32),
            fl.kids[v]
                .iter()
                .map(|k| match *k {
                    Ok(c) => build(fl, c, top, repl),
                    Err(l) => Node::Leaf(l),
                })
                .collect(),
        )
    }
    strip(build(fl, 0, top, &s_tagged), gens)
}

/// Linear replacement of the subtree at `occ` by `replacement`, with Koszul signs.
pub fn replace(t: &TreeMonomial, occ: &Occurrence, replacement: &Element, gens: &[Generator]) -> Result<Element> {
    let fl = Flat::new(&t.root);
    replace_flat(t, &fl, &occ.vertices, replacement, gens)
}

pub(crate) fn replace_flat(
    t: &TreeMonomial,
    fl: &Flat<u16>,
    set: &[usize],
    replacement: &Element,
    gens: &[Generator],
) -> Result<Element> {
    let pat = pattern_at(t, fl, set);
    if !replacement.is_homogeneous(gens) {
        return Err(Error::Invalid("replacement is not homogeneous".into()));
    }
    let mut out = Element::zero();
    if replacement.is_zero() {
        return Ok(out);
    }
    let pdeg = pat.degree(gens);
    let (k0, _) = graft_at(fl, set, &pat.root, gens);
    for (s, c) in &replacement.terms {
        if s.host != pat.host || s.weight() != pat.weight() || s.degree(gens) != pdeg {
            return Err(Error::Invalid("replacement does not match the subtree's host, weight and degree".into()));
        }
        let (k1, root) = graft_at(fl, set, &s.root, gens);
        out.add_term(TreeMonomial { host: t.host.clone(), root }, c * q((k0 * k1) as i64));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Symmetric relations and their shuffle translation.

/// Element of the symmetric free contractad: trees whose children are listed in
/// input-slot order (not necessarily canonical).
#[derive(Clone, Debug)]
pub struct SymElement {
    pub host: Graph,
    pub terms: Vec<(Q, Node<u16>)>,
}

/// `x ∘_G y` on a three-vertex host, `G = {a,b}` one-based, with induced identifications.
pub fn sym_comp(x: u16, a: usize, b: usize, y: u16, host_n: usize) -> Node<u16> {
    let (a, b) = (a.min(b), a.max(b));
    let o = (1..=host_n).find(|&v| v != a && v != b).unwrap();
    let inner = Node::Vertex(y, vec![Node::Leaf((a - 1) as u8), Node::Leaf((b - 1) as u8)]);
    let leaf = Node::Leaf((o - 1) as u8);
    let ch = if a < o { vec![inner, leaf] } else { vec![leaf, inner] };
    Node::Vertex(x, ch)
}

/// Right action of a permutation given as one-based images `perm[i-1] = σ(i)`.
pub fn sym_act(n: &Node<u16>, perm: &[usize]) -> Node<u16> {
    match n {
        Node::Leaf(v) => Node::Leaf((perm[*v as usize] - 1) as u8),
        Node::Vertex(d, ch) => Node::Vertex(*d, ch.iter().map(|c| sym_act(c, perm)).collect()),
    }
}

fn parity_of(n: &Node<u16>, gens: &[Generator]) -> usize {
    n.dfs().iter().filter(|&&x| gens[x as usize].is_odd()).count() % 2
}

/// Puts a slot-ordered tree into canonical shuffle form, applying generator flips
/// and Koszul signs for reordered odd subtrees.
pub fn canonicalize_sym(n: &Node<u16>, gens: &[Generator]) -> Result<(i32, Node<u16>)> {
    match n {
        Node::Leaf(v) => Ok((1, Node::Leaf(*v))),
        Node::Vertex(x, ch) => {
            let mut sign = 1;
            let mut kids = Vec::new();
            for c in ch {
                let (s, k) = canonicalize_sym(c, gens)?;
                sign *= s;
                kids.push(k);
            }
            let mut letter = *x;
            let sorted = kids.windows(2).all(|w| w[0].min_leaf() < w[1].min_leaf());
            if !sorted {
                if kids.len() != 2 {
                    return Err(Error::Unsupported("reordering inputs of a non-binary generator".into()));
                }
                match gens[*x as usize].flip {
                    Flip::Scalar(e) => sign *= e as i32,
                    Flip::Letter(j, e) => {
                        letter = j as u16;
                        sign *= e as i32;
                    }
                    Flip::Unspecified => {
                        return Err(Error::Unsupported(format!(
                            "generator {} has no recorded input symmetry",
                            gens[*x as usize].name
                        )))
                    }
                }
                if parity_of(&kids[0], gens) * parity_of(&kids[1], gens) == 1 {
                    sign = -sign;
                }
                kids.swap(0, 1);
            }
            Ok((sign, Node::Vertex(letter, kids)))
        }
    }
}

/// Shuffle element of a symmetric element (same labeled host).
pub fn sym_to_shuffle(e: &SymElement, gens: &[Generator]) -> Result<Element> {
    let mut out = Element::zero();
    for (c, n) in &e.terms {
        let (s, root) = canonicalize_sym(n, gens)?;
        crate::trees::check_admissible(&e.host, &root)
            .map_err(|l| Error::NotATube(crate::graph_core::fmt_set(l)))?;
        out.add_term(TreeMonomial { host: e.host.clone(), root }, c * q(s as i64));
    }
    Ok(out)
}

/// Translates symmetric relations to every labeling of their hosts, grouped by
/// ordered graph and deduplicated up to scalars.
pub fn symmetrize_presentation(
    rels: &[SymElement],
    gens: &[Generator],
) -> Result<BTreeMap<Graph, Vec<Element>>> {
    let mut out: BTreeMap<Graph, Vec<Element>> = BTreeMap::new();
    for r in rels {
        if r.host.n() > 5 {
            return Err(Error::Bound("relation hosts limited to 5 vertices".into()));
        }
        for p in permutations(r.host.n()) {
            let perm1: Vec<usize> = p.iter().map(|&v| v + 1).collect();
            let host = r.host.relabel(&p);
            let moved = SymElement {
                host: host.clone(),
                terms: r.terms.iter().map(|(c, n)| (c.clone(), sym_act(n, &perm1))).collect(),
            };
            let e = sym_to_shuffle(&moved, gens)?.normalized();
            if e.is_zero() {
                continue;
            }
            let list = out.entry(host).or_default();
            if !list.contains(&e) {
                list.push(e);
            }
        }
    }
    for list in out.values_mut() {
        list.sort_by(|a, b| a.terms.iter().cmp(b.terms.iter()));
    }
    Ok(out)
}
