//! Gröbner bases for shuffle contractads by per-component linear algebra.
//!
//! The ideal generated by the relations is spanned, in component `(g, w)`, by all
//! replacements of a relation into a context of a weight-`w` tree monomial on `g`.
//! These rows are eliminated exactly with columns ordered by the monomial order, so
//! pivots are the leading terms of the ideal in that component. Completion up to a
//! region of graphs and weights keeps the pivots that are not divisible by a leading
//! term of a smaller component.

use crate::algebra::{
    connected_vertex_sets, enumerate_monomials, pattern_at, q, replace, replace_flat, Element, Flip,
    Generator, Occurrence, TreeMonomial, Q,
};
use crate::error::{Error, Result};
use crate::graph_core::{connected_graphs, contract, family_name, partitions, restrict, Graph};
use crate::linalg::{integer_row, nullspace, Echelon};
use crate::orders::MonomialOrder;
use crate::par;
use crate::trees::{Flat, Node};
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// Components with more monomials than this are reported incomplete.
pub const MAX_COMPONENT_MONOMIALS: usize = 250_000;

/// Generators and relations, grouped by the ordered graph each relation lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<Generator>,
    pub relations: BTreeMap<Graph, Vec<Element>>,
}

impl Presentation {
    pub fn new(name: &str, generators: Vec<Generator>, relations: BTreeMap<Graph, Vec<Element>>) -> Result<Presentation> {
        for (g, rs) in &relations {
            for r in rs {
                if r.host().is_some_and(|h| h != g) {
                    return Err(Error::HostMismatch(format!("relation filed under {g}")));
                }
                if !r.is_homogeneous(&generators) {
                    return Err(Error::Invalid(format!("relation on {g} is not homogeneous")));
                }
            }
        }
        Ok(Presentation { name: name.to_string(), generators, relations })
    }

    pub fn is_binary(&self) -> bool {
        self.generators.iter().all(|x| x.host.n() == 2)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.values().flatten().all(|r| r.weight().map_or(true, |w| w == 2))
    }

    pub fn letter(&self, name: &str) -> Option<u16> {
        self.generators.iter().position(|x| x.name == name).map(|i| i as u16)
    }

    /// Relation weights that occur.
    pub fn relation_weights(&self) -> BTreeSet<usize> {
        self.relations.values().flatten().filter_map(|r| r.weight()).collect()
    }

    fn require_binary_quadratic(&self) -> Result<()> {
        if !self.is_binary() || !self.is_quadratic() {
            return Err(Error::Unsupported(format!("{} is not a binary quadratic presentation", self.name)));
        }
        Ok(())
    }
}

/// A component of the free contractad together with the echelon form of the ideal.
#[derive(Debug)]
pub struct Component {
    pub graph: Graph,
    pub weight: usize,
    /// Monomials in increasing order.
    pub monomials: Vec<TreeMonomial>,
    index: HashMap<TreeMonomial, usize>,
    pub echelon: Echelon,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.monomials.len() - self.echelon.rank()
    }

    pub fn index_of(&self, m: &TreeMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_leading(&self, m: &TreeMonomial) -> bool {
        self.index_of(m).is_some_and(|i| self.echelon.is_pivot(i))
    }

    pub fn leading_terms(&self) -> Vec<&TreeMonomial> {
        self.echelon.pivots().map(|c| &self.monomials[c]).collect()
    }

    pub fn normal_monomials(&self) -> Vec<&TreeMonomial> {
        (0..self.monomials.len()).filter(|c| !self.echelon.is_pivot(*c)).map(|c| &self.monomials[c]).collect()
    }

    pub fn vector(&self, e: &Element) -> Result<BTreeMap<usize, Q>> {
        e.terms
            .iter()
            .map(|(m, c)| {
                self.index_of(m)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::HostMismatch("term outside the component".into()))
            })
            .collect()
    }

    pub fn element(&self, v: &BTreeMap<usize, Q>) -> Element {
        Element::from_terms(v.iter().map(|(&i, c)| (self.monomials[i].clone(), c.clone())).collect())
    }

    /// Reduced monic ideal element with leading term at column `c`.
    pub fn reduced_element(&self, c: usize) -> Element {
        self.element(&self.echelon.reduced_row(c))
    }

    /// Remainder of `e` modulo the ideal, expressed in normal monomials.
    pub fn reduce(&self, e: &Element) -> Result<Element> {
        Ok(self.element(&self.echelon.reduce(&self.vector(e)?)))
    }
}

type GroupKey = (Graph, usize, i32);

/// Cached component computations for one presentation and order.
pub struct Engine {
    pub presentation: Presentation,
    pub order: MonomialOrder,
    groups: HashMap<GroupKey, (TreeMonomial, Vec<Element>)>,
    cache: Mutex<HashMap<(Graph, usize), Arc<Component>>>,
}

impl Engine {
    pub fn new(p: &Presentation, order: &MonomialOrder) -> Result<Engine> {
        let gens = &p.generators;
        let mut groups: HashMap<GroupKey, (TreeMonomial, Vec<Element>)> = HashMap::new();
        for (h, rs) in &p.relations {
            for r in rs {
                let (Some(w), Some(m)) = (r.weight(), r.terms.keys().next()) else { continue };
                let d = m.degree(gens);
                let key = (h.clone(), w, d);
                if !groups.contains_key(&key) {
                    let rep = enumerate_monomials(gens, h, w)?
                        .into_iter()
                        .filter(|t| t.degree(gens) == d)
                        .min()
                        .expect("relation monomials exist");
                    groups.insert(key.clone(), (rep, vec![]));
                }
                groups.get_mut(&key).unwrap().1.push(r.clone());
            }
        }
        Ok(Engine { presentation: p.clone(), order: order.clone(), groups, cache: Mutex::new(HashMap::new()) })
    }

    pub fn gens(&self) -> &[Generator] {
        &self.presentation.generators
    }

    /// Ideal-span rows of one monomial: one per (context, relation) whose pattern is the
    /// representative of its relation group.
    fn rows_of(&self, t: &TreeMonomial, weights: &BTreeSet<usize>) -> Result<Vec<Element>> {
        let gens = self.gens();
        let fl = Flat::new(&t.root);
        let mut out = Vec::new();
        for &k in weights {
            if k > fl.len() {
                continue;
            }
            for set in connected_vertex_sets(&fl, k) {
                let pat = pattern_at(t, &fl, &set);
                let key = (pat.host.clone(), k, pat.degree(gens));
                if let Some((rep, rels)) = self.groups.get(&key) {
                    if *rep == pat {
                        for r in rels {
                            out.push(replace_flat(t, &fl, &set, r, gens)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn build(&self, g: &Graph, w: usize) -> Result<Component> {
        let mut monomials = enumerate_monomials(self.gens(), g, w)?;
        if monomials.len() > MAX_COMPONENT_MONOMIALS {
            return Err(Error::Bound(format!("{} monomials in component {g}", monomials.len())));
        }
        monomials.sort_by(|a, b| self.order.compare(a, b));
        let index: HashMap<TreeMonomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let weights = self.presentation.relation_weights();
        let mut echelon = Echelon::new();
        for t in &monomials {
            for r in self.rows_of(t, &weights)? {
                let v: BTreeMap<usize, Q> = r.terms.iter().map(|(m, c)| (index[m], c.clone())).collect();
                echelon.insert(integer_row(&v));
            }
        }
        Ok(Component { graph: g.clone(), weight: w, monomials, index, echelon })
    }

    pub fn component(&self, g: &Graph, w: usize) -> Result<Arc<Component>> {
        let key = (g.clone(), w);
        if let Some(c) = self.cache.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.build(g, w)?);
        self.cache.lock().unwrap().entry(key).or_insert(c.clone());
        Ok(c)
    }

    /// Whether some proper decorated subtree of `t` is a leading term of its component.
    pub fn has_proper_leading_divisor(&self, t: &TreeMonomial) -> Result<bool> {
        let w = t.weight();
        let fl = Flat::new(&t.root);
        let minw = self.presentation.relation_weights().into_iter().next().unwrap_or(usize::MAX);
        for k in minw..w {
            for set in connected_vertex_sets(&fl, k) {
                let pat = pattern_at(t, &fl, &set);
                if self.component(&pat.host, k)?.is_leading(&pat) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Dimension of the presented contractad in component `(g, w)`.
pub fn presented_dimension(p: &Presentation, g: &Graph, w: usize) -> Result<usize> {
    let e = Engine::new(p, &MonomialOrder::graphpermlex(p.generators.len()))?;
    Ok(e.component(g, w)?.dim())
}

/// Dimension of the weight-3 component of a binary quadratic presentation on a 4-vertex graph.
pub fn weight3_dimension(p: &Presentation, g: &Graph) -> Result<usize> {
    p.require_binary_quadratic()?;
    if g.n() != 4 {
        return Err(Error::Invalid(format!("{g} does not have 4 vertices")));
    }
    presented_dimension(p, g, 3)
}

// ---------------------------------------------------------------------------

/// Where a Gröbner basis is known to be complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Completion was run on these (graph, weight) components; `incomplete` lists
    /// components skipped because of resource bounds.
    Region {
        max_vertices: usize,
        max_weight: usize,
        complete: BTreeSet<(String, usize)>,
        incomplete: Vec<(String, usize)>,
    },
    /// The weight-3 criterion passed: the quadratic elements are a basis in every component.
    Quadratic { checked_graphs: usize },
}

#[derive(Clone, Debug)]
pub struct GrobnerBasis {
    pub order: MonomialOrder,
    pub generators: Vec<Generator>,
    pub elements: BTreeMap<Graph, Vec<Element>>,
    pub certificate: Certificate,
    leading: HashMap<TreeMonomial, Element>,
    weights: BTreeSet<usize>,
}

impl GrobnerBasis {
    fn assemble(order: &MonomialOrder, gens: &[Generator], elements: BTreeMap<Graph, Vec<Element>>, certificate: Certificate) -> GrobnerBasis {
        let mut leading = HashMap::new();
        let mut weights = BTreeSet::new();
        for e in elements.values().flatten() {
            let lt = order.leading(e).expect("nonzero element").clone();
            weights.insert(lt.weight());
            leading.insert(lt, e.clone());
        }
        GrobnerBasis { order: order.clone(), generators: gens.to_vec(), elements, certificate, leading, weights }
    }

    pub fn len(&self) -> usize {
        self.leading.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leading.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<&TreeMonomial> {
        let mut v: Vec<&TreeMonomial> = self.leading.keys().collect();
        v.sort();
        v
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Whether the certificate covers component `(g, w)`.
    pub fn covers(&self, g: &Graph, w: usize) -> bool {
        match &self.certificate {
            Certificate::Quadratic { .. } => true,
            Certificate::Region { complete, .. } => {
                g.n() == 1 || complete.contains(&(g.to_string(), w))
            }
        }
    }

    fn require(&self, g: &Graph, w: usize) -> Result<()> {
        if self.covers(g, w) {
            Ok(())
        } else {
            Err(Error::Uncertified(format!("component {g} in weight {w} lies outside the completed region")))
        }
    }

    /// A leading term dividing `t`, with its occurrence.
    pub fn divisor(&self, t: &TreeMonomial) -> Option<(Occurrence, &Element)> {
        let fl = Flat::new(&t.root);
        for &k in &self.weights {
            if k > fl.len() {
                break;
            }
            for set in connected_vertex_sets(&fl, k) {
                let pat = pattern_at(t, &fl, &set);
                if let Some(e) = self.leading.get(&pat) {
                    return Some((Occurrence { vertices: set }, e));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, t: &TreeMonomial) -> bool {
        self.divisor(t).is_none()
    }

    /// Unique representative of `x` modulo the ideal with no term divisible by a leading term.
    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        let (Some(g), Some(w)) = (x.host(), x.weight()) else { return Ok(x.clone()) };
        self.require(g, w)?;
        let mut x = x.clone();
        let mut done = Element::zero();
        while let Some(t) = x.terms.keys().max_by(|a, b| self.order.compare(a, b)).cloned() {
            let c = x.terms.remove(&t).unwrap();
            match self.divisor(&t) {
                None => done.add_term(t, c),
                Some((occ, f)) => {
                    let mut r = replace(&t, &occ, f, &self.generators)?;
                    let lead = r.coefficient(&t);
                    r.terms.remove(&t);
                    x.add_scaled(&r, &(-c / lead));
                }
            }
        }
        Ok(done)
    }

    /// Monomials of weight `w` on `g` with no leading-term divisor.
    pub fn normal_monomials_in(&self, g: &Graph, w: usize) -> Result<Vec<TreeMonomial>> {
        self.require(g, w)?;
        let mut v: Vec<TreeMonomial> =
            enumerate_monomials(&self.generators, g, w)?.into_iter().filter(|t| self.is_normal(t)).collect();
        v.sort_by(|a, b| self.order.compare(a, b));
        Ok(v)
    }

    /// Normal monomials of the top weight `n − 1` (binary generators).
    pub fn normal_monomials(&self, g: &Graph) -> Result<Vec<TreeMonomial>> {
        self.normal_monomials_in(g, g.n().saturating_sub(1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let els: Vec<serde_json::Value> = self
            .elements
            .iter()
            .flat_map(|(g, es)| {
                es.iter().map(move |e| {
                    serde_json::json!({
                        "graph": g.to_string(),
                        "leading": crate::algebra::fmt_mono(self.order.leading(e).unwrap(), &self.generators),
                        "element": e.fmt_with(&self.generators),
                    })
                })
            })
            .collect();
        serde_json::json!({ "order": self.order.kind.to_string(), "elements": els, "certificate": self.certificate })
    }
}

/// Every ordered graph of the form `(g|_T)/I`: hosts of decorated subtrees of monomials on `g`.
pub fn minor_closure(graphs: &[Graph]) -> BTreeSet<Graph> {
    let mut out = BTreeSet::new();
    for g in graphs {
        for t in crate::graph_core::enumerate_tubes(g) {
            let r = restrict(g, t.0);
            for part in partitions(&r) {
                out.insert(contract(&r, &part).0);
            }
        }
    }
    out
}

/// Truncated completion on every connected graph with at most `max_vertices` vertices
/// and weights at most `max_weight`.
pub fn buchberger(p: &Presentation, o: &MonomialOrder, bound: (usize, usize)) -> Result<GrobnerBasis> {
    let (v, w) = bound;
    if v > crate::trees::MAX_TREE_VERTICES || w > crate::trees::MAX_TREE_WEIGHT {
        return Err(Error::Bound("completion bound is at most 8 vertices and weight 7".into()));
    }
    let graphs: Vec<Graph> = (1..=v).flat_map(connected_graphs).collect();
    buchberger_on(p, o, &graphs, bound)
}

/// Truncated completion on the minor closure of `graphs`.
pub fn buchberger_on(p: &Presentation, o: &MonomialOrder, graphs: &[Graph], bound: (usize, usize)) -> Result<GrobnerBasis> {
    let engine = Engine::new(p, o)?;
    let closure = minor_closure(graphs);
    let max_v = closure.iter().map(|g| g.n()).max().unwrap_or(1);
    let mut elements: BTreeMap<Graph, Vec<Element>> = BTreeMap::new();
    let mut complete = BTreeSet::new();
    let mut incomplete = Vec::new();
    for n in 2..=max_v {
        let layer: Vec<(Graph, usize)> = closure
            .iter()
            .filter(|g| g.n() == n)
            .flat_map(|g| (1..=bound.1).map(move |w| (g.clone(), w)))
            .collect();
        let results = par::map(layer, |(g, w)| {
            let r = (|| -> Result<Vec<Element>> {
                let c = engine.component(&g, w)?;
                let mut new = Vec::new();
                for col in c.echelon.pivots() {
                    if !engine.has_proper_leading_divisor(&c.monomials[col])? {
                        new.push(c.reduced_element(col));
                    }
                }
                Ok(new)
            })();
            (g, w, r)
        });
        for (g, w, r) in results {
            match r {
                Ok(new) => {
                    complete.insert((g.to_string(), w));
                    if !new.is_empty() {
                        elements.entry(g).or_default().extend(new);
                    }
                }
                Err(Error::Bound(_)) => incomplete.push((g.to_string(), w)),
                Err(e) => return Err(e),
            }
        }
    }
    let cert = Certificate::Region { max_vertices: bound.0, max_weight: bound.1, complete, incomplete };
    Ok(GrobnerBasis::assemble(o, &p.generators, elements, cert))
}

/// Leading-term-ideal elements of weight 2 on the 3-vertex components.
fn quadratic_elements(engine: &Engine) -> Result<BTreeMap<Graph, Vec<Element>>> {
    let mut out = BTreeMap::new();
    for h in connected_graphs(3) {
        let c = engine.component(&h, 2)?;
        let es: Vec<Element> = c.echelon.pivots().map(|col| c.reduced_element(col)).collect();
        if !es.is_empty() {
            out.insert(h, es);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwRow {
    pub graph: String,
    pub family: String,
    pub normal: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub presentation: String,
    pub order: String,
    pub rows: Vec<PbwRow>,
    pub pass: bool,
}

/// Compares weight-3 normal-monomial counts for the quadratic leading terms with the true
/// weight-3 dimensions on all 38 ordered 4-vertex graphs.
pub fn pbw_check(p: &Presentation, o: &MonomialOrder) -> Result<PbwReport> {
    p.require_binary_quadratic()?;
    let engine = Engine::new(p, o)?;
    let quad = quadratic_elements(&engine)?;
    let lt = GrobnerBasis::assemble(o, &p.generators, quad, Certificate::Quadratic { checked_graphs: 0 });
    let rows = par::map(connected_graphs(4), |g| -> Result<PbwRow> {
        let normal = enumerate_monomials(&p.generators, &g, 3)?.iter().filter(|t| lt.is_normal(t)).count();
        let dimension = engine.component(&g, 3)?.dim();
        Ok(PbwRow { family: family_name(&g), graph: g.to_string(), normal, dimension })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.normal == r.dimension);
    Ok(PbwReport { presentation: p.name.clone(), order: o.kind.to_string(), rows, pass })
}

/// The quadratic Gröbner basis, certified for all components by the weight-3 criterion.
pub fn quadratic_grobner_basis(p: &Presentation, o: &MonomialOrder) -> Result<GrobnerBasis> {
    let report = pbw_check(p, o)?;
    if !report.pass {
        return Err(Error::Uncertified(format!("weight-3 criterion fails for {} under {}", p.name, o.kind)));
    }
    let engine = Engine::new(p, o)?;
    let quad = quadratic_elements(&engine)?;
    Ok(GrobnerBasis::assemble(o, &p.generators, quad, Certificate::Quadratic { checked_graphs: report.rows.len() }))
}

/// Differences of the two liftings over every weight-3 monomial on a 4-vertex graph
/// carrying overlapping occurrences of both leading terms.
pub fn s_polynomials(f: &Element, g: &Element, p: &Presentation, o: &MonomialOrder) -> Result<Vec<Element>> {
    p.require_binary_quadratic()?;
    let gens = &p.generators;
    let (Some(lf), Some(lg)) = (o.leading(f), o.leading(g)) else { return Ok(vec![]) };
    if !f.coefficient(lf).is_one() || !g.coefficient(lg).is_one() {
        return Err(Error::Invalid("s-polynomials need monic inputs".into()));
    }
    if lf.weight() != 2 || lg.weight() != 2 {
        return Err(Error::Unsupported("only quadratic elements overlap in weight 3".into()));
    }
    let same = f == g;
    let mut out = Vec::new();
    for host in connected_graphs(4) {
        for t in enumerate_monomials(gens, &host, 3)? {
            let fl = Flat::new(&t.root);
            let sets = connected_vertex_sets(&fl, 2);
            for (i, a) in sets.iter().enumerate() {
                if pattern_at(&t, &fl, a) != *lf {
                    continue;
                }
                for (j, b) in sets.iter().enumerate() {
                    if i == j || (same && j < i) || pattern_at(&t, &fl, b) != *lg {
                        continue;
                    }
                    let mut s = replace_flat(&t, &fl, a, f, gens)?;
                    s.add_scaled(&replace_flat(&t, &fl, b, g, gens)?, &q(-1));
                    out.push(s);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Koszul duality.

fn dual_name(s: &str) -> String {
    match s.strip_suffix('*') {
        Some(t) => t.to_string(),
        None => format!("{s}*"),
    }
}

fn leaf_sign(seq: &[u8]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Diagonal value of the weight-2 pairing on a binary quadratic monomial `x ∘ y`:
/// the sign of the leaf permutation, a slot sign for the inner vertex, and the Koszul
/// sign of the two degrees.
pub fn pairing_sign(t: &TreeMonomial, gens: &[Generator]) -> i64 {
    let Node::Vertex(x, ch) = &t.root else { return 1 };
    let Some((slot, y)) = ch.iter().enumerate().find_map(|(i, c)| match c {
        Node::Vertex(y, _) => Some((i, *y)),
        Node::Leaf(_) => None,
    }) else {
        return 1;
    };
    let deg = if gens[*x as usize].is_odd() && gens[y as usize].is_odd() { -1 } else { 1 };
    let slot_sign = if slot % 2 == 0 { 1 } else { -1 };
    leaf_sign(&t.root.leaf_sequence()) * slot_sign * deg
}

/// Quadratic dual presentation: dual letters of opposite degree with twisted input
/// symmetry, relations the annihilator of `R` under the weight-2 pairing.
pub fn koszul_dual(p: &Presentation) -> Result<Presentation> {
    p.require_binary_quadratic()?;
    let dual: Vec<Generator> = p
        .generators
        .iter()
        .map(|x| Generator {
            name: dual_name(&x.name),
            host: x.host.clone(),
            degree: -x.degree,
            flip: match x.flip {
                Flip::Scalar(e) => Flip::Scalar(-e),
                Flip::Letter(j, e) => Flip::Letter(j, -e),
                Flip::Unspecified => Flip::Unspecified,
            },
        })
        .collect();
    let gens = &p.generators;
    let mut relations = BTreeMap::new();
    for h in connected_graphs(3) {
        let monos = enumerate_monomials(gens, &h, 2)?;
        let idx: HashMap<&TreeMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<BTreeMap<usize, Q>> = p
            .relations
            .get(&h)
            .into_iter()
            .flatten()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(m, c)| (idx[m], c * q(pairing_sign(m, gens))))
                    .collect()
            })
            .collect();
        // The pairing is diagonal, so the annihilator splits by degree.
        let perp = homogeneous_nullspace(&rows, &monos, &dual);
        if !perp.is_empty() {
            relations.insert(h, perp);
        }
    }
    Presentation::new(&format!("{}!", p.name), dual, relations)
}

fn homogeneous_nullspace(rows: &[BTreeMap<usize, Q>], monos: &[TreeMonomial], dual: &[Generator]) -> Vec<Element> {
    let degrees: BTreeSet<i32> = monos.iter().map(|m| m.degree(dual)).collect();
    let mut out = Vec::new();
    for d in degrees {
        let cols: Vec<usize> = (0..monos.len()).filter(|&i| monos[i].degree(dual) == d).collect();
        let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let sub: Vec<BTreeMap<usize, Q>> = rows
            .iter()
            .map(|r| r.iter().filter_map(|(i, c)| pos.get(i).map(|&k| (k, c.clone()))).collect())
            .collect();
        for v in nullspace(&sub, cols.len()) {
            out.push(
                Element::from_terms(v.into_iter().map(|(k, c)| (monos[cols[k]].clone(), c)).collect()).normalized(),
            );
        }
    }
    out
}

/// Dimension of the relation space filed under `h`.
pub fn relation_dimension(p: &Presentation, h: &Graph) -> usize {
    let mut idx: HashMap<TreeMonomial, usize> = HashMap::new();
    let rows: Vec<BTreeMap<usize, Q>> = p
        .relations
        .get(h)
        .into_iter()
        .flatten()
        .map(|r| {
            r.terms
                .iter()
                .map(|(m, c)| {
                    let n = idx.len();
                    (*idx.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect()
        })
        .collect();
    crate::linalg::rank_of(&rows)
}

/// Whether two element lists span the same subspace.
pub fn same_span(a: &[Element], b: &[Element]) -> bool {
    let mut idx: HashMap<TreeMonomial, usize> = HashMap::new();
    let mut vec_of = |e: &Element| -> BTreeMap<usize, Q> {
        e.terms
            .iter()
            .map(|(m, c)| {
                let n = idx.len();
                (*idx.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let va: Vec<_> = a.iter().map(&mut vec_of).collect();
    let vb: Vec<_> = b.iter().map(&mut vec_of).collect();
    let ra = crate::linalg::rank_of(&va);
    let rb = crate::linalg::rank_of(&vb);
    let both: Vec<_> = va.iter().chain(&vb).cloned().collect();
    ra == rb && crate::linalg::rank_of(&both) == ra
}
