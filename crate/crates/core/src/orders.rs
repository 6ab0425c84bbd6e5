//! Monomial orders on tree monomials: graphpermlex, its reverse, and the
//! quantum-monoid order for two-letter presentations.
//!
//! The quantum order compares the number of `m`-vertices first (more is larger),
//! then path words in the quantum monoid with `m^k b^l q^j ≺ m^k' b^l' q^j'` iff
//! `k > k'`, or `k = k'` and `l < l'`, or `k = k'`, `l = l'` and `j < j'`, then the
//! leaf permutation. Both stages point the way they are printed; this orientation
//! reproduces the expected four-term chain and leading terms.

use crate::algebra::{Element, TreeMonomial};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Graphpermlex,
    RevGraphpermlex,
    Quantum,
}

impl FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrderKind> {
        match s {
            "graphpermlex" => Ok(OrderKind::Graphpermlex),
            "rev-graphpermlex" => Ok(OrderKind::RevGraphpermlex),
            "quantum" => Ok(OrderKind::Quantum),
            _ => Err(Error::Invalid(format!(
                "unknown order {s}; expected graphpermlex, rev-graphpermlex or quantum"
            ))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Graphpermlex => "graphpermlex",
            OrderKind::RevGraphpermlex => "rev-graphpermlex",
            OrderKind::Quantum => "quantum",
        })
    }
}

/// A monomial order. `letter_rank[x]` ranks letter `x` in the deglex word order;
/// for the quantum kind, `m_letter`/`b_letter` name the two letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub letter_rank: Vec<usize>,
    pub m_letter: u16,
    pub b_letter: u16,
}

impl MonomialOrder {
    /// Letters ranked by their index.
    pub fn new(kind: OrderKind, letters: usize) -> MonomialOrder {
        MonomialOrder { kind, letter_rank: (0..letters).collect(), m_letter: 0, b_letter: 1 }
    }

    pub fn graphpermlex(letters: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::Graphpermlex, letters)
    }

    pub fn rev_graphpermlex(letters: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::RevGraphpermlex, letters)
    }

    pub fn quantum() -> MonomialOrder {
        MonomialOrder::new(OrderKind::Quantum, 2)
    }

    /// Compares two monomials of the same component.
    pub fn compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Ordering {
        match self.kind {
            OrderKind::Graphpermlex => graphpermlex(a, b, &self.letter_rank),
            OrderKind::RevGraphpermlex => graphpermlex(a, b, &self.letter_rank).reverse(),
            OrderKind::Quantum => quantum(a, b, self.m_letter, self.b_letter),
        }
    }

    pub fn try_compare(&self, a: &TreeMonomial, b: &TreeMonomial) -> Result<Ordering> {
        if a.host != b.host {
            return Err(Error::HostMismatch(format!("{} vs {}", a.host, b.host)));
        }
        if a.weight() != b.weight() {
            return Err(Error::Invalid("monomials of different weight".into()));
        }
        if self.kind == OrderKind::Quantum {
            for m in [a, b] {
                if m.root.dfs().iter().any(|&x| x != self.m_letter && x != self.b_letter) {
                    return Err(Error::Invalid("quantum order needs decorations m and b only".into()));
                }
            }
        }
        Ok(self.compare(a, b))
    }

    /// Largest term of a nonzero element.
    pub fn leading<'a>(&self, e: &'a Element) -> Option<&'a TreeMonomial> {
        e.terms.keys().max_by(|a, b| self.compare(a, b))
    }
}

fn deglex(a: &[u16], b: &[u16], rank: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let c = rank[*x as usize].cmp(&rank[*y as usize]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

fn perm_cmp(a: &TreeMonomial, b: &TreeMonomial) -> Ordering {
    a.root.leaf_sequence().cmp(&b.root.leaf_sequence())
}

/// Path words compared leaf by leaf (deglex), then leaf permutations lexicographically.
pub fn graphpermlex(a: &TreeMonomial, b: &TreeMonomial, rank: &[usize]) -> Ordering {
    let n = a.host.n();
    let pa = a.root.path_words(n);
    let pb = b.root.path_words(n);
    for (x, y) in pa.iter().zip(&pb) {
        let c = deglex(x, y, rank);
        if c != Ordering::Equal {
            return c;
        }
    }
    perm_cmp(a, b)
}

/// Canonical form `m^k b^l q^j` of an element of the quantum monoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumMonomial {
    pub k: usize,
    pub l: usize,
    pub q: usize,
}

impl fmt::Display for QuantumMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        s.push_str(&"m".repeat(self.k));
        s.push_str(&"b".repeat(self.l));
        s.push_str(&"q".repeat(self.q));
        f.write_str(&s)
    }
}

impl QuantumMonomial {
    /// The monoid order `≺` as printed.
    pub fn cmp_prec(&self, o: &QuantumMonomial) -> Ordering {
        o.k.cmp(&self.k)
            .then(self.l.cmp(&o.l))
            .then(self.q.cmp(&o.q))
    }
}

/// Normal form under `mq→qm`, `bq→qb`, `bm→mbq`: each `b` standing before an `m`
/// contributes one `q`.
pub fn qm_canonical(word: &str) -> Result<QuantumMonomial> {
    let mut k = 0;
    let mut l = 0;
    let mut qs = 0;
    let mut bs_seen = 0;
    for ch in word.chars() {
        match ch {
            'm' => {
                k += 1;
                qs += bs_seen;
            }
            'b' => {
                l += 1;
                bs_seen += 1;
            }
            'q' => qs += 1,
            _ => return Err(Error::Invalid(format!("letter {ch} not in {{m,b,q}}"))),
        }
    }
    Ok(QuantumMonomial { k, l, q: qs })
}

/// Step-by-step rewriting of a word with the three monoid rules (test oracle).
pub fn qm_rewrite(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    loop {
        let mut changed = false;
        for i in 0..w.len().saturating_sub(1) {
            match (w[i], w[i + 1]) {
                ('m', 'q') | ('b', 'q') => {}
                ('q', 'm') | ('q', 'b') => {
                    w.swap(i, i + 1);
                    changed = true;
                    break;
                }
                ('b', 'm') => {
                    w[i] = 'm';
                    w[i + 1] = 'b';
                    w.insert(i + 2, 'q');
                    changed = true;
                    break;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    w.into_iter().collect()
}

fn qword(w: &[u16], m: u16) -> QuantumMonomial {
    let mut k = 0;
    let mut l = 0;
    let mut qs = 0;
    for &x in w {
        if x == m {
            k += 1;
            qs += l;
        } else {
            l += 1;
        }
    }
    QuantumMonomial { k, l, q: qs }
}

/// Modified graphpermlex over quantum path words.
pub fn quantum(a: &TreeMonomial, b: &TreeMonomial, m: u16, _b_letter: u16) -> Ordering {
    let ca = a.count_letter(m);
    let cb = b.count_letter(m);
    if ca != cb {
        return ca.cmp(&cb);
    }
    let n = a.host.n();
    let pa = a.root.path_words(n);
    let pb = b.root.path_words(n);
    for (x, y) in pa.iter().zip(&pb) {
        let c = qword(x, m).cmp_prec(&qword(y, m));
        if c != Ordering::Equal {
            return c;
        }
    }
    perm_cmp(a, b)
}

/// Path words of a monomial as quantum canonical forms, with its `m`-count (for reports).
pub fn quantum_signature(a: &TreeMonomial, m: u16) -> (usize, Vec<QuantumMonomial>, Vec<usize>) {
    let n = a.host.n();
    (
        a.count_letter(m),
        a.root.path_words(n).iter().map(|w| qword(w, m)).collect(),
        a.root.leaf_sequence().iter().map(|&v| v as usize + 1).collect(),
    )
}
