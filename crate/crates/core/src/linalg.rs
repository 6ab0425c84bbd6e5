//! Exact sparse Gaussian elimination over the rationals.
//!
//! Rows are stored fraction-free as primitive integer vectors with a positive
//! leading entry; the leading column is the largest column index.

use crate::algebra::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse integer row, columns strictly decreasing.
pub type Row = Vec<(usize, BigInt)>;

/// Scales rational entries to a primitive integer row (columns sorted decreasing).
pub fn integer_row(entries: &BTreeMap<usize, Q>) -> Row {
    let mut l = BigInt::one();
    for v in entries.values() {
        l = l.lcm(v.denom());
    }
    let mut row: Row = entries
        .iter()
        .rev()
        .filter(|(_, v)| !v.is_zero())
        .map(|(&c, v)| (c, (v * Q::from_integer(l.clone())).to_integer()))
        .collect();
    primitive(&mut row);
    row
}

fn primitive(row: &mut Row) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * x - b * y` for rows `x`, `y`.
fn combine(x: &Row, a: &BigInt, y: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 > y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 > x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces the leading part of `row`; inserts it if independent. Returns the new pivot.
    pub fn insert(&mut self, mut row: Row) -> Option<usize> {
        primitive(&mut row);
        while let Some((c, _)) = row.first() {
            let c = *c;
            match self.rows.get(&c) {
                None => {
                    self.rows.insert(c, row);
                    return Some(c);
                }
                Some(p) => {
                    let a = &p[0].1;
                    let b = &row[0].1;
                    let g = a.gcd(b);
                    let (a, b) = (a / &g, b / &g);
                    row = combine(&row, &a, p, &b);
                    primitive(&mut row);
                }
            }
        }
        None
    }

    /// Full reduction of a rational vector: no remaining entry sits on a pivot.
    pub fn reduce(&self, v: &BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let mut v = v.clone();
        loop {
            let next = v.iter().rev().find(|(c, x)| !x.is_zero() && self.rows.contains_key(c)).map(|(c, _)| *c);
            let Some(c) = next else { break };
            let p = &self.rows[&c];
            let f = v[&c].clone() / Q::from_integer(p[0].1.clone());
            for (col, val) in p {
                let e = v.entry(*col).or_insert_with(Q::zero);
                *e -= &f * Q::from_integer(val.clone());
                if e.is_zero() {
                    v.remove(col);
                }
            }
        }
        v
    }

    /// Monic reduced row for pivot `c`: the pivot plus a tail free of other pivots.
    pub fn reduced_row(&self, c: usize) -> BTreeMap<usize, Q> {
        let p = &self.rows[&c];
        let lead = Q::from_integer(p[0].1.clone());
        let tail: BTreeMap<usize, Q> = p[1..]
            .iter()
            .map(|(col, v)| (*col, Q::from_integer(v.clone()) / &lead))
            .collect();
        let mut out = self.reduce(&tail);
        out.insert(c, Q::one());
        out
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank_of(rows: &[BTreeMap<usize, Q>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(integer_row(r));
    }
    e.rank()
}

/// Basis of `{x : Σ_j a_ij x_j = 0}` for `ncols` unknowns.
pub fn nullspace(rows: &[BTreeMap<usize, Q>], ncols: usize) -> Vec<BTreeMap<usize, Q>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(integer_row(r));
    }
    // Fully reduce to obtain reduced row echelon form.
    let pivots: Vec<usize> = e.pivots().collect();
    let rref: BTreeMap<usize, BTreeMap<usize, Q>> = pivots.iter().map(|&c| (c, e.reduced_row(c))).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !rref.contains_key(c)) {
        let mut v = BTreeMap::new();
        v.insert(free, Q::one());
        for (&pc, row) in &rref {
            if let Some(a) = row.get(&free) {
                v.insert(pc, -a.clone());
            }
        }
        out.push(v);
    }
    out
}
