//! Exact sparse row reduction over the rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

use num_traits::{One, Zero};

use crate::coalg::{Gen, LinComb};
use crate::field::Rational;
use crate::hopf::min_nonzero;

/// Sparse vector with keys in a fixed total order.
pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, c) in x {
        let v = y.entry(k.clone()).or_insert_with(Rational::zero);
        *v += a * c;
        if v.is_zero() {
            y.remove(k);
        }
    }
}

/// Fully reduced row echelon form of a span. Each row has coefficient one
/// on its pivot, the largest key of the row, and no other row mentions
/// that pivot. The form depends only on the span.
#[derive(Clone, Debug)]
pub struct Echelon<K = GenKey> {
    rows: BTreeMap<K, SparseVec<K>>,
    // non-pivot key -> pivots of the rows containing it
    occurs: HashMap<K, BTreeSet<K>>,
}

impl<K> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), occurs: HashMap::new() }
    }
}

impl<K: Ord + Clone + Hash> Echelon<K> {
    pub fn new() -> Echelon<K> {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// The canonical residue of v modulo the span.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for (k, c) in v {
            if let Some(r) = self.rows.get(k) {
                axpy(&mut out, &-c.clone(), r);
            }
        }
        out
    }

    fn unlink(&mut self, pivot: &K, row: &SparseVec<K>) {
        for k in row.keys() {
            if k != pivot {
                if let Some(s) = self.occurs.get_mut(k) {
                    s.remove(pivot);
                    if s.is_empty() {
                        self.occurs.remove(k);
                    }
                }
            }
        }
    }

    fn link(&mut self, pivot: &K, row: &SparseVec<K>) {
        for k in row.keys() {
            if k != pivot {
                self.occurs.entry(k.clone()).or_default().insert(pivot.clone());
            }
        }
    }

    /// Adds v to the span; false if it was already there.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((p, c)) = r.iter().next_back() else { return false };
        let p = p.clone();
        let inv = Rational::one() / c;
        for c in r.values_mut() {
            *c *= &inv;
        }
        let touched: Vec<K> = self.occurs.get(&p).map(|s| s.iter().cloned().collect()).unwrap_or_default();
        for q in touched {
            let mut row = self.rows.remove(&q).expect("linked row exists");
            self.unlink(&q, &row);
            let f = row[&p].clone();
            axpy(&mut row, &-f, &r);
            self.link(&q, &row);
            self.rows.insert(q, row);
        }
        self.link(&p, &r);
        r.retain(|_, c| !c.is_zero());
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Generator key ordered by depth first, so that reduction prefers to
/// eliminate correlators with more nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenKey(pub usize, pub Gen);

impl GenKey {
    pub fn new(g: &Gen) -> GenKey {
        let d = match g {
            Gen::Cor(s) => min_nonzero(s.entries()),
            Gen::Log(_) => 0,
        };
        GenKey(d, g.clone())
    }
}

fn to_vec(e: &LinComb) -> SparseVec<GenKey> {
    e.iter().map(|(g, c)| (GenKey::new(g), c.clone())).collect()
}

fn from_vec(weight: usize, v: SparseVec<GenKey>) -> LinComb {
    let mut e = LinComb::zero(weight);
    for (g, c) in v {
        e.add_term(g.1, c);
    }
    e
}

impl Echelon<GenKey> {
    pub fn reduce_comb(&self, e: &LinComb) -> LinComb {
        from_vec(e.weight(), self.reduce(&to_vec(e)))
    }

    pub fn insert_comb(&mut self, e: &LinComb) -> bool {
        self.insert(&to_vec(e))
    }
}
