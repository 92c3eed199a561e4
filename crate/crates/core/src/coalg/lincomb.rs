use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::field::scalar::fmt_rational;
use crate::field::{Ctx, MultWord, Rational};

use super::symbol::Gen;

/// A homogeneous Q-linear combination of generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb {
    weight: usize,
    terms: BTreeMap<Gen, Rational>,
}

impl LinComb {
    pub fn zero(weight: usize) -> LinComb {
        LinComb { weight, terms: BTreeMap::new() }
    }

    pub fn single(g: Gen, c: Rational) -> LinComb {
        let mut l = LinComb::zero(g.weight());
        l.add_term(g, c);
        l
    }

    pub fn from_word(w: &MultWord) -> LinComb {
        let mut l = LinComb::zero(1);
        for (k, e) in w.iter() {
            l.add_term(Gen::Log(k.clone()), e.clone());
        }
        l
    }

    /// The word of a weight-one combination.
    pub fn to_word(&self) -> MultWord {
        let mut w = MultWord::new();
        for (g, c) in &self.terms {
            if let Gen::Log(k) = g {
                w.add_term(k.clone(), c.clone());
            }
        }
        w
    }

    pub fn weight(&self) -> usize {
        self.weight
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

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Gen, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Gen) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest generator with its coefficient.
    pub fn leading(&self) -> Option<(&Gen, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, g: Gen, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.terms.is_empty() || g.weight() == self.weight, "mixed weights");
        if self.terms.is_empty() {
            self.weight = g.weight();
        }
        match self.terms.get_mut(&g) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &LinComb, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (g, d) in &o.terms {
            self.add_term(g.clone(), d * c);
        }
    }

    pub fn add(&self, o: &LinComb) -> LinComb {
        let mut r = self.clone();
        r.add_scaled(o, &Rational::one());
        r
    }

    pub fn sub(&self, o: &LinComb) -> LinComb {
        let mut r = self.clone();
        r.add_scaled(o, &-Rational::one());
        r
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero(self.weight);
        }
        LinComb { weight: self.weight, terms: self.terms.iter().map(|(g, d)| (g.clone(), d * c)).collect() }
    }

    /// Re-expresses weight-one generators over the current factor base.
    pub fn refresh(&self, ctx: &Ctx) -> LinComb {
        if self.weight != 1 {
            return self.clone();
        }
        LinComb::from_word(&ctx.refresh(&self.to_word()))
    }

    /// Applies a linear map generator by generator.
    pub fn map<E>(&self, mut f: impl FnMut(&Gen) -> Result<LinComb, E>) -> Result<LinComb, E> {
        let mut out = LinComb::zero(self.weight);
        for (g, c) in &self.terms {
            out.add_scaled(&f(g)?, c);
        }
        Ok(out)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, body: &str) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if a.is_one() {
        write!(f, "{body}")
    } else if a.is_integer() {
        write!(f, "{}*{body}", a.numer())
    } else {
        write!(f, "({})*{body}", fmt_rational(&a))
    }
}

/// Renders sum c_i * body_i in the same style as LinComb.
pub fn fmt_terms(terms: impl IntoIterator<Item = (Rational, String)>) -> String {
    struct Terms(Vec<(Rational, String)>);
    impl fmt::Display for Terms {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_empty() {
                return write!(f, "0");
            }
            for (i, (c, b)) in self.0.iter().enumerate() {
                fmt_term(f, i == 0, c, b)?;
            }
            Ok(())
        }
    }
    Terms(terms.into_iter().collect()).to_string()
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            fmt_term(f, i == 0, c, &g.to_string())?;
        }
        Ok(())
    }
}

fn ordered(a: Gen, b: Gen) -> Option<(Gen, Gen, bool)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Some((a, b, false)),
        std::cmp::Ordering::Greater => Some((b, a, true)),
        std::cmp::Ordering::Equal => None,
    }
}

/// Element of the exterior square, stored on pairs (a, b) with a < b.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Wedge {
    terms: BTreeMap<(Gen, Gen), Rational>,
}

impl Wedge {
    pub fn zero() -> Wedge {
        Wedge::default()
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

    pub fn iter(&self) -> impl Iterator<Item = (&(Gen, Gen), &Rational)> {
        self.terms.iter()
    }

    /// Adds c * (a ^ b).
    pub fn add_pair(&mut self, a: Gen, b: Gen, c: Rational) {
        if c.is_zero() {
            return;
        }
        let Some((a, b, flip)) = ordered(a, b) else { return };
        let c = if flip { -c } else { c };
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds c * (l1 ^ l2), expanded bilinearly.
    pub fn add_wedge(&mut self, l1: &LinComb, l2: &LinComb, c: &Rational) {
        for (a, x) in l1.iter() {
            for (b, y) in l2.iter() {
                self.add_pair(a.clone(), b.clone(), x * y * c);
            }
        }
    }

    pub fn wedge(l1: &LinComb, l2: &LinComb) -> Wedge {
        let mut w = Wedge::zero();
        w.add_wedge(l1, l2, &Rational::one());
        w
    }

    pub fn add_scaled(&mut self, o: &Wedge, c: &Rational) {
        for ((a, b), d) in &o.terms {
            self.add_pair(a.clone(), b.clone(), d * c);
        }
    }

    pub fn add(&self, o: &Wedge) -> Wedge {
        let mut r = self.clone();
        r.add_scaled(o, &Rational::one());
        r
    }

    pub fn sub(&self, o: &Wedge) -> Wedge {
        let mut r = self.clone();
        r.add_scaled(o, &-Rational::one());
        r
    }

    pub fn scale(&self, c: &Rational) -> Wedge {
        let mut r = Wedge::zero();
        r.add_scaled(self, c);
        r
    }

    /// The image under tau: a ^ b -> b ^ a, which is the negative.
    pub fn swapped(&self) -> Wedge {
        let mut r = Wedge::zero();
        for ((a, b), c) in &self.terms {
            r.add_pair(b.clone(), a.clone(), c.clone());
        }
        r
    }

    /// Applies f ^ f for a linear map f on generators.
    pub fn map<E>(&self, mut f: impl FnMut(&Gen) -> Result<LinComb, E>) -> Result<Wedge, E> {
        let mut cache: BTreeMap<Gen, LinComb> = BTreeMap::new();
        let mut out = Wedge::zero();
        for ((a, b), c) in &self.terms {
            for g in [a, b] {
                if !cache.contains_key(g) {
                    let v = f(g)?;
                    cache.insert(g.clone(), v);
                }
            }
            out.add_wedge(&cache[a], &cache[b], c);
        }
        Ok(out)
    }

    /// Re-expresses weight-one legs over the current factor base.
    pub fn refresh(&self, ctx: &Ctx) -> Wedge {
        self.map(|g| match g {
            Gen::Log(_) => Ok::<_, ()>(LinComb::single(g.clone(), Rational::one()).refresh(ctx)),
            _ => Ok(LinComb::single(g.clone(), Rational::one())),
        })
        .expect("infallible")
    }

    /// The part of bidegree {k, n - k}.
    pub fn component(&self, k: usize) -> Wedge {
        let mut r = Wedge::zero();
        for ((a, b), c) in &self.terms {
            if a.weight() == k || b.weight() == k {
                r.add_pair(a.clone(), b.clone(), c.clone());
            }
        }
        r
    }

    /// Terms whose legs both have weight >= 2.
    pub fn without_weight_one(&self) -> Wedge {
        let mut r = Wedge::zero();
        for ((a, b), c) in &self.terms {
            if a.weight() >= 2 && b.weight() >= 2 {
                r.add_pair(a.clone(), b.clone(), c.clone());
            }
        }
        r
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            fmt_term(f, i == 0, c, &format!("[{a} ^ {b}]"))?;
        }
        Ok(())
    }
}

/// Element of the triple tensor power, used for the coJacobi identity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(Gen, Gen, Gen), Rational>,
}

impl Tensor3 {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (Gen, Gen, Gen), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The cyclic shift a (x) b (x) c -> b (x) c (x) a.
    pub fn rotated(&self) -> Tensor3 {
        let mut r = Tensor3::default();
        for ((a, b, c), x) in &self.terms {
            r.add_term((b.clone(), c.clone(), a.clone()), x.clone());
        }
        r
    }

    pub fn add(&self, o: &Tensor3) -> Tensor3 {
        let mut r = self.clone();
        for (k, x) in &o.terms {
            r.add_term(k.clone(), x.clone());
        }
        r
    }

    /// Re-expresses weight-one legs over the current factor base.
    pub fn refresh(&self, ctx: &Ctx) -> Tensor3 {
        let exp = |g: &Gen| -> Vec<(Gen, Rational)> {
            match g {
                Gen::Log(_) => LinComb::single(g.clone(), Rational::one())
                    .refresh(ctx)
                    .iter()
                    .map(|(h, c)| (h.clone(), c.clone()))
                    .collect(),
                _ => vec![(g.clone(), Rational::one())],
            }
        };
        let mut r = Tensor3::default();
        for ((a, b, c), x) in &self.terms {
            for (a2, xa) in exp(a) {
                for (b2, xb) in exp(b) {
                    for (c2, xc) in exp(c) {
                        r.add_term((a2.clone(), b2.clone(), c2), x * &xa * &xb * xc);
                    }
                }
            }
        }
        r
    }
}
