//! Coordinates on F^x (x) Q over a gcd-refined coprime factor base.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Mutex, MutexGuard};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::elem::FieldElem;
use super::gcd::gcd;
use super::poly::{Monomial, Poly, Var};
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// A multiplicative generator: a rational prime, an irrational cyclotomic
/// constant (up to torsion and rational content), or a monic polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BaseKey {
    Prime(BigInt),
    Const(Scalar),
    Poly(Poly),
}

impl fmt::Display for BaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKey::Prime(p) => write!(f, "{p}"),
            BaseKey::Const(c) => write!(f, "{c}"),
            BaseKey::Poly(p) if p.len() == 1 => write!(f, "{p}"),
            BaseKey::Poly(p) => write!(f, "({p})"),
        }
    }
}

impl BaseKey {
    /// The base element as a field element.
    pub fn value(&self) -> FieldElem {
        match self {
            BaseKey::Prime(p) => FieldElem::from_rational(Rational::from_integer(p.clone())),
            BaseKey::Const(c) => FieldElem::from_scalar(c.clone()),
            BaseKey::Poly(p) => FieldElem::from_poly(p.clone()),
        }
    }
}

/// Exponent map over base elements; the empty map is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct MultWord(BTreeMap<BaseKey, Rational>);

impl MultWord {
    pub fn new() -> MultWord {
        MultWord(BTreeMap::new())
    }

    pub fn single(k: BaseKey, e: Rational) -> MultWord {
        let mut w = MultWord::new();
        w.add_term(k, e);
        w
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BaseKey, &Rational)> {
        self.0.iter()
    }

    pub fn get(&self, k: &BaseKey) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, k: BaseKey, e: Rational) {
        if e.is_zero() {
            return;
        }
        let slot = self.0.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += e;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn add(&self, o: &MultWord) -> MultWord {
        let mut r = self.clone();
        for (k, e) in &o.0 {
            r.add_term(k.clone(), e.clone());
        }
        r
    }

    pub fn neg(&self) -> MultWord {
        MultWord(self.0.iter().map(|(k, e)| (k.clone(), -e)).collect())
    }

    pub fn sub(&self, o: &MultWord) -> MultWord {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> MultWord {
        if c.is_zero() {
            return MultWord::new();
        }
        MultWord(self.0.iter().map(|(k, e)| (k.clone(), e * c)).collect())
    }

    /// The product of b^e as a field element (exponents must be integers).
    pub fn eval(&self) -> Option<FieldElem> {
        let mut acc = FieldElem::one();
        for (k, e) in &self.0 {
            if !e.is_integer() {
                return None;
            }
            acc = acc.mul(&k.value().pow(e.to_integer().to_i64()?).ok()?);
        }
        Some(acc)
    }
}

impl fmt::Display for MultWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {}", super::scalar::fmt_rational(e))?;
        }
        write!(f, "}}")
    }
}

trait Piece: Clone + Ord + Hash {
    /// A nontrivial common factor, if any.
    fn common(&self, o: &Self) -> Option<Self>;
    fn quo(&self, d: &Self) -> Self;
    fn presplit(&self) -> Option<(Self, Self)> {
        None
    }
}

impl Piece for Poly {
    fn common(&self, o: &Poly) -> Option<Poly> {
        if self.vars().is_disjoint(&o.vars()) {
            return None;
        }
        let g = gcd(self, o);
        (!g.is_constant()).then_some(g)
    }

    fn quo(&self, d: &Poly) -> Poly {
        self.div_exact(d).expect("factor divides").monic().1
    }

    fn presplit(&self) -> Option<(Poly, Poly)> {
        for v in self.vars() {
            let g = gcd(self, &derivative(self, v));
            if !g.is_constant() {
                return Some((g.clone(), self.quo(&g)));
            }
        }
        None
    }
}

impl Piece for BigInt {
    fn common(&self, o: &BigInt) -> Option<BigInt> {
        let g = self.gcd(o);
        (!g.is_one()).then_some(g)
    }

    fn quo(&self, d: &BigInt) -> BigInt {
        self / d
    }
}

pub fn derivative(p: &Poly, v: Var) -> Poly {
    Poly::from_terms(p.terms().filter_map(|(m, c)| {
        let (e, rest) = m.split_var(v);
        (e > 0).then(|| (rest.mul(&Monomial::var(v, e - 1)), c.mul(&Scalar::from_int(e as i64))))
    }))
}

/// Pairwise coprime set of pieces together with the history of splits.
#[derive(Clone, Debug, Default)]
struct Refiner<T: Piece> {
    alive: BTreeSet<T>,
    split: HashMap<T, Vec<T>>,
}

impl<T: Piece + fmt::Debug> Refiner<T> {
    fn new() -> Self {
        Refiner { alive: BTreeSet::new(), split: HashMap::new() }
    }

    fn known(&self, a: &T) -> bool {
        self.alive.contains(a) || self.split.contains_key(a)
    }

    fn insert(&mut self, p: T) -> BTreeMap<T, u32> {
        let mut stack = vec![p.clone()];
        while let Some(a) = stack.pop() {
            if self.known(&a) {
                continue;
            }
            if let Some((g, h)) = a.presplit() {
                self.split.insert(a, vec![g.clone(), h.clone()]);
                stack.push(g);
                stack.push(h);
                continue;
            }
            let hit = self.alive.iter().find_map(|b| b.common(&a).map(|g| (b.clone(), g)));
            match hit {
                None => {
                    self.alive.insert(a);
                }
                Some((b, g)) => {
                    if b != g {
                        self.alive.remove(&b);
                        let h = b.quo(&g);
                        self.split.insert(b, vec![g.clone(), h.clone()]);
                        stack.push(h);
                        stack.push(g.clone());
                    }
                    if a != g {
                        let h = a.quo(&g);
                        self.split.insert(a, vec![g.clone(), h.clone()]);
                        stack.push(h);
                        stack.push(g);
                    } else {
                        stack.push(a);
                    }
                }
            }
        }
        self.expand(&p)
    }

    fn expand(&self, p: &T) -> BTreeMap<T, u32> {
        let mut out = BTreeMap::new();
        let mut stack = vec![p.clone()];
        while let Some(a) = stack.pop() {
            match self.split.get(&a) {
                Some(parts) => stack.extend(parts.iter().cloned()),
                None => *out.entry(a).or_insert(0) += 1,
            }
        }
        out
    }
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// The mutable factor context shared by all word computations.
#[derive(Debug)]
pub struct FactorBase {
    polys: Refiner<Poly>,
    // cofactors left after trial division, refined like polynomials
    bigs: Refiner<BigInt>,
}

impl FactorBase {
    fn new() -> FactorBase {
        FactorBase { polys: Refiner::new(), bigs: Refiner::new() }
    }

    fn integer_word(&mut self, n: &BigInt, sign: i64, w: &mut MultWord) {
        let mut n = n.abs();
        let mut d = 2u64;
        while d < TRIAL_LIMIT && !n.is_one() {
            let bd = BigInt::from(d);
            if &bd * &bd > n {
                break;
            }
            let mut e = 0;
            while (&n % &bd).is_zero() {
                n /= &bd;
                e += 1;
            }
            if e > 0 {
                w.add_term(BaseKey::Prime(bd), Rational::from_integer(BigInt::from(sign * e)));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n.is_one() {
            return;
        }
        let bound = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if n < bound {
            w.add_term(BaseKey::Prime(n), Rational::from_integer(BigInt::from(sign)));
            return;
        }
        for (q, e) in self.bigs.insert(n) {
            w.add_term(BaseKey::Prime(q), Rational::from_integer(BigInt::from(sign * e as i64)));
        }
    }

    fn scalar_word(&mut self, c: &Scalar, order: u32, w: &mut MultWord) {
        let content = c.content();
        self.integer_word(content.numer(), 1, w);
        self.integer_word(content.denom(), -1, w);
        if let Scalar::Cyc(_) = c {
            let unit = c.mul_rat(&content.recip());
            // representatives modulo the torsion units +-zeta^k
            let rep = (0..order)
                .flat_map(|k| {
                    let r = unit.mul_zeta_pow(order, k);
                    [r.neg(), r]
                })
                .min()
                .expect("nonempty");
            if rep.as_rational().is_none() {
                w.add_term(BaseKey::Const(rep), Rational::one());
            }
        }
    }

    fn poly_word(&mut self, p: &Poly, order: u32, sign: i64, w: &mut MultWord) {
        let (lc, m) = p.monic();
        let mut cw = MultWord::new();
        self.scalar_word(&lc, order, &mut cw);
        for (k, e) in cw.iter() {
            w.add_term(k.clone(), e * Rational::from_integer(BigInt::from(sign)));
        }
        if m.is_constant() {
            return;
        }
        for (q, e) in self.polys.insert(m) {
            w.add_term(BaseKey::Poly(q), Rational::from_integer(BigInt::from(sign * e as i64)));
        }
    }

    fn expand_key(&self, k: &BaseKey) -> Option<Vec<(BaseKey, u32)>> {
        match k {
            BaseKey::Poly(p) if self.polys.split.contains_key(p) => {
                Some(self.polys.expand(p).into_iter().map(|(q, e)| (BaseKey::Poly(q), e)).collect())
            }
            BaseKey::Prime(p) if self.bigs.split.contains_key(p) => {
                Some(self.bigs.expand(p).into_iter().map(|(q, e)| (BaseKey::Prime(q), e)).collect())
            }
            _ => None,
        }
    }
}

/// Field context: the cyclotomic order N of the constants and the factor base.
#[derive(Debug)]
pub struct Ctx {
    order: u32,
    base: Mutex<FactorBase>,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::rational()
    }
}

impl Ctx {
    /// Context over Q(zeta_N). N = 1 and N = 2 need no extension.
    pub fn new(order: u32) -> Result<Ctx> {
        if order == 0 {
            return Err(Error::Precondition("cyclotomic order must be positive".into()));
        }
        Ok(Ctx { order, base: Mutex::new(FactorBase::new()) })
    }

    pub fn rational() -> Ctx {
        Ctx::new(1).expect("order 1")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// True if all N-th roots of unity lie in the constant field.
    pub fn has_roots_of_unity(&self, n: u32) -> bool {
        n <= 2 || (n > 0 && self.order % n == 0)
    }

    /// Primitive n-th root of unity, if available.
    pub fn root_of_unity(&self, n: u32) -> Result<Scalar> {
        if !self.has_roots_of_unity(n) {
            return Err(Error::Unsupported(format!("{n}-th roots of unity need a cyclotomic context divisible by {n}")));
        }
        match n {
            1 => Ok(Scalar::one()),
            2 => Ok(Scalar::from_int(-1)),
            _ => Ok(Scalar::zeta(self.order).pow((self.order / n) as i64)?),
        }
    }

    fn lock(&self) -> MutexGuard<'_, FactorBase> {
        self.base.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// The word of f in F^x (x) Q; torsion is dropped.
    pub fn word(&self, f: &FieldElem) -> Result<MultWord> {
        if f.is_zero() {
            return Err(Error::ZeroWord);
        }
        let mut base = self.lock();
        let mut w = MultWord::new();
        base.poly_word(f.num(), self.order, 1, &mut w);
        if !f.den().is_one() {
            base.poly_word(f.den(), self.order, -1, &mut w);
        }
        drop(base);
        Ok(self.refresh(&w))
    }

    /// Re-expresses stale keys over the current base.
    pub fn refresh(&self, w: &MultWord) -> MultWord {
        let base = self.lock();
        if w.iter().all(|(k, _)| base.expand_key(k).is_none()) {
            return w.clone();
        }
        let mut out = MultWord::new();
        for (k, e) in w.iter() {
            match base.expand_key(k) {
                None => out.add_term(k.clone(), e.clone()),
                Some(parts) => {
                    for (q, m) in parts {
                        out.add_term(q, e * Rational::from_integer(BigInt::from(m)));
                    }
                }
            }
        }
        out
    }

    /// Expansion of a possibly stale key; None when the key is current.
    pub fn expand_key(&self, k: &BaseKey) -> Option<Vec<(BaseKey, u32)>> {
        self.lock().expand_key(k)
    }

    /// The current polynomial part of the base.
    pub fn base_polys(&self) -> Vec<Poly> {
        self.lock().polys.alive.iter().cloned().collect()
    }

    /// A new context over the same constants with a copy of the base.
    pub fn fork(&self) -> Ctx {
        let b = self.lock();
        Ctx {
            order: self.order,
            base: Mutex::new(FactorBase { polys: b.polys.clone(), bigs: b.bigs.clone() }),
        }
    }
}
