//! Iterated integrals I(x0; x1, ..., xn; x_{n+1}) at the Lie and Hopf levels.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coalg::{normalize, LinComb};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational};

use crate::field::scalar::fmt_rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IISym {
    lower: FieldElem,
    mid: Vec<FieldElem>,
    upper: FieldElem,
}

impl IISym {
    pub fn new(lower: FieldElem, mid: Vec<FieldElem>, upper: FieldElem) -> IISym {
        IISym { lower, mid, upper }
    }

    pub fn lower(&self) -> &FieldElem {
        &self.lower
    }

    pub fn mid(&self) -> &[FieldElem] {
        &self.mid
    }

    pub fn upper(&self) -> &FieldElem {
        &self.upper
    }

    pub fn weight(&self) -> usize {
        self.mid.len()
    }

    /// (R4): equal endpoints and positive weight.
    pub fn is_zero(&self) -> bool {
        self.lower == self.upper && !self.mid.is_empty()
    }

    /// (R1): weight zero.
    pub fn is_unit(&self) -> bool {
        self.mid.is_empty()
    }

    /// The full point sequence x0, ..., x_{n+1}.
    pub fn points(&self) -> Vec<FieldElem> {
        let mut v = Vec::with_capacity(self.mid.len() + 2);
        v.push(self.lower.clone());
        v.extend(self.mid.iter().cloned());
        v.push(self.upper.clone());
        v
    }

    pub fn from_points(xs: &[FieldElem]) -> IISym {
        assert!(xs.len() >= 2);
        IISym::new(xs[0].clone(), xs[1..xs.len() - 1].to_vec(), xs[xs.len() - 1].clone())
    }
}

impl fmt::Display for IISym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.mid.iter().map(|x| x.to_string()).collect();
        write!(f, "II({}; {}; {})", self.lower, m.join(", "), self.upper)
    }
}

/// I^L(x0; x1..xn; x_{n+1}) = cor(x1, ..., x_{n+1}) - cor(x0, ..., xn); zero in weight 0.
pub fn ii_to_lie(ctx: &Ctx, s: &IISym) -> Result<LinComb> {
    let n = s.weight();
    if n == 0 {
        return Ok(LinComb::zero(0));
    }
    let pts = s.points();
    Ok(normalize(ctx, &pts[1..])?.sub(&normalize(ctx, &pts[..=n])?))
}

/// The telescoping list I(0; 0^i, x0, ..., x_{n-1-i}; x_{n-i}), i = 0..n.
pub fn cor_to_ii(xs: &[FieldElem]) -> Vec<IISym> {
    let n = xs.len() - 1;
    (0..=n)
        .map(|i| {
            let mut mid = vec![FieldElem::zero(); i];
            mid.extend(xs[..n - i].iter().cloned());
            IISym::new(FieldElem::zero(), mid, xs[n - i].clone())
        })
        .collect()
}

/// A commutative monomial in iterated integrals, kept sorted; the empty
/// monomial is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Mono(Vec<IISym>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn factors(&self) -> &[IISym] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(IISym::weight).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join("*"))
    }
}

/// Element of the Hopf algebra as a combination of monomials. Units are
/// dropped from monomials, zero sentinels kill them, and factors with the
/// same endpoints are merged by the shuffle product.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HopfElem {
    terms: BTreeMap<Mono, Rational>,
}

fn shuffles<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in shuffles(&a[1..], b) {
        w.insert(0, a[0].clone());
        out.push(w);
    }
    for mut w in shuffles(a, &b[1..]) {
        w.insert(0, b[0].clone());
        out.push(w);
    }
    out
}

/// All (n1, n2)-shuffles of two sequences.
pub fn shuffle_seqs<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    shuffles(a, b)
}

impl HopfElem {
    pub fn zero() -> HopfElem {
        HopfElem::default()
    }

    pub fn one() -> HopfElem {
        let mut h = HopfElem::zero();
        h.terms.insert(Mono::one(), Rational::one());
        h
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

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn sym(s: IISym) -> HopfElem {
        HopfElem::monomial(vec![s], Rational::one())
    }

    /// c times the normalized product of the factors.
    pub fn monomial(factors: Vec<IISym>, c: Rational) -> HopfElem {
        let mut out = HopfElem::zero();
        out.add_product(factors, c);
        out
    }

    fn add_raw(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add_product(&mut self, factors: Vec<IISym>, c: Rational) {
        let mut fs = Vec::with_capacity(factors.len());
        for s in factors {
            if s.is_zero() {
                return;
            }
            if !s.is_unit() {
                fs.push(s);
            }
        }
        // merge the first pair of factors sharing both endpoints
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                if fs[i].lower == fs[j].lower && fs[i].upper == fs[j].upper {
                    let (a, b) = (fs[i].clone(), fs[j].clone());
                    let rest: Vec<IISym> =
                        fs.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, s)| s.clone()).collect();
                    for w in shuffles(&a.mid, &b.mid) {
                        let mut f = rest.clone();
                        f.push(IISym::new(a.lower.clone(), w, a.upper.clone()));
                        self.add_product(f, c.clone());
                    }
                    return;
                }
            }
        }
        fs.sort();
        self.add_raw(Mono(fs), c);
    }

    pub fn add_scaled(&mut self, o: &HopfElem, c: &Rational) {
        for (m, d) in &o.terms {
            self.add_raw(m.clone(), d * c);
        }
    }

    pub fn add(&self, o: &HopfElem) -> HopfElem {
        let mut r = self.clone();
        r.add_scaled(o, &Rational::one());
        r
    }

    pub fn sub(&self, o: &HopfElem) -> HopfElem {
        let mut r = self.clone();
        r.add_scaled(o, &-Rational::one());
        r
    }

    pub fn scale(&self, c: &Rational) -> HopfElem {
        let mut r = HopfElem::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn mul(&self, o: &HopfElem) -> HopfElem {
        let mut r = HopfElem::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut f = a.0.clone();
                f.extend(b.0.iter().cloned());
                r.add_product(f, x * y);
            }
        }
        r
    }

    /// The homogeneous part of weight w.
    pub fn part(&self, w: usize) -> HopfElem {
        HopfElem { terms: self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Projection to the indecomposables: single symbols map to I^L, products to 0.
    pub fn to_lie(&self, ctx: &Ctx, weight: usize) -> Result<LinComb> {
        let mut out = LinComb::zero(weight);
        for (m, c) in &self.terms {
            if let [s] = m.factors() {
                if s.weight() != weight {
                    return Err(Error::Arity(format!("mixed weights {} and {weight}", s.weight())));
                }
                out.add_scaled(&ii_to_lie(ctx, s)?, c);
            }
        }
        Ok(out)
    }
}

fn fmt_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, body: &str) -> fmt::Result {
    let neg = c < &Rational::zero();
    let a = if neg { -c.clone() } else { c.clone() };
    if !first {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    } else if neg {
        write!(f, "-")?;
    }
    if a.is_one() {
        write!(f, "{body}")
    } else if a.is_integer() {
        write!(f, "{}*{body}", a.numer())
    } else {
        write!(f, "({})*{body}", fmt_rational(&a))
    }
}

impl fmt::Display for HopfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            fmt_coeff(f, i == 0, c, &m.to_string())?;
        }
        Ok(())
    }
}

/// Element of H (x) H.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HopfTensor {
    terms: BTreeMap<(Mono, Mono), Rational>,
}

impl HopfTensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Mono, Mono), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Mono, b: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds c * (x (x) y).
    pub fn add_product(&mut self, x: &HopfElem, y: &HopfElem, c: &Rational) {
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                self.add_term(a.clone(), b.clone(), p * q * c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &HopfTensor, c: &Rational) {
        for ((a, b), d) in &o.terms {
            self.add_term(a.clone(), b.clone(), d * c);
        }
    }

    pub fn sub(&self, o: &HopfTensor) -> HopfTensor {
        let mut r = self.clone();
        r.add_scaled(o, &-Rational::one());
        r
    }

    /// Drops the terms with a unit on either side: the reduced coproduct.
    pub fn reduced(&self) -> HopfTensor {
        HopfTensor {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| !a.is_one() && !b.is_one())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of bidegree (k, n - k).
    pub fn bidegree(&self, k: usize) -> HopfTensor {
        HopfTensor {
            terms: self.terms.iter().filter(|((a, _), _)| a.weight() == k).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for HopfTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            fmt_coeff(f, i == 0, c, &format!("[{a} (x) {b}]"))?;
        }
        Ok(())
    }
}

/// Element of H (x) H (x) H, for coassociativity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HopfTensor3 {
    terms: BTreeMap<(Mono, Mono, Mono), Rational>,
}

impl HopfTensor3 {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Mono, Mono, Mono), &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, k: (Mono, Mono, Mono), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }
}

/// The terms of Goncharov's coproduct of one symbol as (left, gaps),
/// summing over subsequences 0 = i0 < i1 < ... < ik < i_{k+1} = n + 1.
fn goncharov_terms(s: &IISym) -> Vec<(IISym, Vec<IISym>)> {
    if s.is_zero() {
        return Vec::new();
    }
    let pts = s.points();
    let n = s.weight();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut idx = vec![0];
        idx.extend((1..=n).filter(|i| mask >> (i - 1) & 1 == 1));
        idx.push(n + 1);
        let left = IISym::new(
            pts[0].clone(),
            idx[1..idx.len() - 1].iter().map(|&i| pts[i].clone()).collect(),
            pts[n + 1].clone(),
        );
        let gaps = idx.windows(2).map(|w| IISym::from_points(&pts[w[0]..=w[1]])).collect();
        out.push((left, gaps));
    }
    out
}

pub fn goncharov_coproduct(s: &IISym) -> HopfTensor {
    let mut out = HopfTensor::default();
    for (left, gaps) in goncharov_terms(s) {
        out.add_product(&HopfElem::sym(left), &HopfElem::monomial(gaps, Rational::one()), &Rational::one());
    }
    out
}

/// A monomial of the free commutative algebra on the symbols, with only
/// (R1) and (R4) applied.
fn free_mono(factors: impl IntoIterator<Item = IISym>) -> Option<Mono> {
    let mut fs = Vec::new();
    for s in factors {
        if s.is_zero() {
            return None;
        }
        if !s.is_unit() {
            fs.push(s);
        }
    }
    fs.sort();
    Some(Mono(fs))
}

/// Delta on a monomial of the free algebra, without merging factors.
fn free_coproduct(m: &Mono) -> BTreeMap<(Mono, Mono), Rational> {
    let mut acc: BTreeMap<(Mono, Mono), Rational> = BTreeMap::from([((Mono::one(), Mono::one()), Rational::one())]);
    for s in m.factors() {
        let mut next = BTreeMap::new();
        for (left, gaps) in goncharov_terms(s) {
            let (Some(a), Some(b)) = (free_mono([left]), free_mono(gaps)) else { continue };
            for ((x, y), c) in &acc {
                let xa = free_mono(x.0.iter().chain(&a.0).cloned()).expect("no zero factors");
                let yb = free_mono(y.0.iter().chain(&b.0).cloned()).expect("no zero factors");
                let slot = next.entry((xa, yb)).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        next.retain(|_, c: &mut Rational| !c.is_zero());
        acc = next;
    }
    acc
}

/// Delta on a monomial, as the product of the coproducts of its factors.
pub fn coproduct_mono(m: &Mono) -> HopfTensor {
    let mut acc: Vec<(HopfElem, HopfElem, Rational)> = vec![(HopfElem::one(), HopfElem::one(), Rational::one())];
    for s in m.factors() {
        let d = goncharov_coproduct(s);
        let mut next = Vec::new();
        for (x, y, c) in &acc {
            for ((a, b), e) in d.iter() {
                let xa = x.mul(&HopfElem::monomial(a.factors().to_vec(), Rational::one()));
                let yb = y.mul(&HopfElem::monomial(b.factors().to_vec(), Rational::one()));
                next.push((xa, yb, c * e));
            }
        }
        acc = next;
    }
    let mut out = HopfTensor::default();
    for (x, y, c) in acc {
        out.add_product(&x, &y, &c);
    }
    out
}

pub fn coproduct(h: &HopfElem) -> HopfTensor {
    let mut out = HopfTensor::default();
    for (m, c) in h.iter() {
        out.add_scaled(&coproduct_mono(m), c);
    }
    out
}

/// (Delta (x) id) Delta s and (id (x) Delta) Delta s, evaluated in the
/// free commutative algebra on the symbols. Merging factors by the
/// shuffle product first would make the two sides differ by weight-one
/// path compositions, which hold in H but are not applied structurally.
pub fn coassociativity_sides(s: &IISym) -> (HopfTensor3, HopfTensor3) {
    let mut left = HopfTensor3::default();
    let mut right = HopfTensor3::default();
    let Some(m) = free_mono([s.clone()]) else { return (left, right) };
    for ((a, b), c) in free_coproduct(&m) {
        for ((p, q), e) in free_coproduct(&a) {
            left.add_term((p, q, b.clone()), &c * e);
        }
        for ((p, q), e) in free_coproduct(&b) {
            right.add_term((a.clone(), p, q), &c * e);
        }
    }
    (left, right)
}

/// (P2): the shuffle product of two symbols with common endpoints.
pub fn shuffle_product(a: &IISym, b: &IISym) -> Result<HopfElem> {
    if a.lower != b.lower || a.upper != b.upper {
        return Err(Error::Precondition(format!("shuffle product needs common endpoints: {a} and {b}")));
    }
    let mut out = HopfElem::zero();
    for w in shuffles(&a.mid, &b.mid) {
        out.add_scaled(&HopfElem::sym(IISym::new(a.lower.clone(), w, a.upper.clone())), &Rational::one());
    }
    Ok(out)
}

/// (P3): sum over k of I(x0; x1..xk; a) I(a; x_{k+1}..xn; x_{n+1}).
pub fn path_compose(s: &IISym, a: &FieldElem) -> HopfElem {
    let mut out = HopfElem::zero();
    let n = s.weight();
    for k in 0..=n {
        let l = IISym::new(s.lower.clone(), s.mid[..k].to_vec(), a.clone());
        let r = IISym::new(a.clone(), s.mid[k..].to_vec(), s.upper.clone());
        out.add_product(vec![l, r], Rational::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Var;

    fn v(s: &str) -> FieldElem {
        FieldElem::var(Var::new(s))
    }

    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    fn ii(lo: FieldElem, mid: &[FieldElem], hi: FieldElem) -> IISym {
        IISym::new(lo, mid.to_vec(), hi)
    }

    #[test]
    fn lie_projection() {
        let ctx = Ctx::rational();
        assert!(ii_to_lie(&ctx, &ii(v("a"), &[], v("b"))).unwrap().is_zero());
        let w = ii_to_lie(&ctx, &ii(c(0), &[c(1)], c(3))).unwrap();
        assert_eq!(w, LinComb::from_word(&ctx.word(&c(2)).unwrap()));
        assert!(ii_to_lie(&ctx, &ii(v("x"), &[v("y"), c(2)], v("x"))).unwrap().is_zero());
    }

    #[test]
    fn telescoping() {
        let ctx = Ctx::rational();
        let xs = [v("a"), c(0), v("b"), c(2)];
        let mut sum = LinComb::zero(3);
        for s in cor_to_ii(&xs) {
            sum = sum.add(&ii_to_lie(&ctx, &s).unwrap());
        }
        assert_eq!(sum, normalize(&ctx, &xs).unwrap());
        assert_eq!(cor_to_ii(&[v("a"), v("b")]), vec![ii(c(0), &[v("a")], v("b")), ii(c(0), &[c(0)], v("a"))]);
    }

    #[test]
    fn coproduct_small() {
        let s = ii(v("a"), &[v("b")], v("c"));
        let d = goncharov_coproduct(&s);
        let mut e = HopfTensor::default();
        e.add_product(&HopfElem::sym(s.clone()), &HopfElem::one(), &Rational::one());
        e.add_product(&HopfElem::one(), &HopfElem::sym(s), &Rational::one());
        assert_eq!(d, e);
        // four subsequences; the one through I(0; 1; 0) dies by (R4)
        let d = goncharov_coproduct(&ii(c(0), &[c(1), c(0)], v("x")));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn shuffle_and_path() {
        let (a, b, x, y) = (v("a"), v("b"), v("x"), v("y"));
        let p = shuffle_product(&ii(a.clone(), &[x.clone()], b.clone()), &ii(a.clone(), &[y.clone()], b.clone())).unwrap();
        assert_eq!(p.len(), 2);
        let m = HopfElem::sym(ii(a.clone(), &[x.clone()], b.clone())).mul(&HopfElem::sym(ii(a.clone(), &[y], b.clone())));
        assert_eq!(m, p);
        assert!(shuffle_product(&ii(a.clone(), &[x.clone()], b.clone()), &ii(b.clone(), &[x.clone()], a.clone())).is_err());
        let s = ii(v("x0"), &[v("x1")], v("x2"));
        let pc = path_compose(&s, &a);
        let mut e = HopfElem::sym(ii(a.clone(), &[v("x1")], v("x2")));
        e.add_scaled(&HopfElem::sym(ii(v("x0"), &[v("x1")], a.clone())), &Rational::one());
        assert_eq!(pc, e);
        assert_eq!(path_compose(&s, &v("x0")), HopfElem::sym(s));
        assert_eq!(path_compose(&ii(v("x0"), &[v("x1"), v("x2")], v("x3")), &a).len(), 3);
    }
}
