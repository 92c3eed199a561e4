//! Words over the alphabet of letters (n, x), with the shuffle and quasi-shuffle products.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{FieldElem, Rational};

use super::li::LiSym;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct QSWord(Vec<(u32, FieldElem)>);

impl QSWord {
    pub fn empty() -> QSWord {
        QSWord(Vec::new())
    }

    pub fn new(letters: Vec<(u32, FieldElem)>) -> Result<QSWord> {
        if letters.iter().any(|(n, x)| *n == 0 || x.is_zero()) {
            return Err(crate::Error::Precondition("letters need n >= 1 and x != 0".into()));
        }
        Ok(QSWord(letters))
    }

    pub fn letters(&self) -> &[(u32, FieldElem)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|(n, _)| *n as usize).sum()
    }

    fn prepend(&self, a: &(u32, FieldElem)) -> QSWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a.clone());
        v.extend(self.0.iter().cloned());
        QSWord(v)
    }

    fn tail(&self) -> QSWord {
        QSWord(self.0[1..].to_vec())
    }

    pub fn reversed(&self) -> QSWord {
        QSWord(self.0.iter().rev().cloned().collect())
    }

    /// The multiple polylogarithm Li_{n1..nk}(x1..xk) with n0 = 0.
    pub fn to_li(&self, n0: u32) -> Result<LiSym> {
        LiSym::new(n0, self.0.iter().map(|(n, _)| *n).collect(), self.0.iter().map(|(_, x)| x.clone()).collect())
    }
}

impl fmt::Display for QSWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|(n, x)| format!("{n},{x}")).collect();
        write!(f, "[{}]", s.join(" | "))
    }
}

/// Q-linear combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordComb(BTreeMap<QSWord, Rational>);

impl WordComb {
    pub fn zero() -> WordComb {
        WordComb::default()
    }

    pub fn single(w: QSWord) -> WordComb {
        let mut c = WordComb::zero();
        c.add_term(w, Rational::one());
        c
    }

    pub fn add_term(&mut self, w: QSWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, o: &WordComb, c: &Rational) {
        for (w, d) in &o.0 {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QSWord, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn prepend(&self, a: &(u32, FieldElem)) -> WordComb {
        WordComb(self.0.iter().map(|(w, c)| (w.prepend(a), c.clone())).collect())
    }

    /// Bilinear extension of a product on words.
    pub fn product(&self, o: &WordComb, f: fn(&QSWord, &QSWord) -> WordComb) -> WordComb {
        let mut r = WordComb::zero();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                r.add_scaled(&f(a, b), &(x * y));
            }
        }
        r
    }
}

impl fmt::Display for WordComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", s.join(" + "))
    }
}

/// a w * b v = (a.b)(w * v) + b(a w * v) + a(w * b v).
pub fn qshuffle(w1: &QSWord, w2: &QSWord) -> WordComb {
    if w1.is_empty() {
        return WordComb::single(w2.clone());
    }
    if w2.is_empty() {
        return WordComb::single(w1.clone());
    }
    let (a, b) = (&w1.0[0], &w2.0[0]);
    let ab = (a.0 + b.0, a.1.mul(&b.1));
    let mut r = qshuffle(&w1.tail(), &w2.tail()).prepend(&ab);
    r.add_scaled(&qshuffle(w1, &w2.tail()).prepend(b), &Rational::one());
    r.add_scaled(&qshuffle(&w1.tail(), w2).prepend(a), &Rational::one());
    r
}

/// a w sh b v = b(a w sh v) + a(w sh b v).
pub fn shuffle_words(w1: &QSWord, w2: &QSWord) -> WordComb {
    if w1.is_empty() {
        return WordComb::single(w2.clone());
    }
    if w2.is_empty() {
        return WordComb::single(w1.clone());
    }
    let (a, b) = (&w1.0[0], &w2.0[0]);
    let mut r = shuffle_words(w1, &w2.tail()).prepend(b);
    r.add_scaled(&shuffle_words(&w1.tail(), w2).prepend(a), &Rational::one());
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Var};

    fn l(n: u32, s: &str) -> (u32, FieldElem) {
        (n, FieldElem::var(Var::new(s)))
    }

    #[test]
    fn recursion_examples() {
        let x = QSWord::new(vec![l(1, "x")]).unwrap();
        let y = QSWord::new(vec![l(1, "y")]).unwrap();
        let p = qshuffle(&x, &y);
        let mut e = WordComb::zero();
        e.add_term(QSWord::new(vec![l(1, "x"), l(1, "y")]).unwrap(), rat(1));
        e.add_term(QSWord::new(vec![l(1, "y"), l(1, "x")]).unwrap(), rat(1));
        let s = e.clone();
        e.add_term(QSWord::new(vec![(2, FieldElem::var(Var::new("x")).mul(&FieldElem::var(Var::new("y"))))]).unwrap(), rat(1));
        assert_eq!(p, e);
        assert_eq!(shuffle_words(&x, &y), s);
        assert_eq!(qshuffle(&QSWord::empty(), &x), WordComb::single(x.clone()));
        let xx = qshuffle(&x, &x);
        assert_eq!(xx.len(), 2);
        assert_eq!(xx.iter().find(|(w, _)| w.len() == 2).unwrap().1, &rat(2));
        assert!(shuffle_words(&x, &y).iter().all(|(w, _)| w.len() == 2));
    }
}
