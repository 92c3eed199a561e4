//! The pre-Bloch group in weight 2: the Suslin differential and the maps
//! L2 and M2 between B2 and the weight-2 Lie coalgebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coalg::{Gen, LinComb, Wedge};
use crate::error::{Error, Result};
use crate::field::scalar::fmt_rational;
use crate::field::{Ctx, FieldElem, Rational};

use super::linalg::{Echelon, SparseVec};

/// A combination of generators {a}_2 with a not in {0, 1}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlochElem(BTreeMap<FieldElem, Rational>);

impl BlochElem {
    pub fn zero() -> BlochElem {
        BlochElem::default()
    }

    pub fn single(a: FieldElem, c: Rational) -> Result<BlochElem> {
        let mut b = BlochElem::zero();
        b.add_term(a, c)?;
        Ok(b)
    }

    pub fn add_term(&mut self, a: FieldElem, c: Rational) -> Result<()> {
        if a.is_zero() || a.is_one() {
            return Err(Error::Precondition(format!("{{{a}}}_2 needs an argument outside 0 and 1")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.0.entry(a.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&a);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, o: &BlochElem, c: &Rational) {
        for (a, d) in &o.0 {
            self.add_term(a.clone(), d * c).expect("valid generator");
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FieldElem, &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

}

impl fmt::Display for BlochElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{{{a}}}_2", fmt_rational(c))?;
        }
        Ok(())
    }
}

/// {a}_2 -> a ^ (1 - a) in the exterior square of F^x (x) Q.
pub fn bloch_delta(ctx: &Ctx, e: &BlochElem) -> Result<Wedge> {
    let mut w = Wedge::zero();
    for (a, c) in e.iter() {
        let x = LinComb::from_word(&ctx.word(a)?);
        let y = LinComb::from_word(&ctx.word(&FieldElem::one().sub(a))?);
        w.add_wedge(&x, &y, c);
    }
    Ok(w.refresh(ctx))
}

/// {a}_2 -> Li2^L(a) = -cor(1, 0, a).
pub fn map_l2(ctx: &Ctx, e: &BlochElem) -> Result<LinComb> {
    let mut out = LinComb::zero(2);
    for (a, c) in e.iter() {
        out.add_scaled(&crate::coalg::normalize(ctx, &[FieldElem::one(), FieldElem::zero(), a.clone()])?.neg(), c);
    }
    Ok(out)
}

/// cor(x0, x1, x2) with distinct entries -> {(x2 - x0)/(x1 - x0)}_2.
pub fn map_m2(e: &LinComb) -> Result<BlochElem> {
    let mut out = BlochElem::zero();
    if e.weight() != 2 {
        return Err(Error::Precondition("M2 is defined in weight 2".into()));
    }
    for (g, c) in e.iter() {
        let Gen::Cor(s) = g else { continue };
        let x = s.entries();
        if x[0] == x[1] || x[1] == x[2] || x[0] == x[2] {
            continue;
        }
        out.add_term(x[2].sub(&x[0]).div(&x[1].sub(&x[0]))?, c.clone())?;
    }
    Ok(out)
}

/// R2(a, b) = [a] - [b] + [b/a] - [(1 - 1/a)/(1 - 1/b)] + [(1 - a)/(1 - b)].
pub fn five_term(a: &FieldElem, b: &FieldElem) -> Result<BlochElem> {
    let one = FieldElem::one();
    for (name, x) in [("a", a), ("b", b)] {
        if x.is_zero() {
            return Err(Error::Precondition(format!("{name} = 0")));
        }
        if x.is_one() {
            return Err(Error::Precondition(format!("{name} = 1")));
        }
    }
    if a == b {
        return Err(Error::Precondition("a = b".into()));
    }
    let args = [
        (a.clone(), 1),
        (b.clone(), -1),
        (b.div(a)?, 1),
        (one.sub(&a.inv()?).div(&one.sub(&b.inv()?))?, -1),
        (one.sub(a).div(&one.sub(b))?, 1),
    ];
    let mut out = BlochElem::zero();
    for (x, s) in args {
        out.add_term(x, Rational::from_integer(s.into()))?;
    }
    Ok(out)
}

/// The six images of x under the anharmonic group, even permutations
/// first: x, 1/(1 - x), 1 - 1/x, then 1/x, 1 - x, x/(x - 1).
pub fn anharmonic(x: &FieldElem) -> Result<Vec<FieldElem>> {
    let one = FieldElem::one();
    let y = one.sub(x);
    Ok(vec![x.clone(), y.inv()?, one.sub(&x.inv()?), x.inv()?, y, x.div(&x.sub(&one))?])
}

/// Representative of {x}_2 modulo {x} + {1/x} and {x} + {1 - x}, which
/// hold in B2(F) (x) Q. None when the class is zero.
pub fn anharmonic_class(x: &FieldElem) -> Result<Option<(FieldElem, i64)>> {
    let imgs = anharmonic(x)?;
    let (k, rep) = imgs.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("six images");
    let sign = if k < 3 { 1 } else { -1 };
    let odd = imgs.iter().enumerate().any(|(j, y)| y == rep && (j < 3) != (k < 3));
    Ok(if odd { None } else { Some((rep.clone(), sign)) })
}

fn classes(e: &BlochElem) -> Result<SparseVec<FieldElem>> {
    let mut out = SparseVec::new();
    for (x, c) in e.iter() {
        if let Some((r, s)) = anharmonic_class(x)? {
            super::linalg::axpy(&mut out, &Rational::from_integer(s.into()), &[(r, c.clone())].into());
        }
    }
    Ok(out)
}

/// Span of five-term instances in B2 modulo the anharmonic relations,
/// used to show that a combination vanishes.
pub struct FiveTermSpan {
    ech: Echelon<FieldElem>,
    pub instances: usize,
}

impl FiveTermSpan {
    pub fn new() -> FiveTermSpan {
        FiveTermSpan { ech: Echelon::new(), instances: 0 }
    }

    /// The classes of the instance R2(a, b), if it is defined.
    pub fn instance(a: &FieldElem, b: &FieldElem) -> Option<SparseVec<FieldElem>> {
        classes(&five_term(a, b).ok()?).ok()
    }

    pub fn insert(&mut self, v: &SparseVec<FieldElem>) -> bool {
        self.instances += 1;
        self.ech.insert(v)
    }

    pub fn add(&mut self, a: &FieldElem, b: &FieldElem) -> bool {
        match FiveTermSpan::instance(a, b) {
            Some(v) => self.insert(&v),
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, e: &BlochElem) -> Result<bool> {
        Ok(self.ech.contains(&classes(e)?))
    }
}

impl Default for FiveTermSpan {
    fn default() -> Self {
        FiveTermSpan::new()
    }
}

/// The classes occurring in e.
pub fn class_support(e: &BlochElem) -> Result<Vec<FieldElem>> {
    Ok(classes(e)?.into_keys().collect())
}

/// L2 of a single argument, for callers that think in Li2.
pub fn li2_of(ctx: &Ctx, a: &FieldElem) -> Result<LinComb> {
    map_l2(ctx, &BlochElem::single(a.clone(), Rational::one())?)
}
