use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseKey, Ctx, FieldElem};

use super::lincomb::LinComb;

/// A correlator symbol of weight >= 2 in canonical form: entry 0 is zero,
/// the first nonzero entry is one, and the rotation is minimal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CorrSym(Vec<FieldElem>);

impl CorrSym {
    pub fn entries(&self) -> &[FieldElem] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len() - 1
    }

    /// Number of nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }
}

impl Ord for CorrSym {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for CorrSym {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for CorrSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cor(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Generator of the graded space: a weight-one base element log(b) or a correlator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    Log(BaseKey),
    Cor(CorrSym),
}

impl Gen {
    pub fn weight(&self) -> usize {
        match self {
            Gen::Log(_) => 1,
            Gen::Cor(c) => c.weight(),
        }
    }

    pub fn as_cor(&self) -> Option<&CorrSym> {
        match self {
            Gen::Cor(c) => Some(c),
            Gen::Log(_) => None,
        }
    }

    /// The entries of a representative tuple.
    pub fn entries(&self) -> Vec<FieldElem> {
        match self {
            Gen::Log(k) => vec![FieldElem::zero(), k.value()],
            Gen::Cor(c) => c.0.clone(),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Log(k) => write!(f, "cor(0, {})", k.value()),
            Gen::Cor(c) => write!(f, "{c}"),
        }
    }
}

const CACHE_LIMIT: usize = 1 << 18;

thread_local! {
    static CANON: RefCell<HashMap<Vec<FieldElem>, Option<CorrSym>>> = RefCell::new(HashMap::new());
}

fn is_degenerate(xs: &[FieldElem]) -> bool {
    // all equal, or all but one equal: (A5), (A6) after translation and scaling
    let n = xs.len();
    xs[..2].iter().any(|x| xs.iter().filter(|y| *y == x).count() + 1 >= n)
}

fn canonical_uncached(xs: &[FieldElem]) -> Option<CorrSym> {
    if is_degenerate(xs) {
        return None;
    }
    let n = xs.len();
    let mut best: Option<Vec<FieldElem>> = None;
    for r in 0..n {
        let base = &xs[r];
        let shifted: Vec<FieldElem> = (0..n).map(|i| xs[(r + i) % n].sub(base)).collect();
        let lead = shifted.iter().find(|y| !y.is_zero()).expect("not all equal");
        let inv = lead.inv().expect("nonzero");
        let cand: Vec<FieldElem> = shifted.iter().map(|y| y.mul(&inv)).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.map(CorrSym)
}

/// Canonical symbol of a tuple of length >= 3, or None if it vanishes.
pub fn canonical(xs: &[FieldElem]) -> Option<CorrSym> {
    debug_assert!(xs.len() >= 3);
    if let Some(hit) = CANON.with(|c| c.borrow().get(xs).cloned()) {
        return hit;
    }
    let res = canonical_uncached(xs);
    CANON.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(xs.to_vec(), res.clone());
    });
    res
}

/// The class of ((x0, ..., xn)) modulo (A1)-(A6).
pub fn normalize(ctx: &Ctx, xs: &[FieldElem]) -> Result<LinComb> {
    match xs.len() {
        0 | 1 => Err(Error::Arity(format!("a correlator needs at least 2 entries, got {}", xs.len()))),
        2 => weight1_value(ctx, &xs[0], &xs[1]),
        n => Ok(match canonical(xs) {
            Some(s) => LinComb::single(Gen::Cor(s), crate::field::rat(1)),
            None => LinComb::zero(n - 1),
        }),
    }
}

/// ((x0, x1)) as the word of x1 - x0.
pub fn weight1_value(ctx: &Ctx, x0: &FieldElem, x1: &FieldElem) -> Result<LinComb> {
    let d = x1.sub(x0);
    if d.is_zero() {
        return Ok(LinComb::zero(1));
    }
    Ok(LinComb::from_word(&ctx.word(&d)?))
}

/// log(x) = ((0, x)).
pub fn log(ctx: &Ctx, x: &FieldElem) -> Result<LinComb> {
    weight1_value(ctx, &FieldElem::zero(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Var};

    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn degenerate_tuples_vanish() {
        let ctx = Ctx::rational();
        assert!(normalize(&ctx, &[c(0), c(0), c(0)]).unwrap().is_zero());
        assert!(normalize(&ctx, &[c(1), c(0), c(0)]).unwrap().is_zero());
        assert!(normalize(&ctx, &[c(0), c(1), c(0)]).unwrap().is_zero());
        assert!(normalize(&ctx, &[c(5), c(5), c(2), c(5)]).unwrap().is_zero());
        assert!(normalize(&ctx, &[c(0)]).is_err());
    }

    #[test]
    fn rotation_translation_scaling_orbit() {
        let ctx = Ctx::rational();
        let a = normalize(&ctx, &[c(3), c(5), c(7)]).unwrap();
        let orbit = [[c(0), c(1), c(2)], [c(0), c(1), c(-1)], [c(0), c(2), c(1)]];
        for o in &orbit {
            assert_eq!(normalize(&ctx, o).unwrap(), a);
        }
        let (_, s) = a.iter().next().unwrap();
        assert_eq!(*s, rat(1));
    }

    #[test]
    fn cyclic_invariance() {
        let ctx = Ctx::rational();
        let t = FieldElem::var(Var::new("t"));
        let xs = [t.clone(), c(2), t.pow(2).unwrap(), c(-1)];
        let a = normalize(&ctx, &xs).unwrap();
        let b = normalize(&ctx, &[c(2), t.pow(2).unwrap(), c(-1), t]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weight_one_words() {
        let ctx = Ctx::rational();
        let w = weight1_value(&ctx, &c(5), &c(3)).unwrap();
        assert_eq!(w, LinComb::from_word(&ctx.word(&c(2)).unwrap()));
        assert!(weight1_value(&ctx, &c(0), &c(-1)).unwrap().is_zero());
    }
}
