//! Multiple polylogarithms and the depth filtration.

use std::fmt;

use num_traits::One;

use crate::coalg::{Gen, LinComb};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational};

use super::ii::{ii_to_lie, HopfElem, IISym};

/// Li_{n0; n1..nk}(a1, ..., ak).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LiSym {
    n0: u32,
    idx: Vec<u32>,
    args: Vec<FieldElem>,
}

impl LiSym {
    pub fn new(n0: u32, idx: Vec<u32>, args: Vec<FieldElem>) -> Result<LiSym> {
        if idx.is_empty() || idx.len() != args.len() {
            return Err(Error::Arity(format!("Li needs k >= 1 indices and k arguments, got {} and {}", idx.len(), args.len())));
        }
        if idx.contains(&0) {
            return Err(Error::Arity("Li indices must be positive".into()));
        }
        if args.iter().any(FieldElem::is_zero) {
            return Err(Error::Precondition("Li arguments must be nonzero".into()));
        }
        Ok(LiSym { n0, idx, args })
    }

    pub fn n0(&self) -> u32 {
        self.n0
    }

    pub fn indices(&self) -> &[u32] {
        &self.idx
    }

    pub fn args(&self) -> &[FieldElem] {
        &self.args
    }

    pub fn depth(&self) -> usize {
        self.idx.len()
    }

    pub fn weight(&self) -> usize {
        (self.n0 + self.idx.iter().sum::<u32>()) as usize
    }
}

impl fmt::Display for LiSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i: Vec<String> = self.idx.iter().map(|x| x.to_string()).collect();
        let a: Vec<String> = self.args.iter().map(|x| x.to_string()).collect();
        if self.n0 == 0 {
            write!(f, "Li[{}]({})", i.join(", "), a.join(", "))
        } else {
            write!(f, "Li[{}; {}]({})", self.n0, i.join(", "), a.join(", "))
        }
    }
}

/// Li = (-1)^k I(0; 0^{n0}, 1, 0^{n1-1}, a1, ..., a1..a_{k-1}, 0^{nk-1}; a1..ak).
pub fn li_expand(s: &LiSym) -> (Rational, IISym) {
    let mut mid = vec![FieldElem::zero(); s.n0 as usize];
    let mut prod = FieldElem::one();
    for (n, a) in s.idx.iter().zip(&s.args) {
        mid.push(prod.clone());
        mid.extend(std::iter::repeat_n(FieldElem::zero(), *n as usize - 1));
        prod = prod.mul(a);
    }
    let sign = if s.depth() % 2 == 0 { Rational::one() } else { -Rational::one() };
    (sign, IISym::new(FieldElem::zero(), mid, prod))
}

pub fn li_to_hopf(s: &LiSym) -> HopfElem {
    let (c, i) = li_expand(s);
    HopfElem::sym(i).scale(&c)
}

/// Li^L, the projection to the Lie coalgebra.
pub fn li_to_lie(ctx: &Ctx, s: &LiSym) -> Result<LinComb> {
    let (c, i) = li_expand(s);
    Ok(ii_to_lie(ctx, &i)?.scale(&c))
}

/// Fewest nonzero entries over all translates of the tuple: the most
/// frequent value is moved to zero.
pub fn min_nonzero(xs: &[FieldElem]) -> usize {
    let top = xs.iter().map(|x| xs.iter().filter(|y| *y == x).count()).max().unwrap_or(0);
    xs.len() - top
}

/// Nonzero entries minus one, maximized over the terms: an upper bound for
/// the depth level of the class of e.
pub fn depth_bound(e: &LinComb) -> usize {
    e.iter()
        .map(|(g, _)| match g {
            Gen::Cor(s) => min_nonzero(s.entries()).saturating_sub(1),
            Gen::Log(_) => 0,
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::normalize;
    use crate::field::Var;

    fn v(s: &str) -> FieldElem {
        FieldElem::var(Var::new(s))
    }

    fn c(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn expansions() {
        let li1 = LiSym::new(0, vec![1], vec![v("x")]).unwrap();
        assert_eq!(li_expand(&li1), (-Rational::one(), IISym::new(c(0), vec![c(1)], v("x"))));
        let li2 = LiSym::new(0, vec![2], vec![v("x")]).unwrap();
        assert_eq!(li_expand(&li2), (-Rational::one(), IISym::new(c(0), vec![c(1), c(0)], v("x"))));
        let li11 = LiSym::new(0, vec![1, 1], vec![v("x"), v("y")]).unwrap();
        assert_eq!(li_expand(&li11), (Rational::one(), IISym::new(c(0), vec![c(1), v("x")], v("x").mul(&v("y")))));
        assert!(LiSym::new(0, vec![1], vec![c(0)]).is_err());
    }

    #[test]
    fn li2_is_minus_cor() {
        let ctx = Ctx::rational();
        let li2 = LiSym::new(0, vec![2], vec![v("a")]).unwrap();
        assert_eq!(li_to_lie(&ctx, &li2).unwrap(), normalize(&ctx, &[c(1), c(0), v("a")]).unwrap().neg());
    }

    #[test]
    fn depth_counts() {
        let ctx = Ctx::rational();
        assert_eq!(depth_bound(&normalize(&ctx, &[c(1), c(0), v("x")]).unwrap()), 1);
        assert_eq!(depth_bound(&normalize(&ctx, &[c(0), c(0), v("x")]).unwrap()), 0);
        let e = normalize(&ctx, &[v("a"), v("b"), v("c"), v("d")]).unwrap();
        // translating one entry to zero leaves three nonzero entries
        assert_eq!(depth_bound(&e), 2);
        let e = normalize(&ctx, &[c(1), c(2), c(2), c(0), v("x")]).unwrap();
        assert_eq!(depth_bound(&e), 2);
    }
}
