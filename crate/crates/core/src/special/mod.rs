//! Specialization Sp_{t -> a} of correlator combinations over F(t).

use std::fmt;

use num_traits::One;

use crate::coalg::{normalize, Gen, LinComb, Wedge};
use crate::error::Result;
use crate::field::{Center, Ctx, FieldElem, Rational, Scalar, Valuation, Var};

/// A point a in F or infinity for a distinguished variable t, with the
/// uniformizer c*(t - a), or c/t at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoint {
    val: Valuation,
    scale: Rational,
}

impl SpecPoint {
    pub fn new(var: Var, center: Center) -> Result<SpecPoint> {
        Ok(SpecPoint { val: Valuation::new(var, center)?, scale: Rational::one() })
    }

    pub fn at(var: Var, a: FieldElem) -> Result<SpecPoint> {
        SpecPoint::new(var, Center::Finite(a))
    }

    pub fn infinity(var: Var) -> SpecPoint {
        SpecPoint::new(var, Center::Infinity).expect("infinity is always a valid center")
    }

    /// Same point with the uniformizer multiplied by c.
    pub fn with_scale(mut self, c: Rational) -> SpecPoint {
        assert!(!num_traits::Zero::is_zero(&c));
        self.scale = c;
        self
    }

    pub fn var(&self) -> Var {
        self.val.var()
    }

    pub fn center(&self) -> &Center {
        self.val.center()
    }

    pub fn valuation(&self) -> &Valuation {
        &self.val
    }

    /// (nu(f), residue of f / pi^nu(f)) for the chosen uniformizer.
    pub fn lead(&self, f: &FieldElem) -> Result<(i64, FieldElem)> {
        let (v, r) = self.val.leading(f)?;
        if self.scale.is_one() {
            return Ok((v, r));
        }
        let c = Scalar::Rat(self.scale.clone()).pow(-v)?;
        Ok((v, r.scale(&c)))
    }
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.var(), self.center())
    }
}

/// Sp of ((x0, ..., xn)) for an arbitrary tuple.
pub fn specialize_tuple(ctx: &Ctx, xs: &[FieldElem], p: &SpecPoint) -> Result<LinComb> {
    let n = xs.len() - 1;
    if xs.iter().all(|x| *x == xs[0]) {
        return Ok(LinComb::zero(n));
    }
    let ys: Vec<FieldElem> = xs.iter().map(|x| x.sub(&xs[0])).collect();
    let mut leads = Vec::with_capacity(ys.len());
    for y in &ys {
        leads.push(if y.is_zero() { None } else { Some(p.lead(y)?) });
    }
    let s = leads.iter().flatten().map(|(v, _)| *v).min().expect("some entry differs");
    let reduced: Vec<FieldElem> = leads
        .into_iter()
        .map(|l| match l {
            Some((v, r)) if v == s => r,
            _ => FieldElem::zero(),
        })
        .collect();
    normalize(ctx, &reduced)
}

/// Sp on a weight-one combination: each base element goes to its unit residue.
pub fn specialize_weight1(ctx: &Ctx, e: &LinComb, p: &SpecPoint) -> Result<LinComb> {
    let mut out = LinComb::zero(1);
    for (g, c) in e.refresh(ctx).iter() {
        if let Gen::Log(k) = g {
            let (_, r) = p.lead(&k.value())?;
            out.add_scaled(&LinComb::from_word(&ctx.word(&r)?), c);
        }
    }
    Ok(out.refresh(ctx))
}

/// Sp_{nu, pi} on a homogeneous combination.
pub fn specialize(ctx: &Ctx, e: &LinComb, p: &SpecPoint) -> Result<LinComb> {
    if e.weight() == 1 {
        return specialize_weight1(ctx, e, p);
    }
    e.map(|g| match g {
        Gen::Cor(s) => specialize_tuple(ctx, s.entries(), p),
        Gen::Log(_) => unreachable!("weight mismatch"),
    })
}

/// (Sp ^ Sp) on a wedge.
pub fn specialize_wedge(ctx: &Ctx, w: &Wedge, p: &SpecPoint) -> Result<Wedge> {
    Ok(w.map(|g| specialize(ctx, &LinComb::single(g.clone(), Rational::one()), p))?.refresh(ctx))
}
