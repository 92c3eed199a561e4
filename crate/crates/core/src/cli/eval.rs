//! Evaluation of syntax trees into field elements and symbol combinations.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::coalg::{normalize, LinComb};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational, Scalar, Var};
use crate::hopf::{ii_to_lie, li_to_hopf, li_to_lie, HopfElem, IISym, LiSym};

use super::parse::{parse, Ast, Op};

/// A symbol appearing in an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Cor(Vec<FieldElem>),
    II(IISym),
    Li(LiSym),
}

impl Term {
    pub fn weight(&self) -> usize {
        match self {
            Term::Cor(xs) => xs.len() - 1,
            Term::II(s) => s.weight(),
            Term::Li(s) => s.weight(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Elem(FieldElem),
    Terms(Vec<(Rational, Term)>),
}

/// Evaluation settings: the field context, an optional whitelist of
/// variable names, and whether reserved `_` names are accepted.
pub struct Env<'a> {
    pub ctx: &'a Ctx,
    pub allowed: Option<BTreeSet<String>>,
    pub internal: bool,
}

impl<'a> Env<'a> {
    pub fn new(ctx: &'a Ctx) -> Env<'a> {
        Env { ctx, allowed: None, internal: false }
    }

    pub fn internal(ctx: &'a Ctx) -> Env<'a> {
        Env { ctx, allowed: None, internal: true }
    }

    fn var(&self, name: &str) -> Result<FieldElem> {
        if name.starts_with('_') && !self.internal {
            return Err(Error::UnknownIdent(format!("{name} (names starting with `_` are reserved)")));
        }
        if let Some(a) = &self.allowed {
            if !a.contains(name) {
                return Err(Error::UnknownIdent(name.to_string()));
            }
        }
        Ok(FieldElem::var(Var::new(name)))
    }

    pub fn eval(&self, e: &Ast) -> Result<Value> {
        Ok(match e {
            Ast::Int(n) => Value::Elem(FieldElem::from_rational(Rational::from_integer(n.clone()))),
            Ast::Ident(s, _) => Value::Elem(self.var(s)?),
            Ast::Zeta => {
                if self.ctx.order() <= 2 {
                    return Err(Error::Unsupported("`zeta` needs a cyclotomic context of order >= 3".into()));
                }
                Value::Elem(FieldElem::from_scalar(Scalar::zeta(self.ctx.order())))
            }
            Ast::Neg(a) => match self.eval(a)? {
                Value::Elem(x) => Value::Elem(x.neg()),
                Value::Terms(t) => Value::Terms(t.into_iter().map(|(c, s)| (-c, s)).collect()),
            },
            Ast::Pow(a, k) => Value::Elem(self.elem(a)?.pow(*k)?),
            Ast::Bin(op, a, b) => self.binary(*op, self.eval(a)?, self.eval(b)?)?,
            Ast::Cor(xs) => Value::Terms(vec![(Rational::one(), Term::Cor(self.elems(xs)?))]),
            Ast::II(a, m, b) => {
                Value::Terms(vec![(Rational::one(), Term::II(IISym::new(self.elem(a)?, self.elems(m)?, self.elem(b)?)))])
            }
            Ast::Li { n0, idx, args } => {
                let s = LiSym::new(n0.unwrap_or(0), idx.clone(), self.elems(args)?)?;
                Value::Terms(vec![(Rational::one(), Term::Li(s))])
            }
        })
    }

    fn binary(&self, op: Op, a: Value, b: Value) -> Result<Value> {
        use Value::*;
        Ok(match (op, a, b) {
            (Op::Add, Elem(x), Elem(y)) => Elem(x.add(&y)),
            (Op::Sub, Elem(x), Elem(y)) => Elem(x.sub(&y)),
            (Op::Mul, Elem(x), Elem(y)) => Elem(x.mul(&y)),
            (Op::Div, Elem(x), Elem(y)) => Elem(x.div(&y)?),
            (Op::Add, Terms(mut x), Terms(y)) => {
                x.extend(y);
                Terms(x)
            }
            (Op::Sub, Terms(mut x), Terms(y)) => {
                x.extend(y.into_iter().map(|(c, s)| (-c, s)));
                Terms(x)
            }
            (Op::Mul, Elem(c), Terms(t)) | (Op::Mul, Terms(t), Elem(c)) => Terms(scale(t, &coefficient(&c)?)),
            (Op::Div, Terms(t), Elem(c)) => {
                let c = coefficient(&c)?;
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Terms(scale(t, &(Rational::one() / c)))
            }
            (Op::Add | Op::Sub, Elem(x), Terms(_)) | (Op::Add | Op::Sub, Terms(_), Elem(x)) => {
                if x.is_zero() {
                    return Err(Error::Precondition("write symbol combinations without a `0` summand".into()));
                }
                return Err(Error::Precondition("cannot add a field element to a symbol combination".into()));
            }
            _ => return Err(Error::Precondition("symbols can only be scaled by rational constants".into())),
        })
    }

    pub fn elem(&self, e: &Ast) -> Result<FieldElem> {
        match self.eval(e)? {
            Value::Elem(x) => Ok(x),
            Value::Terms(_) => Err(Error::Precondition(format!("expected a field element, found `{e}`"))),
        }
    }

    fn elems(&self, xs: &[Ast]) -> Result<Vec<FieldElem>> {
        xs.iter().map(|x| self.elem(x)).collect()
    }

    pub fn terms(&self, e: &Ast) -> Result<Vec<(Rational, Term)>> {
        match self.eval(e)? {
            Value::Terms(t) => Ok(t),
            Value::Elem(x) if x.is_zero() => Ok(Vec::new()),
            Value::Elem(_) => Err(Error::Precondition(format!("expected a symbol combination, found `{e}`"))),
        }
    }

    /// The image in the Lie coalgebra, normalized.
    pub fn lie(&self, e: &Ast) -> Result<LinComb> {
        let terms = self.terms(e)?;
        let w = terms.first().map(|(_, s)| s.weight()).unwrap_or(0);
        let mut out = LinComb::zero(w);
        for (c, s) in &terms {
            if s.weight() != w {
                return Err(Error::Arity(format!("mixed weights {w} and {}", s.weight())));
            }
            let l = match s {
                Term::Cor(xs) => normalize(self.ctx, xs)?,
                Term::II(i) => ii_to_lie(self.ctx, i)?,
                Term::Li(l) => li_to_lie(self.ctx, l)?,
            };
            out.add_scaled(&l, c);
        }
        Ok(out.refresh(self.ctx))
    }

    /// The element of the Hopf algebra; correlators have no Hopf lift here.
    pub fn hopf(&self, e: &Ast) -> Result<HopfElem> {
        let mut out = HopfElem::zero();
        for (c, s) in self.terms(e)? {
            let h = match s {
                Term::II(i) => HopfElem::sym(i),
                Term::Li(l) => li_to_hopf(&l),
                Term::Cor(_) => return Err(Error::Unsupported("cor(...) lives in the Lie coalgebra; use II or Li".into())),
            };
            out.add_scaled(&h, &c);
        }
        Ok(out)
    }
}

fn scale(t: Vec<(Rational, Term)>, c: &Rational) -> Vec<(Rational, Term)> {
    t.into_iter().map(|(d, s)| (d * c, s)).collect()
}

fn coefficient(x: &FieldElem) -> Result<Rational> {
    x.as_rational().ok_or_else(|| Error::Precondition(format!("coefficient {x} is not a rational constant")))
}

/// Parses and evaluates a field element.
pub fn parse_elem(env: &Env, src: &str) -> Result<FieldElem> {
    env.elem(&parse(src)?)
}

/// Parses and evaluates a normalized combination in the Lie coalgebra.
pub fn parse_lie(env: &Env, src: &str) -> Result<LinComb> {
    env.lie(&parse(src)?)
}
