use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::gcd::gcd;
use super::poly::{Poly, Var};
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Reduced rational function num/den with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
}

impl FieldElem {
    pub fn new(num: Poly, den: Poly) -> Result<FieldElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElem::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(FieldElem { num: num.scale(&c.inv()?), den: Poly::one() });
        }
        let (num, den) = if num.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let (lc, den) = den.monic();
        Ok(FieldElem { num: num.scale(&lc.inv()?), den })
    }

    pub fn from_poly(p: Poly) -> FieldElem {
        FieldElem { num: p, den: Poly::one() }
    }

    pub fn zero() -> FieldElem {
        FieldElem::from_poly(Poly::zero())
    }

    pub fn one() -> FieldElem {
        FieldElem::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> FieldElem {
        FieldElem::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(r: Rational) -> FieldElem {
        FieldElem::from_poly(Poly::constant(Scalar::Rat(r)))
    }

    pub fn from_scalar(c: Scalar) -> FieldElem {
        FieldElem::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> FieldElem {
        FieldElem::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.constant_value().and_then(|c| c.as_rational().cloned())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return FieldElem::from_poly(self.num.add(&o.num));
            }
            return FieldElem::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            return FieldElem { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return FieldElem { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = gcd(&self.den, &o.den);
        let (d1, d2) = (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap());
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        FieldElem::new(num, d1.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldElem) -> FieldElem {
        if self.is_zero() || o.is_zero() {
            return FieldElem::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return FieldElem::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let (lc, den) = den.monic();
        FieldElem { num: num.scale(&lc.inv().expect("nonzero")), den }
    }

    pub fn scale(&self, c: &Scalar) -> FieldElem {
        if c.is_zero() {
            return FieldElem::zero();
        }
        FieldElem { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lc, num) = self.num.monic();
        Ok(FieldElem { num: self.den.scale(&lc.inv()?), den: num })
    }

    pub fn div(&self, o: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        let (lc, den) = base.den.pow(e).monic();
        Ok(FieldElem { num: base.num.pow(e).scale(&lc.inv()?), den })
    }

    /// Substitutes v := value.
    pub fn substitute(&self, v: Var, value: &FieldElem) -> Result<FieldElem> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let n = eval_poly(&self.num, v, value);
        let d = eval_poly(&self.den, v, value);
        n.div(&d)
    }

    /// Total order used for canonical forms.
    pub fn canonical_cmp(&self, o: &FieldElem) -> Ordering {
        self.num
            .total_degree()
            .cmp(&o.num.total_degree())
            .then_with(|| self.den.total_degree().cmp(&o.den.total_degree()))
            .then_with(|| self.num.canonical_cmp(&o.num))
            .then_with(|| self.den.canonical_cmp(&o.den))
    }
}

/// Horner evaluation of p at v := value.
pub fn eval_poly(p: &Poly, v: Var, value: &FieldElem) -> FieldElem {
    let coeffs = p.coeffs_in(v);
    let mut acc = FieldElem::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(value).add(&FieldElem::from_poly(c.clone()));
    }
    acc
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn wrap_num(p: &Poly) -> String {
    let s = p.to_string();
    if p.len() > 1 || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

fn wrap_den(p: &Poly) -> String {
    let s = p.to_string();
    if p.len() == 1 && p.vars().len() == 1 && !s.contains('*') {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap_num(&self.num), wrap_den(&self.den))
        }
    }
}
