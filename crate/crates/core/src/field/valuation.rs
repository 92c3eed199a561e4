use std::fmt;

use super::elem::{eval_poly, FieldElem};
use super::poly::{Poly, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Center {
    Finite(FieldElem),
    Infinity,
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Finite(a) => write!(f, "{a}"),
            Center::Infinity => write!(f, "inf"),
        }
    }
}

/// The valuation nu_a on F(t) for a center a in F or infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Valuation {
    var: Var,
    center: Center,
    // q*t - p for a finite center a = p/q
    linear: Option<Poly>,
    // q, the denominator of the center
    center_den: Poly,
}

impl Valuation {
    pub fn new(var: Var, center: Center) -> Result<Valuation> {
        match &center {
            Center::Infinity => Ok(Valuation { var, center, linear: None, center_den: Poly::one() }),
            Center::Finite(a) => {
                if a.contains_var(var) {
                    return Err(Error::Precondition(format!("center {a} involves the variable {var}")));
                }
                let lin = Poly::var(var).mul(a.den()).sub(a.num());
                Ok(Valuation { var, center: center.clone(), linear: Some(lin), center_den: a.den().clone() })
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    fn poly_order(&self, p: &Poly) -> (u32, Poly) {
        let lin = self.linear.as_ref().expect("finite center");
        let mut k = 0;
        let mut q = p.clone();
        if lin.len() == 1 {
            // center 0: count the common power of t
            let e = p.terms().map(|(m, _)| m.degree_in(self.var)).min().unwrap_or(0);
            if e > 0 {
                q = p.div_exact(&Poly::var(self.var).pow(e)).expect("monomial divides");
            }
            return (e, q);
        }
        while let Some(r) = q.div_exact(lin) {
            q = r;
            k += 1;
        }
        (k, q)
    }

    /// nu(f), or None for f = 0.
    pub fn value(&self, f: &FieldElem) -> Option<i64> {
        if f.is_zero() {
            return None;
        }
        if !f.contains_var(self.var) {
            return Some(0);
        }
        Some(match self.center {
            Center::Infinity => f.den().degree_in(self.var) as i64 - f.num().degree_in(self.var) as i64,
            Center::Finite(_) => self.poly_order(f.num()).0 as i64 - self.poly_order(f.den()).0 as i64,
        })
    }

    /// nu(f) together with the residue of f / pi^nu(f) for pi = t - a (or 1/t).
    pub fn leading(&self, f: &FieldElem) -> Result<(i64, FieldElem)> {
        if f.is_zero() {
            return Err(Error::ZeroWord);
        }
        if !f.contains_var(self.var) {
            return Ok((0, f.clone()));
        }
        match &self.center {
            Center::Infinity => {
                let v = f.den().degree_in(self.var) as i64 - f.num().degree_in(self.var) as i64;
                let r = FieldElem::new(f.num().lead_in(self.var), f.den().lead_in(self.var))?;
                Ok((v, r))
            }
            Center::Finite(a) => {
                let (kn, n) = self.poly_order(f.num());
                let (kd, d) = self.poly_order(f.den());
                let v = kn as i64 - kd as i64;
                // (q t - p) = q (t - a)
                let r = eval_poly(&n, self.var, a).div(&eval_poly(&d, self.var, a))?;
                let q = FieldElem::from_poly(self.center_den.clone());
                Ok((v, r.mul(&q.pow(v)?)))
            }
        }
    }

    pub fn residue(&self, f: &FieldElem) -> Result<FieldElem> {
        match self.value(f) {
            None => Ok(FieldElem::zero()),
            Some(v) if v < 0 => Err(Error::NegativeValuation(v)),
            Some(v) if v > 0 => Ok(FieldElem::zero()),
            Some(_) => Ok(self.leading(f)?.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::scalar::Scalar;

    fn t() -> FieldElem {
        FieldElem::var(Var::new("t"))
    }

    fn at(c: i64) -> Valuation {
        Valuation::new(Var::new("t"), Center::Finite(FieldElem::from_int(c))).unwrap()
    }

    fn inf() -> Valuation {
        Valuation::new(Var::new("t"), Center::Infinity).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(at(0).value(&t().pow(2).unwrap()), Some(2));
        let f = t().div(&t().sub(&FieldElem::one())).unwrap();
        assert_eq!(at(1).value(&f), Some(-1));
        assert_eq!(inf().value(&t()), Some(-1));
        assert_eq!(at(3).value(&FieldElem::zero()), None);
    }

    #[test]
    fn residues() {
        let s = FieldElem::var(Var::new("s"));
        assert_eq!(at(0).residue(&t().add(&FieldElem::from_int(3))).unwrap(), FieldElem::from_int(3));
        let f = t().pow(2).unwrap().add(&s).div(&t().add(&FieldElem::one())).unwrap();
        let expect = s.add(&FieldElem::one()).scale(&Scalar::Rat(crate::field::scalar::rat_frac(1, 2)));
        assert_eq!(at(1).residue(&f).unwrap(), expect);
        let g = t().scale(&Scalar::from_int(2)).add(&FieldElem::one()).div(&t()).unwrap();
        assert_eq!(inf().residue(&g).unwrap(), FieldElem::from_int(2));
        assert!(matches!(at(0).residue(&t().inv().unwrap()), Err(Error::NegativeValuation(-1))));
    }

    #[test]
    fn rational_center_uses_true_uniformizer() {
        // f = 2t - 1 at a = 1/2: f = 2 (t - 1/2), unit residue 2
        let v = Valuation::new(Var::new("t"), Center::Finite(FieldElem::from_rational(crate::field::scalar::rat_frac(1, 2)))).unwrap();
        let f = t().scale(&Scalar::from_int(2)).sub(&FieldElem::one());
        assert_eq!(v.leading(&f).unwrap(), (1, FieldElem::from_int(2)));
    }
}
