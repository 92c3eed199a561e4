use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A coefficient: a rational number or an element of Q(zeta_N) that is not rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Cyc(Cyclo),
}

/// Element of Q(zeta_N) in the power basis, reduced modulo the N-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<Rational>,
}

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, Rc<Vec<Rational>>>> = RefCell::new(HashMap::new());
}

/// Coefficients (low degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<Rational>> {
    assert!(n >= 1);
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut p: Vec<Rational> = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            let (quot, rem) = upoly_divmod(&p, &q);
            debug_assert!(rem.iter().all(|c| c.is_zero()));
            p = quot;
        }
    }
    let p = Rc::new(p);
    PHI_CACHE.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

fn upoly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn upoly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let mut b = b.to_vec();
    upoly_trim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lb;
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= t;
        }
        q[k] = c;
        upoly_trim(&mut r);
    }
    upoly_trim(&mut q);
    (q, r)
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    upoly_trim(&mut out);
    out
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    upoly_trim(&mut out);
    out
}

impl Cyclo {
    /// Builds the reduced element; collapses to a rational scalar when possible.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Scalar {
        let phi = cyclotomic_poly(order);
        let (_, mut r) = upoly_divmod(&coeffs, &phi);
        upoly_trim(&mut r);
        match r.len() {
            0 => Scalar::Rat(Rational::zero()),
            1 => Scalar::Rat(r.pop().unwrap()),
            _ => Scalar::Cyc(Cyclo { order, coeffs: r }),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn inverse(&self) -> Scalar {
        // extended Euclid: find u with u*a = 1 mod phi
        let phi = cyclotomic_poly(self.order);
        let (mut r0, mut r1) = (phi.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = upoly_divmod(&r0, &r1);
            let s2 = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since phi is irreducible
        let c = r1[0].clone();
        let u: Vec<Rational> = s1.iter().map(|x| x / &c).collect();
        Cyclo::from_coeffs(self.order, u)
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(rat(n))
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::Rat(r)
    }

    /// The generator zeta_N of Q(zeta_N).
    pub fn zeta(order: u32) -> Scalar {
        match order {
            1 => Scalar::one(),
            2 => Scalar::from_int(-1),
            _ => Cyclo::from_coeffs(order, vec![Rational::zero(), Rational::one()]),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc(_) => None,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }

    fn parts(&self) -> (Option<u32>, Vec<Rational>) {
        match self {
            Scalar::Rat(r) => (None, vec![r.clone()]),
            Scalar::Cyc(c) => (Some(c.order), c.coeffs.clone()),
        }
    }

    fn common_order(a: Option<u32>, b: Option<u32>) -> u32 {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixing different cyclotomic extensions");
                x
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, o) {
            return Scalar::Rat(a + b);
        }
        let (oa, ca) = self.parts();
        let (ob, cb) = o.parts();
        let n = Scalar::common_order(oa, ob);
        let len = ca.len().max(cb.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let x = ca.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = cb.get(i).cloned().unwrap_or_else(Rational::zero);
            out.push(x + y);
        }
        Cyclo::from_coeffs(n, out)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(Cyclo { order: c.order, coeffs: c.coeffs.iter().map(|x| -x).collect() }),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc(c)) | (Scalar::Cyc(c), Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc(Cyclo { order: c.order, coeffs: c.coeffs.iter().map(|x| x * a).collect() })
            }
            (Scalar::Cyc(x), Scalar::Cyc(y)) => {
                let n = Scalar::common_order(Some(x.order), Some(y.order));
                Cyclo::from_coeffs(n, upoly_mul(&x.coeffs, &y.coeffs))
            }
        }
    }

    pub fn mul_rat(&self, r: &Rational) -> Scalar {
        self.mul(&Scalar::Rat(r.clone()))
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Cyc(c) => Ok(c.inverse()),
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Positive rational c with self / c having coprime integer coordinates.
    pub fn content(&self) -> Rational {
        let coeffs = match self {
            Scalar::Rat(r) => return r.abs(),
            Scalar::Cyc(c) => &c.coeffs,
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rational::new(num, den)
    }

    /// Multiplies by zeta_N^k.
    pub fn mul_zeta_pow(&self, order: u32, k: u32) -> Scalar {
        if order <= 2 {
            return if order == 2 && k % 2 == 1 { self.neg() } else { self.clone() };
        }
        let mut shifted = vec![Rational::zero(); k as usize];
        shifted.extend(self.parts().1);
        Cyclo::from_coeffs(order, shifted)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Cyc(_)) => Ordering::Less,
            (Scalar::Cyc(_), Scalar::Rat(_)) => Ordering::Greater,
            (Scalar::Cyc(a), Scalar::Cyc(b)) => {
                a.order.cmp(&b.order).then_with(|| a.coeffs.len().cmp(&b.coeffs.len())).then_with(|| a.coeffs.cmp(&b.coeffs))
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Cyc(c) => {
                write!(f, "(")?;
                let mut first = true;
                for (i, x) in c.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let s = fmt_rational(x);
                    if !first && !x.is_negative() {
                        write!(f, "+")?;
                    }
                    match i {
                        0 => write!(f, "{s}")?,
                        _ => {
                            let z = if i == 1 { "zeta".to_string() } else { format!("zeta^{i}") };
                            if x.is_one() {
                                write!(f, "{z}")?
                            } else if (-x).is_one() {
                                write!(f, "-{z}")?
                            } else {
                                write!(f, "{s}*{z}")?
                            }
                        }
                    }
                    first = false;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_poly(6);
        assert_eq!(*p, vec![rat(1), rat(-1), rat(1)]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn zeta_arithmetic() {
        let z = Scalar::zeta(4);
        let m1 = z.mul(&z);
        assert_eq!(m1, Scalar::from_int(-1));
        let z3 = Scalar::zeta(3);
        // 1 + z + z^2 = 0
        let s = Scalar::one().add(&z3).add(&z3.mul(&z3));
        assert!(s.is_zero());
        let a = Scalar::from_int(2).add(&z3);
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn content_of_cyclo() {
        let z = Scalar::zeta(5);
        let a = z.mul_rat(&rat_frac(2, 3)).add(&Scalar::Rat(rat_frac(4, 9)));
        assert_eq!(a.content(), rat_frac(2, 9));
    }
}
