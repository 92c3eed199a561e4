//! Multivariate gcd by recursive primitive remainder sequences.

use super::poly::{Poly, Var};

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic().1;
    }
    if b.is_zero() {
        return a.monic().1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic().1;
    }
    let v = match a.vars().union(&b.vars()).next() {
        Some(v) => *v,
        None => return Poly::one(),
    };
    let (ac, ap) = split_content(a, v);
    let (bc, bp) = split_content(b, v);
    let c = gcd(&ac, &bc);
    let g = if ap.is_constant() || bp.is_constant() { Poly::one() } else { prs(ap, bp, v) };
    c.mul(&g).monic().1
}

fn content_in(p: &Poly, v: Var) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// p = content * primitive part with respect to v.
fn split_content(p: &Poly, v: Var) -> (Poly, Poly) {
    if !p.contains_var(v) {
        return (p.clone(), Poly::one());
    }
    let c = content_in(p, v);
    if c.is_one() {
        return (Poly::one(), p.monic().1);
    }
    let pp = p.div_exact(&c).expect("content divides");
    (c, pp.monic().1)
}

fn pseudo_rem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let m = b.degree_in(v);
    let lb = b.lead_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.contains_var(v) && r.degree_in(v) >= m {
        let d = r.degree_in(v);
        let lr = r.lead_in(v);
        let shift = Poly::from_coeffs_in(v, &{
            let mut c = vec![Poly::zero(); (d - m) as usize + 1];
            c[(d - m) as usize] = lr;
            c
        });
        r = r.mul(&lb).sub(&shift.mul(b));
    }
    r
}

fn prs(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return split_content(&b, v).1;
        }
        if !r.contains_var(v) {
            return Poly::one();
        }
        a = b;
        b = split_content(&r, v).1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::scalar::Scalar;

    fn v(n: &str) -> Poly {
        Poly::var(Var::new(n))
    }

    #[test]
    fn univariate_euclid() {
        let t = v("t");
        let a = t.pow(2).sub(&Poly::one());
        let b = t.add(&Poly::one());
        assert_eq!(gcd(&a, &b), b);
        let c = t.pow(3).sub(&t);
        assert_eq!(gcd(&a, &c), a);
    }

    #[test]
    fn multivariate_common_factor() {
        let (s, t) = (v("s"), v("t"));
        let g = s.mul(&t).add(&Poly::one());
        let a = g.mul(&s.sub(&t));
        let b = g.mul(&s.add(&t.pow(2))).scale(&Scalar::from_int(3));
        assert_eq!(gcd(&a, &b), g);
        assert!(gcd(&s.sub(&t), &s.add(&t)).is_one());
    }

    #[test]
    fn content_only_gcd() {
        let (s, t) = (v("s"), v("t"));
        let a = s.mul(&t.add(&Poly::one()));
        let b = s.mul(&t.sub(&Poly::one()));
        assert_eq!(gcd(&a, &b), s);
    }
}
