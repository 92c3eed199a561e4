use num_traits::One;

use crate::error::Result;
use crate::field::{Ctx, FieldElem, Rational};

use super::lincomb::{LinComb, Tensor3, Wedge};
use super::symbol::{normalize, Gen};

/// The cut terms of one symbol: sum over j and i of
/// ((x_j, ..., x_{j+i})) ^ ((x_j, x_{j+i+1}, ..., x_{j+n})), indices mod n + 1.
pub fn cobracket_tuple(ctx: &Ctx, xs: &[FieldElem], out: &mut Wedge, c: &Rational) -> Result<()> {
    let m = xs.len();
    let n = m - 1;
    if n < 2 {
        return Ok(());
    }
    for j in 0..m {
        for i in 1..n {
            let left: Vec<FieldElem> = (0..=i).map(|k| xs[(j + k) % m].clone()).collect();
            let mut right = vec![xs[j].clone()];
            right.extend((i + 1..=n).map(|k| xs[(j + k) % m].clone()));
            let l = normalize(ctx, &left)?;
            if l.is_zero() {
                continue;
            }
            let r = normalize(ctx, &right)?;
            out.add_wedge(&l, &r, c);
        }
    }
    Ok(())
}

/// delta(e); weight-one input gives zero.
pub fn cobracket(ctx: &Ctx, e: &LinComb) -> Result<Wedge> {
    let mut out = Wedge::zero();
    for (g, c) in e.iter() {
        if let Gen::Cor(s) = g {
            cobracket_tuple(ctx, s.entries(), &mut out, c)?;
        }
    }
    Ok(out.refresh(ctx))
}

/// delta without the L_1 ^ L_{n-1} part.
pub fn truncated_cobracket(ctx: &Ctx, e: &LinComb) -> Result<Wedge> {
    Ok(cobracket(ctx, e)?.without_weight_one())
}

/// (1 + eta + eta^2)(1 (x) delta) delta(e) in the triple tensor power.
pub fn cojacobi(ctx: &Ctx, e: &LinComb) -> Result<Tensor3> {
    let d = cobracket(ctx, e)?;
    let mut t = Tensor3::default();
    let mut push = |a: &Gen, b: &Gen, c: &Rational| -> Result<()> {
        // a (x) delta(b)
        let db = cobracket(ctx, &LinComb::single(b.clone(), Rational::one()))?;
        for ((p, q), x) in db.iter() {
            t.add_term((a.clone(), p.clone(), q.clone()), c * x);
            t.add_term((a.clone(), q.clone(), p.clone()), -(c * x));
        }
        Ok(())
    };
    for ((a, b), c) in d.iter() {
        // a ^ b = a (x) b - b (x) a
        push(a, b, c)?;
        push(b, a, &-c)?;
    }
    let t = t.refresh(ctx);
    Ok(t.add(&t.rotated()).add(&t.rotated().rotated()))
}
