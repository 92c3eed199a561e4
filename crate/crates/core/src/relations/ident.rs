//! The correlator identities of reversal, shuffle and distribution as
//! explicit combinations of tuples.

use std::fmt;

use num_traits::One;

use crate::coalg::{normalize, LinComb};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational, Scalar};
use crate::hopf::shuffle_seqs;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// cor(x0, ..., xn) - (-1)^(n+1) cor(xn, ..., x0)
    Reversal(Vec<FieldElem>),
    /// sum over (n1, n - n1)-shuffles of cor(x0, x_s(1), ..., x_s(n))
    Shuffle(Vec<FieldElem>, usize),
    /// cor(x0^N, ..., xn^N) - sum over zeta of cor(x0, z1 x1, ..., zn xn)
    Distribution(u32, Vec<FieldElem>),
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[FieldElem]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            Identity::Reversal(xs) => write!(f, "reversal({})", list(xs)),
            Identity::Shuffle(xs, n1) => write!(f, "shuffle[{n1}]({})", list(xs)),
            Identity::Distribution(n, xs) => write!(f, "distribution[{n}]({})", list(xs)),
        }
    }
}

impl Identity {
    pub fn entries(&self) -> &[FieldElem] {
        match self {
            Identity::Reversal(xs) | Identity::Shuffle(xs, _) | Identity::Distribution(_, xs) => xs,
        }
    }

    pub fn weight(&self) -> usize {
        self.entries().len() - 1
    }

    pub fn label(&self) -> &'static str {
        match self {
            Identity::Reversal(_) => "reversal",
            Identity::Shuffle(..) => "shuffle",
            Identity::Distribution(..) => "distribution",
        }
    }

    fn with_entries(&self, xs: Vec<FieldElem>) -> Identity {
        match self {
            Identity::Reversal(_) => Identity::Reversal(xs),
            Identity::Shuffle(_, k) => Identity::Shuffle(xs, *k),
            Identity::Distribution(n, _) => Identity::Distribution(*n, xs),
        }
    }

    pub fn check(&self, ctx: &Ctx) -> Result<()> {
        let n = self.weight();
        if n == 0 {
            return Err(Error::Arity("identities need at least two entries".into()));
        }
        match self {
            Identity::Shuffle(_, k) if *k == 0 || *k >= n => {
                Err(Error::Precondition(format!("shuffle split {k} must lie in 1..{n}")))
            }
            Identity::Distribution(m, _) if *m == 0 || !ctx.has_roots_of_unity(*m) => Err(Error::Unsupported(format!(
                "distribution with N = {m} needs the {m}-th roots of unity in the field context"
            ))),
            _ => Ok(()),
        }
    }

    /// The identity as a signed list of raw tuples.
    pub fn terms(&self, ctx: &Ctx) -> Result<Vec<(Rational, Vec<FieldElem>)>> {
        self.check(ctx)?;
        let one = Rational::one();
        Ok(match self {
            Identity::Reversal(xs) => {
                let n = xs.len() - 1;
                let s = if n % 2 == 1 { -one.clone() } else { one.clone() };
                vec![(one, xs.clone()), (s, xs.iter().rev().cloned().collect())]
            }
            Identity::Shuffle(xs, k) => {
                let idx: Vec<usize> = (1..xs.len()).collect();
                shuffle_seqs(&idx[..*k], &idx[*k..])
                    .into_iter()
                    .map(|p| {
                        let mut t = vec![xs[0].clone()];
                        t.extend(p.iter().map(|&i| xs[i].clone()));
                        (one.clone(), t)
                    })
                    .collect()
            }
            Identity::Distribution(m, xs) => {
                let mut out = vec![(one.clone(), xs.iter().map(|x| x.pow(*m as i64)).collect::<Result<Vec<_>>>()?)];
                let z = ctx.root_of_unity(*m)?;
                let pows: Vec<Scalar> =
                    (0..*m).map(|k| z.pow(k as i64)).collect::<Result<Vec<_>>>()?;
                let n = xs.len() - 1;
                let total = (*m as usize).pow(n as u32);
                for mut code in 0..total {
                    let mut t = vec![xs[0].clone()];
                    for x in &xs[1..] {
                        t.push(x.scale(&pows[code % *m as usize]));
                        code /= *m as usize;
                    }
                    out.push((-one.clone(), t));
                }
                out
            }
        })
    }

    pub fn element(&self, ctx: &Ctx) -> Result<LinComb> {
        let mut e = LinComb::zero(self.weight());
        for (c, t) in self.terms(ctx)? {
            e.add_scaled(&normalize(ctx, &t)?, &c);
        }
        Ok(e.refresh(ctx))
    }

    /// An equivalent instance whose entry x0 is nonzero: rotations for
    /// reversal and distribution, a translation for shuffles.
    pub fn prepared(&self) -> Option<Identity> {
        let xs = self.entries();
        if !xs[0].is_zero() {
            return Some(self.clone());
        }
        match self {
            Identity::Shuffle(..) => {
                let one = FieldElem::one();
                Some(self.with_entries(xs.iter().map(|x| x.add(&one)).collect()))
            }
            _ => {
                let r = xs.iter().position(|x| !x.is_zero())?;
                let mut ys = xs[r..].to_vec();
                ys.extend_from_slice(&xs[..r]);
                Some(self.with_entries(ys))
            }
        }
    }

    /// The same identity with x0 replaced by t * x0.
    pub fn scaled_first(&self, t: &FieldElem) -> Identity {
        let mut xs = self.entries().to_vec();
        xs[0] = xs[0].mul(t);
        self.with_entries(xs)
    }

    /// The lower-weight identities whose instances make up the legs of
    /// the cobracket of this one.
    pub fn leg_identities(&self, ctx: &Ctx) -> Result<Vec<Identity>> {
        let mut out = Vec::new();
        for (_, t) in self.terms(ctx)? {
            for leg in leg_tuples(&t) {
                if leg.len() < 3 {
                    continue;
                }
                match self {
                    Identity::Shuffle(..) => {
                        let k = leg.len();
                        for r in 0..k {
                            let rot: Vec<FieldElem> = (0..k).map(|i| leg[(r + i) % k].clone()).collect();
                            for s in 1..k - 1 {
                                out.push(Identity::Shuffle(rot.clone(), s));
                            }
                        }
                    }
                    _ => out.push(self.with_entries(leg)),
                }
            }
        }
        Ok(out)
    }
}

/// The raw tuples of both legs of every cut of the cyclic tuple.
pub fn leg_tuples(xs: &[FieldElem]) -> Vec<Vec<FieldElem>> {
    let n = xs.len() - 1;
    let at = |k: usize| xs[k % (n + 1)].clone();
    let mut out = Vec::new();
    for j in 0..=n {
        for i in 1..n {
            out.push((j..=j + i).map(at).collect());
            let mut b = vec![at(j)];
            b.extend((j + i + 1..=j + n).map(at));
            out.push(b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::cobracket;
    use crate::field::Var;

    fn v(s: &str) -> FieldElem {
        FieldElem::var(Var::new(s))
    }

    #[test]
    fn weight_two_instances_are_exact() {
        let ctx = Ctx::rational();
        let xs = vec![v("a"), v("b"), v("c")];
        for id in [Identity::Reversal(xs.clone()), Identity::Shuffle(xs.clone(), 1), Identity::Distribution(2, xs.clone())] {
            let e = id.element(&ctx).unwrap();
            assert!(cobracket(&ctx, &e).unwrap().refresh(&ctx).is_zero(), "{id}");
        }
        // (2, 1)-shuffles of three middle entries
        assert_eq!(Identity::Shuffle(vec![v("a"), v("b"), v("c"), v("d")], 2).terms(&ctx).unwrap().len(), 3);
        assert_eq!(Identity::Distribution(2, xs).terms(&ctx).unwrap().len(), 5);
    }

    #[test]
    fn weight_one_distribution() {
        let ctx = Ctx::rational();
        let e = Identity::Distribution(2, vec![v("x"), v("y")]).element(&ctx).unwrap();
        assert!(e.is_zero());
        assert!(Identity::Distribution(3, vec![v("x"), v("y")]).element(&ctx).is_err());
    }
}
