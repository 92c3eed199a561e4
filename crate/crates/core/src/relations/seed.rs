//! Deriving relations: structured derivations of correlator identities,
//! elimination of variables in weight two, and the standard seed.

use std::collections::HashSet;

use crate::coalg::{cobracket, normalize, Gen, LinComb};
use crate::error::{Error, Result};
use crate::field::{Center, FieldElem, Rational, Var};
use crate::special::{specialize, SpecPoint};

use super::db::RelationDB;
use super::ident::Identity;

/// Li2^L(x) = -cor(1, 0, x); zero for x in {0, 1} is handled by normalize.
pub fn li2(db: &RelationDB, x: &FieldElem) -> Result<LinComb> {
    Ok(normalize(db.ctx(), &[FieldElem::one(), FieldElem::zero(), x.clone()])?.neg())
}

/// Derives an identity as Sp_{t->1} R - Sp_{t->inf} R for R the instance
/// with x0 replaced by t x0, after making sure that the lower-weight
/// instances needed by the certificate and the coideal check are present.
pub fn derive_identity(db: &mut RelationDB, id: &Identity) -> Result<LinComb> {
    let mut seen = HashSet::new();
    derive_rec(db, id, &mut seen)
}

/// Derives the lower-weight instances making up the cobracket of the
/// identity, so that it can be certified against the database.
pub fn prepare(db: &mut RelationDB, id: &Identity) -> Result<()> {
    let Some(id) = id.prepared() else { return Ok(()) };
    if id.weight() >= 3 && !db.certify(&id.element(db.ctx())?)? {
        let mut seen = HashSet::new();
        ensure_legs(db, &id, &mut seen)?;
    }
    Ok(())
}

fn ensure_legs(db: &mut RelationDB, id: &Identity, seen: &mut HashSet<LinComb>) -> Result<()> {
    for sub in id.leg_identities(db.ctx())? {
        derive_rec(db, &sub, seen)?;
    }
    Ok(())
}

fn derive_rec(db: &mut RelationDB, id: &Identity, seen: &mut HashSet<LinComb>) -> Result<LinComb> {
    let Some(id) = id.prepared() else { return Ok(LinComb::zero(id.weight())) };
    let target = id.element(db.ctx())?;
    if target.is_zero() || db.contains(&target) || !seen.insert(target.clone()) {
        return Ok(target);
    }
    if id.weight() >= 3 && !db.certify(&target)? {
        ensure_legs(db, &id, seen)?;
    }
    let t = db.fresh_var();
    let fam_id = id.scaled_first(&FieldElem::var(t));
    let family = fam_id.element(db.ctx())?;
    if family.weight() >= 3 && !db.certify(&family)? {
        ensure_legs(db, &fam_id, seen)?;
    }
    db.derive(id.label(), &family, t, Center::Finite(FieldElem::one()), Center::Infinity)
}

fn substitute_comb(db: &RelationDB, e: &LinComb, v: Var, x: &FieldElem) -> Result<LinComb> {
    e.map(|g| {
        let xs: Vec<FieldElem> = g.entries().iter().map(|y| y.substitute(v, x)).collect::<Result<_>>()?;
        normalize(db.ctx(), &xs)
    })
}

fn vars_of(e: &LinComb) -> Vec<Var> {
    let mut vs: Vec<Var> = e.iter().flat_map(|(g, _)| g.entries()).flat_map(|x| x.vars()).collect();
    vs.sort();
    vs.dedup();
    vs
}

const CENTERS: [(i64, i64); 5] = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)];

fn centers() -> Vec<Center> {
    let mut out: Vec<Center> =
        CENTERS.iter().map(|&(p, q)| Center::Finite(FieldElem::from_rational(Rational::new(p.into(), q.into())))).collect();
    out.insert(1, Center::Infinity);
    out
}

fn closed(db: &mut RelationDB, e: &LinComb) -> Result<bool> {
    if e.weight() <= 2 {
        db.certify(e)
    } else {
        certify_with_elimination(db, e)
    }
}

/// Moves an element with vanishing cobracket into the database one
/// variable at a time, through Y(v) - Y(c) for the family Y(t) and a
/// constant c chosen to leave the smallest remainder. Weights two and
/// three; in weight three the legs are eliminated first. Returns whether
/// y ends up in the span.
pub fn eliminate(db: &mut RelationDB, y: &LinComb) -> Result<bool> {
    if !(2..=3).contains(&y.weight()) {
        return Err(Error::Precondition("variable elimination works in weights 2 and 3".into()));
    }
    let mut cur = db.reduce(y);
    while !cur.is_zero() {
        if !closed(db, &cur)? {
            return Ok(false);
        }
        let Some(&v) = vars_of(&cur).iter().max() else { return Ok(false) };
        let t = db.fresh_var();
        let family = substitute_comb(db, &cur, v, &FieldElem::var(t))?;
        if !closed(db, &family)? {
            return Ok(false);
        }
        let mut best: Option<(Center, LinComb)> = None;
        for c in centers() {
            let Ok(p) = SpecPoint::new(t, c.clone()) else { continue };
            let rest = db.reduce(&specialize(db.ctx(), &family, &p)?.refresh(db.ctx()));
            let better = match &best {
                None => true,
                Some((_, b)) => (vars_of(&rest).len(), rest.len()) < (vars_of(b).len(), b.len()),
            };
            if better {
                best = Some((c, rest));
            }
        }
        let (c, _) = best.expect("some center");
        db.derive("elimination", &family, t, Center::Finite(FieldElem::var(v)), c)?;
        let next = db.reduce(&cur);
        if next == cur {
            return Ok(false);
        }
        cur = next;
    }
    Ok(true)
}

/// The L_{n-1} ^ L_1 part of a wedge, split by the weight-one leg.
pub fn log_legs(w: &crate::coalg::Wedge) -> Vec<LinComb> {
    let mut by_key: std::collections::BTreeMap<Gen, LinComb> = std::collections::BTreeMap::new();
    for ((a, b), c) in w.iter() {
        let (l, g, c) = match (a, b) {
            (Gen::Log(_), Gen::Cor(_)) => (a, b, -c.clone()),
            (Gen::Cor(_), Gen::Log(_)) => (b, a, c.clone()),
            _ => continue,
        };
        by_key.entry(l.clone()).or_insert_with(|| LinComb::zero(g.weight())).add_term(g.clone(), c);
    }
    by_key.into_values().collect()
}

/// Certificate for a weight-3 element, deriving the weight-2 legs by
/// variable elimination where the database does not yet contain them.
pub fn certify_with_elimination(db: &mut RelationDB, e: &LinComb) -> Result<bool> {
    if db.certify(e)? {
        return Ok(true);
    }
    if e.weight() != 3 {
        return Ok(false);
    }
    let w = db.reduce_wedge(&cobracket(db.ctx(), e)?);
    for y in log_legs(&w) {
        eliminate(db, &y)?;
    }
    db.certify(e)
}

/// The standard seed: duplication, reflection and inversion in weight 2,
/// the rational constants they imply, then weight-2 and weight-3
/// instances of shuffle and reversal over generic variables.
pub fn seed(db: &mut RelationDB) -> Result<()> {
    let ctx_one = FieldElem::one();
    let c = |n: i64| FieldElem::from_int(n);
    let var = |s: &str| FieldElem::var(Var::new(s));

    // duplication: Li2(t^2) - 2 Li2(t) - 2 Li2(-t), from 0 to 1
    let t = db.fresh_var();
    let tv = FieldElem::var(t);
    let dup = li2(db, &tv.pow(2)?)?.sub(&li2(db, &tv)?.scale(&Rational::from_integer(2.into()))).sub(
        &li2(db, &tv.neg())?.scale(&Rational::from_integer(2.into())),
    );
    db.derive("duplication", &dup, t, Center::Finite(c(0)), Center::Finite(ctx_one.clone()))?;

    // reflection: Li2(t) + Li2(1 - t), from s to 0
    let t = db.fresh_var();
    let tv = FieldElem::var(t);
    let refl = li2(db, &tv)?.add(&li2(db, &ctx_one.sub(&tv))?);
    db.derive("reflection", &refl, t, Center::Finite(var("s")), Center::Finite(c(0)))?;
    for q in [c(2), FieldElem::from_rational(Rational::new(1.into(), 2.into()))] {
        db.derive("reflection", &refl, t, Center::Finite(q), Center::Finite(c(0)))?;
    }

    // inversion: Li2(t) + Li2(1/t), from x to 1
    let t = db.fresh_var();
    let tv = FieldElem::var(t);
    let inv = li2(db, &tv)?.add(&li2(db, &tv.inv()?)?);
    db.derive("inversion", &inv, t, Center::Finite(var("x")), Center::Finite(ctx_one.clone()))?;
    // with duplication this puts Li2(1) and Li2(-1) themselves in R_2
    db.derive("inversion", &inv, t, Center::Finite(c(-1)), Center::Finite(ctx_one.clone()))?;

    let (x0, x1, x2, x3) = (var("x0"), var("x1"), var("x2"), var("x3"));
    derive_identity(db, &Identity::Shuffle(vec![x0.clone(), x1.clone(), x2.clone()], 1))?;
    derive_identity(db, &Identity::Reversal(vec![x0.clone(), x1.clone(), x2.clone()]))?;
    let four = vec![x0, x1, x2, x3];
    for k in 1..3 {
        derive_identity(db, &Identity::Shuffle(four.clone(), k))?;
    }
    derive_identity(db, &Identity::Reversal(four))?;
    Ok(())
}
