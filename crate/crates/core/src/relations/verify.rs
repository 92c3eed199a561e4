//! Verifiers for the named identities of correlators and of the
//! dilogarithm. Each returns a certificate; a missing certificate is an
//! honest "not shown", never a claim of nonvanishing.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};


use crate::coalg::{cobracket, LinComb, Wedge};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational};
use crate::hopf::{li_to_lie, LiSym};

use super::bloch::{anharmonic, bloch_delta, class_support, five_term, map_l2, map_m2, BlochElem, FiveTermSpan};
use super::db::RelationDB;
use super::ident::Identity;
use super::seed::log_legs;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub identity: String,
    pub certified: bool,
    pub method: String,
    pub details: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(identity: impl Into<String>, certified: bool, method: impl Into<String>) -> Certificate {
        Certificate { identity: identity.into(), certified, method: method.into(), details: Vec::new() }
    }

    pub fn with(mut self, k: &str, v: impl ToString) -> Certificate {
        self.details.push((k.to_string(), v.to_string()));
        self
    }

    pub fn detail(&self, k: &str) -> Option<&str> {
        self.details.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.certified { "certified" } else { "not certified" };
        write!(f, "{}: {verdict} ({})", self.identity, self.method)?;
        for (k, v) in &self.details {
            write!(f, "\n  {k} = {v}")?;
        }
        Ok(())
    }
}

/// The five-term combination, with its cobracket computed exactly over
/// the coprime factor base.
pub fn verify_five_term(ctx: &Ctx, a: &FieldElem, b: &FieldElem) -> Result<Certificate> {
    let r = five_term(a, b)?;
    let e = map_l2(ctx, &r)?;
    let d = cobracket(ctx, &e)?.refresh(ctx);
    Ok(Certificate::new(format!("five-term({a}, {b})"), d.is_zero(), "exact")
        .with("terms", e.len())
        .with("bloch_delta_zero", bloch_delta(ctx, &r)?.is_zero()))
}

/// Cobracket certificate of a correlator identity against the database.
/// Weight one is checked exactly on the element itself. Call
/// `seed::prepare` first so that the leg instances are present.
pub fn verify_identity(db: &RelationDB, id: &Identity) -> Result<Certificate> {
    let e = id.element(db.ctx())?;
    let name = id.to_string();
    if id.weight() == 1 {
        return Ok(Certificate::new(name, e.is_zero(), "exact").with("weight", 1));
    }
    let exact = cobracket(db.ctx(), &e)?.refresh(db.ctx()).is_zero();
    let ok = exact || db.certify(&e)?;
    let method = if exact { "exact" } else { "modulo db" };
    Ok(Certificate::new(name, ok, method)
        .with("weight", id.weight())
        .with("terms", e.len())
        .with("in_db", db.contains(&e))
        .with("db_rank", db.rank(id.weight() - 1)))
}

pub fn verify_shuffle(db: &RelationDB, xs: &[FieldElem], n1: usize) -> Result<Certificate> {
    verify_identity(db, &Identity::Shuffle(xs.to_vec(), n1))
}

pub fn verify_reversal(db: &RelationDB, xs: &[FieldElem]) -> Result<Certificate> {
    verify_identity(db, &Identity::Reversal(xs.to_vec()))
}

pub fn verify_distribution(db: &RelationDB, n: u32, xs: &[FieldElem]) -> Result<Certificate> {
    if n == 1 {
        return Ok(Certificate::new(format!("distribution[1]({} entries)", xs.len()), true, "trivial"));
    }
    verify_identity(db, &Identity::Distribution(n, xs.to_vec()))
}

/// Search bounds for the second stage of the 22-term check.
#[derive(Clone, Debug)]
pub struct Budget {
    /// 1: anharmonic images of the arguments; 2: also their pairwise
    /// products and ratios.
    pub degree: u32,
    pub time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { degree: 2, time: Duration::from_secs(10) }
    }
}

fn e(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

/// The arguments of the 22-term relation with their coefficients, in
/// the order of the rows of the formula.
pub fn twenty_two_terms(a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Result<Vec<(i64, FieldElem)>> {
    let one = FieldElem::one();
    let name = |p: &FieldElem, q: &FieldElem, r: &str| (p.mul(q).sub(q).add(&one), r.to_string());
    // ca - a + 1, ab - b + 1, bc - c + 1
    let (ua, na) = name(c, a, "ca - a + 1");
    let (ub, nb) = name(a, b, "ab - b + 1");
    let (uc, nc) = name(b, c, "bc - c + 1");
    for (x, n) in [(a, "a"), (b, "b"), (c, "c"), (&ua, na.as_str()), (&ub, nb.as_str()), (&uc, nc.as_str())] {
        if x.is_zero() {
            return Err(Error::Precondition(format!("{n} = 0")));
        }
    }
    let d = |p: &FieldElem, q: FieldElem| p.div(&q);
    let rows: Vec<(i64, FieldElem)> = vec![
        (1, ua.clone()),
        (1, ub.clone()),
        (1, uc.clone()),
        (1, d(&ua, c.mul(a))?),
        (1, d(&ub, a.mul(b))?),
        (1, d(&uc, b.mul(c))?),
        (1, d(&uc, ua.mul(b))?),
        (1, d(&ua, ub.mul(c))?),
        (1, d(&ub, uc.mul(a))?),
        (-1, d(&ua, c.clone())?),
        (-1, d(&ub, a.clone())?),
        (-1, d(&uc, b.clone())?),
        (1, d(&uc.mul(a), ua.clone())?.neg()),
        (1, d(&ua.mul(b), ub.clone())?.neg()),
        (1, d(&ub.mul(c), uc.clone())?.neg()),
        (-1, d(&uc, ua.mul(b).mul(c))?),
        (-1, d(&ua, ub.mul(c).mul(a))?),
        (-1, d(&ub, uc.mul(a).mul(b))?),
        (1, a.clone()),
        (1, b.clone()),
        (1, c.clone()),
        (1, a.mul(b).mul(c).neg()),
        (-3, e(1)),
    ];
    Ok(rows)
}

/// Li3 applied to the 22-term element.
pub fn twenty_two_element(ctx: &Ctx, a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Result<LinComb> {
    let mut out = LinComb::zero(3);
    for (k, u) in twenty_two_terms(a, b, c)? {
        let li = li_to_lie(ctx, &LiSym::new(0, vec![3], vec![u])?)?;
        out.add_scaled(&li, &Rational::from_integer(k.into()));
    }
    Ok(out)
}

/// The B2 (x) F^x image of a weight-3 element: its cobracket split by the
/// weight-one leg, each weight-two part sent through M2.
pub fn bloch_legs(ctx: &Ctx, e: &LinComb) -> Result<Vec<BlochElem>> {
    let w: Wedge = cobracket(ctx, e)?.refresh(ctx);
    log_legs(&w).iter().map(map_m2).collect()
}

/// Tries to write every leg as a combination of five-term instances,
/// modulo the anharmonic relations. Candidates R2(x, y) run over pairs of
/// anharmonic images of the leg arguments (degree 1), then over pairs
/// from their products and ratios (degree 2); an instance is kept when at
/// most one of its classes lies outside those of the legs. Returns the
/// number of legs shown, instances kept, the rank and whether time ran out.
pub fn five_term_search(legs: &[BlochElem], budget: &Budget) -> Result<(usize, usize, usize, bool)> {
    let start = Instant::now();
    let mut args: BTreeSet<FieldElem> = BTreeSet::new();
    let mut known: BTreeSet<FieldElem> = BTreeSet::new();
    for l in legs {
        args.extend(l.iter().map(|(x, _)| x.clone()));
        known.extend(class_support(l)?);
    }
    let mut pools: Vec<Vec<FieldElem>> = Vec::new();
    let mut first = BTreeSet::new();
    for x in &args {
        first.extend(anharmonic(x)?);
    }
    pools.push(first.iter().cloned().collect());
    if budget.degree >= 2 {
        let mut more = BTreeSet::new();
        for x in &args {
            for y in &args {
                more.insert(x.mul(y));
                if x != y {
                    more.insert(x.div(y)?);
                }
            }
        }
        more.retain(|z| !z.is_zero() && !z.is_one() && !first.contains(z));
        let mut pool = pools[0].clone();
        pool.extend(more);
        pools.push(pool);
    }
    let mut span = FiveTermSpan::new();
    let mut tried = BTreeSet::new();
    let shown = |span: &FiveTermSpan| -> Result<usize> {
        let mut n = 0;
        for l in legs {
            n += usize::from(span.contains(l)?);
        }
        Ok(n)
    };
    let mut timed_out = false;
    'outer: for pool in &pools {
        for x in pool {
            for y in pool {
                if x == y || !tried.insert((x.clone(), y.clone())) {
                    continue;
                }
                if start.elapsed() > budget.time {
                    timed_out = true;
                    break 'outer;
                }
                let Some(v) = FiveTermSpan::instance(x, y) else { continue };
                if v.keys().filter(|k| !known.contains(*k)).count() <= 1 && span.insert(&v) && shown(&span)? == legs.len() {
                    break 'outer;
                }
            }
        }
    }
    Ok((shown(&span)?, span.instances, span.rank(), timed_out))
}

/// Stage 1: the composite differential of the 22-term element vanishes
/// exactly in (wedge^2 F^x) (x) F^x. Stage 2: each B2 leg is searched for
/// as a combination of five-term instances.
pub fn verify_22_term(ctx: &Ctx, a: &FieldElem, b: &FieldElem, c: &FieldElem, budget: Option<&Budget>) -> Result<Certificate> {
    let el = twenty_two_element(ctx, a, b, c)?;
    let legs = bloch_legs(ctx, &el)?;
    let mut stage1 = true;
    for l in &legs {
        if !bloch_delta(ctx, l)?.is_zero() {
            stage1 = false;
        }
    }
    let mut cert = Certificate::new(format!("twenty-two({a}, {b}, {c})"), stage1, "stage 1 exact")
        .with("stage1", if stage1 { "zero" } else { "nonzero" })
        .with("legs", legs.len());
    if let Some(budget) = budget {
        let nonzero: Vec<BlochElem> = legs.into_iter().filter(|l| !l.is_zero()).collect();
        let (shown, tried, rank, timed_out) = five_term_search(&nonzero, budget)?;
        let verdict = if shown == nonzero.len() { "certified" } else { "not certified" };
        cert = cert
            .with("stage2", verdict)
            .with("stage2_legs_shown", format!("{shown}/{}", nonzero.len()))
            .with("stage2_instances", tried)
            .with("stage2_rank", rank)
            .with("stage2_timed_out", timed_out);
    }
    Ok(cert)
}

/// M2(L2(x)) as a B2 element.
pub fn m2_l2(ctx: &Ctx, x: &BlochElem) -> Result<BlochElem> {
    map_m2(&map_l2(ctx, x)?)
}
