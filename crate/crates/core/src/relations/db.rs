//! The relation database: derived generators of R_n, their echelon forms,
//! and a replayable text format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cli::{parse_elem, parse_lie, Env};
use crate::coalg::{cobracket, LinComb, Wedge};
use crate::error::{Error, Result};
use crate::field::{Center, Ctx, FieldElem, Rational, Var};
use crate::special::{specialize, SpecPoint};

use super::linalg::Echelon;

pub const FORMAT_VERSION: u32 = 1;

/// A derived generator Sp_{var -> from} family - Sp_{var -> to} family.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub label: String,
    pub family: LinComb,
    pub var: Var,
    pub from: Center,
    pub to: Center,
    pub element: LinComb,
}

impl Record {
    pub fn weight(&self) -> usize {
        self.element.weight()
    }
}

#[derive(Debug)]
pub struct RelationDB {
    ctx: Ctx,
    records: Vec<Record>,
    ech: BTreeMap<usize, Echelon>,
    fresh: usize,
}

impl RelationDB {
    pub fn new(ctx: Ctx) -> RelationDB {
        RelationDB { ctx, records: Vec::new(), ech: BTreeMap::new(), fresh: 0 }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn rank(&self, weight: usize) -> usize {
        self.ech.get(&weight).map_or(0, Echelon::rank)
    }

    /// A variable name not used by any family so far.
    pub fn fresh_var(&mut self) -> Var {
        self.fresh += 1;
        Var::new(&format!("_t{}", self.fresh))
    }

    /// Canonical residue modulo the stored generators. Weight-one
    /// combinations are already exact and are only re-expressed.
    pub fn reduce(&self, e: &LinComb) -> LinComb {
        if e.weight() <= 1 {
            return e.refresh(&self.ctx);
        }
        match self.ech.get(&e.weight()) {
            Some(m) => m.reduce_comb(e),
            None => e.clone(),
        }
    }

    pub fn contains(&self, e: &LinComb) -> bool {
        self.reduce(e).is_zero()
    }

    /// (rho ^ rho)(w) for the reduction map rho.
    pub fn reduce_wedge(&self, w: &Wedge) -> Wedge {
        w.map(|g| Ok::<_, ()>(self.reduce(&LinComb::single(g.clone(), Rational::from_integer(1.into())))))
            .expect("infallible")
    }

    /// True only if every component of w is certified zero.
    pub fn wedge_is_zero(&self, w: &Wedge) -> bool {
        self.reduce_wedge(w).is_zero()
    }

    /// Certificate that the cobracket of e vanishes modulo the database.
    pub fn certify(&self, e: &LinComb) -> Result<bool> {
        if e.weight() <= 1 {
            return Ok(true);
        }
        Ok(self.wedge_is_zero(&cobracket(&self.ctx, e)?))
    }

    fn insert(&mut self, r: Record) {
        let w = r.weight();
        if w >= 2 {
            self.ech.entry(w).or_default().insert_comb(&r.element);
        }
        if let Some(k) = fresh_index(r.var) {
            self.fresh = self.fresh.max(k);
        }
        self.records.push(r);
    }

    fn specialized(&self, family: &LinComb, var: Var, from: &Center, to: &Center) -> Result<LinComb> {
        let a = specialize(&self.ctx, family, &SpecPoint::new(var, from.clone())?)?;
        let b = specialize(&self.ctx, family, &SpecPoint::new(var, to.clone())?)?;
        Ok(a.sub(&b).refresh(&self.ctx))
    }

    /// Derives Sp_{var -> from} family - Sp_{var -> to} family. The family
    /// must carry a certificate against the current database, and the new
    /// generator must pass the coideal check. Zero results are returned
    /// without being stored.
    pub fn derive(&mut self, label: &str, family: &LinComb, var: Var, from: Center, to: Center) -> Result<LinComb> {
        if !self.certify(family)? {
            return Err(Error::Uncertified(format!("{label}: cobracket of the family does not reduce to zero")));
        }
        let element = self.specialized(family, var, &from, &to)?;
        if element.is_zero() || self.contains(&element) {
            return Ok(element);
        }
        if !self.certify(&element)? {
            return Err(Error::Uncertified(format!("{label}: coideal check failed for {element}")));
        }
        self.insert(Record { label: label.to_string(), family: family.clone(), var, from, to, element: element.clone() });
        Ok(element)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "polylog-db {FORMAT_VERSION}").unwrap();
        writeln!(s, "field order={}", self.ctx.order()).unwrap();
        for r in &self.records {
            writeln!(s, "record {}", r.label).unwrap();
            writeln!(s, "weight {}", r.weight()).unwrap();
            writeln!(s, "var {}", r.var).unwrap();
            writeln!(s, "from {}", r.from).unwrap();
            writeln!(s, "to {}", r.to).unwrap();
            writeln!(s, "family {}", r.family).unwrap();
            writeln!(s, "element {}", r.element).unwrap();
            writeln!(s, "end").unwrap();
        }
        s
    }

    /// Loads a database, trusting the stored generators.
    pub fn from_text(src: &str) -> Result<RelationDB> {
        let (ctx, recs) = parse_text(src)?;
        let mut db = RelationDB::new(ctx);
        for r in recs {
            db.insert(r);
        }
        Ok(db)
    }

    /// Rebuilds the database from provenance alone, re-deriving and
    /// re-certifying every record in order, and checks that each printed
    /// generator is reproduced exactly.
    pub fn replay(src: &str) -> Result<RelationDB> {
        let (ctx, recs) = parse_text(src)?;
        let mut db = RelationDB::new(ctx);
        for (i, r) in recs.into_iter().enumerate() {
            let e = db.derive(&r.label, &r.family, r.var, r.from.clone(), r.to.clone())?;
            let (got, want) = (e.to_string(), r.element.to_string());
            if got != want || db.records.len() != i + 1 {
                return Err(Error::Database(format!("record {} ({}): replay gives {got}, stored {want}", i + 1, r.label)));
            }
        }
        Ok(db)
    }
}

fn fresh_index(v: Var) -> Option<usize> {
    v.name().strip_prefix("_t")?.parse().ok()
}

fn parse_center(env: &Env, s: &str) -> Result<Center> {
    if s.trim() == "inf" {
        Ok(Center::Infinity)
    } else {
        Ok(Center::Finite(parse_elem(env, s)?))
    }
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Database(format!("line {line}: {}", msg.into()))
}

fn parse_text(src: &str) -> Result<(Ctx, Vec<Record>)> {
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l)) if l == format!("polylog-db {FORMAT_VERSION}") => {}
        Some((n, l)) => return Err(bad(n, format!("unsupported header `{l}`"))),
        None => return Err(bad(0, "empty database")),
    }
    let ctx = match lines.next() {
        Some((n, l)) => {
            let order = l.strip_prefix("field order=").ok_or_else(|| bad(n, "expected `field order=N`"))?;
            Ctx::new(order.parse().map_err(|_| bad(n, "bad field order"))?)?
        }
        None => return Err(bad(0, "missing field line")),
    };
    let env = Env::internal(&ctx);
    let mut recs = Vec::new();
    while let Some((n, l)) = lines.next() {
        let label = l.strip_prefix("record ").ok_or_else(|| bad(n, "expected `record`"))?.to_string();
        let mut f: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        loop {
            let (m, l) = lines.next().ok_or_else(|| bad(n, "unterminated record"))?;
            if l == "end" {
                break;
            }
            let (k, v) = l.split_once(' ').ok_or_else(|| bad(m, "expected `key value`"))?;
            f.insert(k, (m, v));
        }
        let get = |k: &str| f.get(k).copied().ok_or_else(|| bad(n, format!("record lacks `{k}`")));
        let (m, var) = get("var")?;
        let var = match parse_elem(&env, var)? {
            x if x.vars().len() == 1 && x == FieldElem::var(*x.vars().iter().next().unwrap()) => *x.vars().iter().next().unwrap(),
            _ => return Err(bad(m, "`var` must be a variable")),
        };
        let from = parse_center(&env, get("from")?.1)?;
        let to = parse_center(&env, get("to")?.1)?;
        let family = parse_lie(&env, get("family")?.1)?;
        let element = parse_lie(&env, get("element")?.1)?;
        let (m, w) = get("weight")?;
        if w.parse::<usize>().ok() != Some(element.weight()) && !element.is_zero() {
            return Err(bad(m, "weight does not match the element"));
        }
        recs.push(Record { label, family, var, from, to, element });
    }
    Ok((ctx, recs))
}

