//! Subcommand dispatch. Exit status 0 means success or certified, 2 an
//! honest failure to certify, 1 an error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coalg::{cobracket, fmt_terms, truncated_cobracket, Gen, LinComb};
use crate::error::{Error, Result};
use crate::field::{Center, Ctx, FieldElem, Var};
use crate::hopf::{
    coproduct, depth_bound, li_expand, li_to_lie, prepare_depth1_inversion, prepare_distribution_hopf,
    prepare_inversion, prepare_li_homomorphism, prepare_stuffle_antipode, verify_cyclic_mod_depth,
    verify_depth1_inversion, verify_distribution_hopf, verify_inversion, verify_li_homomorphism,
    verify_stuffle_antipode, IISym, LiSym, QSWord,
};
use crate::relations::{
    prepare, seed, verify_22_term, verify_five_term, verify_identity, Certificate, Identity, RelationDB,
};
use crate::special::{specialize, SpecPoint};

use super::config::{Config, Format, DB_ENV};
use super::eval::{Env, Term};
use super::parse::{parse, Ast};
use super::report::{Report, Status};
use super::selftest;

#[derive(Parser, Debug)]
#[command(name = "polylog", version, about = "Formal multiple polylogarithms and their functional equations")]
pub struct Cli {
    /// configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// relation database file (default: $POLYLOG_DB)
    #[arg(long, global = true)]
    pub db: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// cyclotomic order N of the constant field Q(zeta_N)
    #[arg(long, global = true)]
    pub order: Option<u32>,
    /// the only variable names accepted in expressions, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Canonical form of a field element or symbol combination
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The cobracket in the exterior square
    Cobracket {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// drop the weight-one legs
        #[arg(long)]
        truncated: bool,
    },
    /// Specialization at a valuation of one variable
    Specialize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// the variable that specializes
        #[arg(long, allow_hyphen_values = true)]
        var: String,
        /// center: an expression or `inf`
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Derive a relation from a one-parameter family
    Derive(DeriveArgs),
    /// Certify an identity
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Goncharov coproduct of an iterated integral combination
    Coproduct {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// the reduced coproduct
        #[arg(long)]
        reduced: bool,
    },
    /// Multiple polylogarithm as an iterated integral
    LiExpand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Upper bound for the depth of a combination
    Depth {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Value of a weight-one combination in the multiplicative group
    Weight1 {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Manage the relation database
    #[command(subcommand)]
    Relations(RelationsCmd),
    /// Run the structural property checks at small sample counts
    Selftest {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct DeriveArgs {
    /// file holding the family expression
    #[arg(long)]
    pub family: PathBuf,
    /// the family parameter
    #[arg(long, allow_hyphen_values = true)]
    pub var: String,
    /// first center: an expression or `inf`
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// second center, subtracted
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    /// provenance label stored with the generator
    #[arg(long, default_value = "derived")]
    pub label: String,
    /// write the new generator to the database file
    #[arg(long)]
    pub save: bool,
}

#[derive(Subcommand, Debug)]
pub enum RelationsCmd {
    /// Print the stored generators
    List,
    /// Derive and store a generator
    Add(DeriveArgs),
    /// Re-derive every record from its provenance
    Replay { file: Option<PathBuf> },
    /// Write the standard seed relations
    Seed,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// The five-term relation R2(a, b) in the Bloch group
    FiveTerm {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Shuffle relation of a correlator
    Shuffle {
        /// points x0, ..., xn
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        #[arg(long)]
        n1: usize,
    },
    /// Reversal of a correlator
    Reversal {
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
    },
    /// Distribution relation for N-th roots of unity
    Distribution {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
    },
    /// The 22-term relation for the trilogarithm
    TwentyTwo {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// closure degree of the five-term search
        #[arg(long)]
        degree: Option<u32>,
        /// time limit of the five-term search, in seconds
        #[arg(long)]
        time: Option<u64>,
        /// skip the five-term search
        #[arg(long)]
        no_search: bool,
    },
    /// Stuffle antipode modulo lower depth
    StuffleAntipode {
        #[arg(long, allow_hyphen_values = true)]
        sym: String,
    },
    /// Inversion of a multiple polylogarithm modulo lower depth
    Inversion {
        #[arg(long, allow_hyphen_values = true)]
        sym: String,
    },
    /// Li_n(x) against Li_n(1/x)
    InversionDepth1 {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Cyclic symmetry of iterated integrals modulo lower depth
    CyclicDepth {
        /// points x1, ..., x_{n+1}
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        #[arg(long)]
        i: usize,
    },
    /// Li of a quasi-shuffle product
    LiHom {
        /// a word as Li[n1, ..., nk](a1, ..., ak), or 1 for the empty word
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        /// second word, same syntax
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
    },
    /// Distribution relation of an iterated integral
    DistributionHopf {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        sym: String,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses the arguments (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { 1 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = command_name(&cli.cmd);
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => return finish(Report::error(name, &e), Format::Human),
    };
    let fmt = cfg.format;
    let report = Session { cfg }.dispatch(&cli.cmd).unwrap_or_else(|e| Report::error(name, &e));
    finish(report, fmt)
}

fn finish(r: Report, fmt: Format) -> Outcome {
    let code = r.status.exit_code();
    if r.status == Status::Error && fmt == Format::Human {
        return Outcome { code, stdout: String::new(), stderr: format!("error: {}\n", r.get("error").unwrap_or("")) };
    }
    Outcome { code, stdout: r.render(fmt), stderr: String::new() }
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Normalize { .. } => "normalize",
        Cmd::Cobracket { .. } => "cobracket",
        Cmd::Specialize { .. } => "specialize",
        Cmd::Derive(_) => "derive",
        Cmd::Verify(v) => match v {
            VerifyCmd::FiveTerm { .. } => "verify five-term",
            VerifyCmd::Shuffle { .. } => "verify shuffle",
            VerifyCmd::Reversal { .. } => "verify reversal",
            VerifyCmd::Distribution { .. } => "verify distribution",
            VerifyCmd::TwentyTwo { .. } => "verify twenty-two",
            VerifyCmd::StuffleAntipode { .. } => "verify stuffle-antipode",
            VerifyCmd::Inversion { .. } => "verify inversion",
            VerifyCmd::InversionDepth1 { .. } => "verify inversion-depth1",
            VerifyCmd::CyclicDepth { .. } => "verify cyclic-depth",
            VerifyCmd::LiHom { .. } => "verify li-hom",
            VerifyCmd::DistributionHopf { .. } => "verify distribution-hopf",
        },
        Cmd::Coproduct { .. } => "coproduct",
        Cmd::LiExpand { .. } => "li-expand",
        Cmd::Depth { .. } => "depth",
        Cmd::Weight1 { .. } => "weight1",
        Cmd::Relations(r) => match r {
            RelationsCmd::List => "relations list",
            RelationsCmd::Add(_) => "relations add",
            RelationsCmd::Replay { .. } => "relations replay",
            RelationsCmd::Seed => "relations seed",
        },
        Cmd::Selftest { .. } => "selftest",
    }
}

/// Flags override the config file, which overrides the environment.
fn config(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(o) = cli.order {
        cfg.order = o;
    }
    if let Some(v) = &cli.vars {
        let set: std::collections::BTreeSet<String> = v.iter().map(|s| s.trim().to_string()).collect();
        if set.len() != v.len() {
            return Err(Error::Precondition("variables must be distinct".into()));
        }
        cfg.vars = Some(set);
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Human => Format::Human,
            FormatArg::Structured => Format::Structured,
        };
    }
    if let Some(p) = &cli.db {
        cfg.db = Some(p.clone());
    } else if cfg.db.is_none() {
        cfg.db = std::env::var_os(DB_ENV).filter(|s| !s.is_empty()).map(PathBuf::from);
    }
    cfg.ctx()?;
    Ok(cfg)
}

struct Session {
    cfg: Config,
}

impl Session {
    fn env<'a>(&self, ctx: &'a Ctx) -> Env<'a> {
        let mut e = Env::new(ctx);
        e.allowed = self.cfg.vars.clone();
        e
    }

    /// The configured database, or a fresh one (seeded if asked) when no
    /// file exists yet.
    fn open_db(&self, seeded: bool) -> Result<RelationDB> {
        if let Some(p) = self.cfg.db.as_deref().filter(|p| p.exists()) {
            let db = RelationDB::from_text(&std::fs::read_to_string(p)?)?;
            if db.ctx().order() != self.cfg.order {
                return Err(Error::Database(format!(
                    "{} has field order {}, configured order is {}",
                    p.display(),
                    db.ctx().order(),
                    self.cfg.order
                )));
            }
            return Ok(db);
        }
        let mut db = RelationDB::new(self.cfg.ctx()?);
        if seeded {
            seed(&mut db)?;
        }
        Ok(db)
    }

    fn db_path(&self) -> Result<&Path> {
        self.cfg.db.as_deref().ok_or_else(|| Error::Database(format!("no database file; pass --db or set {DB_ENV}")))
    }

    fn save_db(&self, db: &RelationDB) -> Result<()> {
        std::fs::write(self.db_path()?, db.to_text())?;
        Ok(())
    }

    fn dispatch(&self, cmd: &Cmd) -> Result<Report> {
        let name = command_name(cmd);
        match cmd {
            Cmd::Normalize { expr } => {
                let ctx = self.cfg.ctx()?;
                let env = self.env(&ctx);
                let ast = parse(expr)?;
                match env.eval(&ast)? {
                    crate::cli::Value::Elem(x) => Ok(Report::new(name, Status::Ok).with("result", x).with("kind", "element")),
                    crate::cli::Value::Terms(_) => {
                        let e = env.lie(&ast)?;
                        Ok(lie_report(&ctx, name, &e)?)
                    }
                }
            }
            Cmd::Cobracket { expr, truncated } => {
                let ctx = self.cfg.ctx()?;
                let e = self.env(&ctx).lie(&parse(expr)?)?;
                let w = if *truncated { truncated_cobracket(&ctx, &e)? } else { cobracket(&ctx, &e)? };
                Ok(Report::new(name, Status::Ok).with("result", &w).with("terms", w.len()))
            }
            Cmd::Specialize { expr, var, at } => {
                let ctx = self.cfg.ctx()?;
                let env = self.env(&ctx);
                let e = env.lie(&parse(expr)?)?;
                let p = SpecPoint::new(parse_var(&env, var)?, parse_center(&env, at)?)?;
                let s = specialize(&ctx, &e, &p)?.refresh(&ctx);
                Ok(lie_report(&ctx, name, &s)?.with("at", p))
            }
            Cmd::Derive(a) => self.derive(name, a, a.save),
            Cmd::Relations(RelationsCmd::Add(a)) => {
                self.db_path()?;
                self.derive(name, a, true)
            }
            Cmd::Relations(RelationsCmd::List) => {
                let db = self.open_db(false)?;
                let mut r = Report::new(name, Status::Ok).with("records", db.len());
                for (i, rec) in db.records().iter().enumerate() {
                    r = r.with(
                        "record",
                        format!("{} {} weight={} {}->{}: {}", i + 1, rec.label, rec.weight(), rec.from, rec.to, rec.element),
                    );
                }
                Ok(r)
            }
            Cmd::Relations(RelationsCmd::Replay { file }) => {
                let path = match file {
                    Some(f) => f.as_path(),
                    None => self.db_path()?,
                };
                let db = RelationDB::replay(&std::fs::read_to_string(path)?)?;
                let ranks: Vec<String> = (2..=4).map(|w| format!("{w}:{}", db.rank(w))).collect();
                Ok(Report::new(name, Status::Certified)
                    .with("records", db.len())
                    .with("ranks", ranks.join(" "))
                    .with("reproduced", "byte-identical"))
            }
            Cmd::Relations(RelationsCmd::Seed) => {
                self.db_path()?;
                let mut db = self.open_db(false)?;
                let before = db.len();
                seed(&mut db)?;
                self.save_db(&db)?;
                Ok(Report::new(name, Status::Ok).with("added", db.len() - before).with("records", db.len()))
            }
            Cmd::Verify(v) => self.verify(name, v),
            Cmd::Coproduct { expr, reduced } => {
                let ctx = self.cfg.ctx()?;
                let h = self.env(&ctx).hopf(&parse(expr)?)?;
                let mut d = coproduct(&h);
                if *reduced {
                    d = d.reduced();
                }
                Ok(Report::new(name, Status::Ok).with("result", &d).with("terms", d.len()))
            }
            Cmd::LiExpand { expr } => {
                let ctx = self.cfg.ctx()?;
                let s = li_sym(&self.env(&ctx), expr)?;
                let (c, ii) = li_expand(&s);
                let lie = li_to_lie(&ctx, &s)?;
                Ok(Report::new(name, Status::Ok)
                    .with("result", fmt_terms([(c, ii.to_string())]))
                    .with("weight", s.weight())
                    .with("depth", s.depth())
                    .with("lie", lie))
            }
            Cmd::Depth { expr } => {
                let ctx = self.cfg.ctx()?;
                let e = self.env(&ctx).lie(&parse(expr)?)?;
                Ok(Report::new(name, Status::Ok).with("result", depth_bound(&e)).with("weight", e.weight()))
            }
            Cmd::Weight1 { expr } => {
                let ctx = self.cfg.ctx()?;
                let e = self.env(&ctx).lie(&parse(expr)?)?;
                if e.weight() > 1 && !e.is_zero() {
                    return Err(Error::Precondition(format!("weight {} combination; expected weight 1", e.weight())));
                }
                let w = e.to_word();
                let mut r = Report::new(name, Status::Ok);
                r = match w.eval() {
                    Some(x) => r.with("result", x),
                    None => r.with("result", &w),
                };
                Ok(r.with("word", &w))
            }
            Cmd::Selftest { samples, seed } => {
                let t = Instant::now();
                let checks = selftest::run(*seed, *samples)?;
                let ok = checks.iter().all(selftest::Check::passed);
                let mut r = Report::new(name, if ok { Status::Ok } else { Status::NotCertified });
                for c in &checks {
                    let verdict = if c.passed() { "pass" } else { "FAIL" };
                    r = r.with(c.name, format!("{verdict} ({} samples, {} failures)", c.samples, c.failures));
                }
                if self.cfg.format == Format::Human {
                    r = r.with("seconds", format!("{:.2}", t.elapsed().as_secs_f64()));
                }
                Ok(r)
            }
        }
    }

    fn derive(&self, name: &str, a: &DeriveArgs, save: bool) -> Result<Report> {
        let mut db = self.open_db(false)?;
        let src = std::fs::read_to_string(&a.family)?;
        let src: Vec<&str> = src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let (family, var, from, to) = {
            let env = self.env(db.ctx());
            let family = env.lie(&parse(&src.join(" "))?)?;
            (family, parse_var(&env, &a.var)?, parse_center(&env, &a.from)?, parse_center(&env, &a.to)?)
        };
        let before = db.len();
        let e = db.derive(&a.label, &family, var, from, to)?;
        let stored = db.len() > before;
        if save && stored {
            self.save_db(&db)?;
        }
        Ok(lie_report(db.ctx(), name, &e)?
            .with("new", stored)
            .with("saved", save && stored)
            .with("db_rank", db.rank(e.weight())))
    }

    fn verify(&self, name: &str, v: &VerifyCmd) -> Result<Report> {
        if let VerifyCmd::FiveTerm { a, b } = v {
            let ctx = self.cfg.ctx()?;
            let env = self.env(&ctx);
            let c = verify_five_term(&ctx, &parse_elem(&env, a)?, &parse_elem(&env, b)?)?;
            return Ok(Report::from_certificate(name, &c));
        }
        if let VerifyCmd::TwentyTwo { a, b, c, degree, time, no_search } = v {
            let ctx = self.cfg.ctx()?;
            let env = self.env(&ctx);
            let mut budget = self.cfg.budget.clone();
            if let Some(d) = degree {
                budget.degree = *d;
            }
            if let Some(t) = time {
                budget.time = Duration::from_secs(*t);
            }
            let (a, b, c) = (parse_elem(&env, a)?, parse_elem(&env, b)?, parse_elem(&env, c)?);
            let t = Instant::now();
            let cert = verify_22_term(&ctx, &a, &b, &c, (!no_search).then_some(&budget))?;
            let mut r = Report::from_certificate(name, &cert);
            if self.cfg.format == Format::Human {
                r = r.with("seconds", format!("{:.2}", t.elapsed().as_secs_f64()));
            }
            return Ok(r);
        }
        let mut db = self.open_db(true)?;
        // inputs here are field elements and symbols, which do not depend
        // on the factor base
        let ctx = db.ctx().fork();
        let env = self.env(&ctx);
        let cert: Certificate = match v {
            VerifyCmd::Shuffle { xs, n1 } => {
                identity(&mut db, Identity::Shuffle(tuple(&env, xs)?, *n1))?
            }
            VerifyCmd::Reversal { xs } => identity(&mut db, Identity::Reversal(tuple(&env, xs)?))?,
            VerifyCmd::Distribution { n, xs } => {
                let xs = tuple(&env, xs)?;
                if *n == 1 {
                    crate::relations::verify_distribution(&db, 1, &xs)?
                } else {
                    identity(&mut db, Identity::Distribution(*n, xs))?
                }
            }
            VerifyCmd::StuffleAntipode { sym } => {
                let s = li_sym(&env, sym)?;
                prepare_stuffle_antipode(&mut db, &s)?;
                verify_stuffle_antipode(&db, &s)?
            }
            VerifyCmd::Inversion { sym } => {
                let s = li_sym(&env, sym)?;
                prepare_inversion(&mut db, &s)?;
                verify_inversion(&db, &s)?
            }
            VerifyCmd::InversionDepth1 { n, x } => {
                let x = parse_elem(&env, x)?;
                if *n >= 2 {
                    prepare_depth1_inversion(&mut db, &x)?;
                }
                verify_depth1_inversion(&db, *n, &x)?
            }
            VerifyCmd::CyclicDepth { xs, i } => verify_cyclic_mod_depth(&db, &tuple(&env, xs)?, *i)?,
            VerifyCmd::LiHom { w1, w2 } => {
                let (w1, w2) = (word(&env, w1)?, word(&env, w2)?);
                prepare_li_homomorphism(&mut db, &w1, &w2)?;
                verify_li_homomorphism(&db, &w1, &w2)?
            }
            VerifyCmd::DistributionHopf { n, sym } => {
                let s = ii_sym(&env, sym)?;
                if *n >= 2 && db.ctx().has_roots_of_unity(*n) {
                    prepare_distribution_hopf(&mut db, *n, &s)?;
                }
                verify_distribution_hopf(&db, *n, &s)?
            }
            VerifyCmd::FiveTerm { .. } | VerifyCmd::TwentyTwo { .. } => unreachable!("handled above"),
        };
        Ok(Report::from_certificate(name, &cert))
    }
}

fn identity(db: &mut RelationDB, id: Identity) -> Result<Certificate> {
    id.check(db.ctx())?;
    prepare(db, &id)?;
    verify_identity(db, &id)
}

/// Result line in canonical form, with Li_n^L(a) spelled out for the
/// human rendering.
fn lie_report(ctx: &Ctx, name: &str, e: &LinComb) -> Result<Report> {
    Ok(Report::new(name, Status::Ok)
        .with("result", e)
        .with("li", li_notation(ctx, e)?)
        .with("weight", e.weight())
        .with("terms", e.len()))
}

/// e with every term that is a multiple of some Li_n^L(a) written that way.
/// Candidates for a are the anharmonic images of the entries.
pub fn li_notation(ctx: &Ctx, e: &LinComb) -> Result<String> {
    let mut terms = Vec::with_capacity(e.len());
    for (g, c) in e.iter() {
        terms.push(li_form(ctx, g)?.map_or_else(|| (c.clone(), g.to_string()), |(d, body)| (c / d, body)));
    }
    Ok(fmt_terms(terms))
}

fn li_form(ctx: &Ctx, g: &Gen) -> Result<Option<(crate::field::Rational, String)>> {
    let Gen::Cor(s) = g else { return Ok(None) };
    let n = s.weight();
    if n < 2 {
        return Ok(None);
    }
    let mut seen = std::collections::BTreeSet::new();
    for x in s.entries() {
        if x.is_zero() || x.is_one() {
            continue;
        }
        for a in crate::relations::anharmonic(x)? {
            if !seen.insert(a.clone()) {
                continue;
            }
            let li = li_to_lie(ctx, &LiSym::new(0, vec![n as u32], vec![a.clone()])?)?;
            if let (1, Some((h, d))) = (li.len(), li.leading()) {
                if h == g {
                    return Ok(Some((d.clone(), format!("Li[{n}]({a})"))));
                }
            }
        }
    }
    Ok(None)
}

fn parse_elem(env: &Env, s: &str) -> Result<FieldElem> {
    env.elem(&parse(s)?)
}

fn parse_var(env: &Env, s: &str) -> Result<Var> {
    let x = parse_elem(env, s)?;
    match x.vars().iter().next() {
        Some(v) if x.vars().len() == 1 && x == FieldElem::var(*v) => Ok(*v),
        _ => Err(Error::Precondition(format!("`{s}` is not a variable"))),
    }
}

fn parse_center(env: &Env, s: &str) -> Result<Center> {
    if s.trim() == "inf" {
        return Ok(Center::Infinity);
    }
    Ok(Center::Finite(parse_elem(env, s)?))
}

/// A comma-separated list of field elements, optionally parenthesized.
fn tuple(env: &Env, s: &str) -> Result<Vec<FieldElem>> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    match parse(&format!("cor({inner})"))? {
        Ast::Cor(xs) => xs.iter().map(|x| env.elem(x)).collect(),
        _ => Err(Error::Precondition(format!("expected a list of elements, found `{s}`"))),
    }
}

fn single_term(env: &Env, s: &str) -> Result<Term> {
    let mut t = env.terms(&parse(s)?)?;
    match (t.len(), t.pop()) {
        (1, Some((c, term))) if num_traits::One::is_one(&c) => Ok(term),
        _ => Err(Error::Precondition(format!("expected a single symbol, found `{s}`"))),
    }
}

fn li_sym(env: &Env, s: &str) -> Result<LiSym> {
    match single_term(env, s)? {
        Term::Li(l) => Ok(l),
        _ => Err(Error::Precondition(format!("expected Li[...](...), found `{s}`"))),
    }
}

fn ii_sym(env: &Env, s: &str) -> Result<IISym> {
    match single_term(env, s)? {
        Term::II(i) => Ok(i),
        _ => Err(Error::Precondition(format!("expected II(...; ...; ...), found `{s}`"))),
    }
}

fn word(env: &Env, s: &str) -> Result<QSWord> {
    if s.trim() == "1" {
        return Ok(QSWord::empty());
    }
    let l = li_sym(env, s)?;
    if l.n0() != 0 {
        return Err(Error::Precondition("words take no leading index".into()));
    }
    QSWord::new(l.indices().iter().copied().zip(l.args().iter().cloned()).collect())
}
