//! Certificates for the identities of iterated integrals and multiple
//! polylogarithms. Claims of the form "lies in D_{k-1}" are certified in
//! tiers, and the certificate names the tier that fired.

use num_traits::One;

use crate::coalg::{cobracket, normalize, Gen, LinComb};
use crate::error::{Error, Result};
use crate::field::{Ctx, FieldElem, Rational};
use crate::relations::{certify_with_elimination, derive_identity, eliminate, li2, Certificate, Identity, RelationDB};

use super::ii::{ii_to_lie, HopfElem, IISym};
use super::li::{depth_bound, li_expand, li_to_hopf, li_to_lie, LiSym};
use super::qs::{qshuffle, QSWord};

/// How a "lies in D_{k-1}" claim was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// the combination is zero after normalization
    Exact,
    /// every correlator has at most k nonzero entries
    Depth,
    /// the same after reduction modulo the database
    DepthModDb,
    /// the cobracket of the higher-depth residual vanishes modulo the database
    Cobracket,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Exact => "exact",
            Tier::Depth => "tier 1: depth",
            Tier::DepthModDb => "tier 1: depth modulo db",
            Tier::Cobracket => "tier 2: cobracket modulo db",
        }
    }
}

fn term_depth(g: &Gen) -> usize {
    depth_bound(&LinComb::single(g.clone(), Rational::one()))
}

/// Terms of e of depth above `bound`.
pub fn residual(e: &LinComb, bound: usize) -> LinComb {
    let mut out = LinComb::zero(e.weight());
    for (g, c) in e.iter() {
        if term_depth(g) > bound {
            out.add_term(g.clone(), c.clone());
        }
    }
    out
}

/// The tier at which e lies in D_{k-1}, if any.
pub fn depth_tier(db: &RelationDB, e: &LinComb, k: usize) -> Result<Option<Tier>> {
    let bound = k.saturating_sub(1);
    if e.is_zero() {
        return Ok(Some(Tier::Exact));
    }
    if depth_bound(e) <= bound {
        return Ok(Some(Tier::Depth));
    }
    let r = db.reduce(e);
    if r.is_zero() || depth_bound(&r) <= bound {
        return Ok(Some(Tier::DepthModDb));
    }
    if db.certify(&residual(&r, bound))? {
        return Ok(Some(Tier::Cobracket));
    }
    Ok(None)
}

/// Extends the database so that the cobracket tier can fire, by
/// eliminating variables from the weight-two legs of the residual.
pub fn prepare_depth(db: &mut RelationDB, e: &LinComb, k: usize) -> Result<()> {
    if depth_tier(db, e, k)?.is_none() {
        let r = residual(&db.reduce(e), k.saturating_sub(1));
        certify_with_elimination(db, &r)?;
    }
    Ok(())
}

pub fn certify_depth(db: &RelationDB, name: String, e: &LinComb, k: usize) -> Result<Certificate> {
    let tier = depth_tier(db, e, k)?;
    Ok(Certificate::new(name, tier.is_some(), tier.map_or("none", Tier::name))
        .with("depth_bound", depth_bound(e))
        .with("target", format!("D_{}", k.saturating_sub(1)))
        .with("terms", e.len()))
}

/// Li^L(s) + (-1)^k Li^L of the reversed indices and arguments.
pub fn stuffle_antipode_element(ctx: &Ctx, s: &LiSym) -> Result<LinComb> {
    let idx: Vec<u32> = s.indices().iter().rev().copied().collect();
    let args: Vec<FieldElem> = s.args().iter().rev().cloned().collect();
    let r = li_to_lie(ctx, &LiSym::new(s.n0(), idx, args)?)?;
    let sign = if s.depth() % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(li_to_lie(ctx, s)?.add(&r.scale(&sign)))
}

/// Li^L(s) - (-1)^(n + k) Li^L of the inverted arguments.
pub fn inversion_element(ctx: &Ctx, s: &LiSym) -> Result<LinComb> {
    if s.weight() < 2 {
        return Err(Error::Precondition("inversion needs weight at least 2".into()));
    }
    let args: Vec<FieldElem> = s.args().iter().map(FieldElem::inv).collect::<Result<_>>()?;
    let r = li_to_lie(ctx, &LiSym::new(s.n0(), s.indices().to_vec(), args)?)?;
    let sign = if (s.weight() + s.depth()) % 2 == 0 { -Rational::one() } else { Rational::one() };
    Ok(li_to_lie(ctx, s)?.add(&r.scale(&sign)))
}

pub fn verify_stuffle_antipode(db: &RelationDB, s: &LiSym) -> Result<Certificate> {
    let e = stuffle_antipode_element(db.ctx(), s)?;
    Ok(certify_depth(db, format!("stuffle-antipode {s}"), &e, s.depth())?.with("depth", s.depth()))
}

pub fn verify_inversion(db: &RelationDB, s: &LiSym) -> Result<Certificate> {
    let e = inversion_element(db.ctx(), s)?;
    Ok(certify_depth(db, format!("inversion {s}"), &e, s.depth())?.with("depth", s.depth()))
}

/// The weight-n piece of Li_bullet^L(w1 * w2): the sum of
/// Li^L_{n0; w} over the words w of the quasi-shuffle product. It lies in
/// R for nonempty words.
pub fn quasi_shuffle_relation(ctx: &Ctx, n0: u32, w1: &QSWord, w2: &QSWord) -> Result<LinComb> {
    let mut out = LinComb::zero(n0 as usize + w1.weight() + w2.weight());
    for (w, c) in qshuffle(w1, w2).iter() {
        out.add_scaled(&li_to_lie(ctx, &w.to_li(n0)?)?, c);
    }
    Ok(out)
}

fn letters(s: &LiSym) -> Vec<(u32, FieldElem)> {
    s.indices().iter().copied().zip(s.args().iter().cloned()).collect()
}

fn eliminate_small(db: &mut RelationDB, e: &LinComb) -> Result<()> {
    if (2..=3).contains(&e.weight()) && !e.is_zero() {
        eliminate(db, e)?;
    }
    Ok(())
}

/// Derives the quasi-shuffle relations (a1..ai) * (ak..a_{i+1}), 0 < i < k,
/// that reduce the antipode combination to lower depth.
pub fn prepare_stuffle_antipode(db: &mut RelationDB, s: &LiSym) -> Result<()> {
    let a = letters(s);
    let k = a.len();
    for i in 1..k {
        let w1 = QSWord::new(a[..i].to_vec())?;
        let w2 = QSWord::new(a[i..].iter().rev().cloned().collect())?;
        let r = quasi_shuffle_relation(db.ctx(), s.n0(), &w1, &w2)?;
        eliminate_small(db, &r)?;
    }
    let e = stuffle_antipode_element(db.ctx(), s)?;
    prepare_depth(db, &e, k)
}

/// Derives the relations used by the inversion argument: reversal of the
/// integral, then the antipode relation of the reversed polylogarithm.
/// In depth one the combination itself lies in R.
pub fn prepare_inversion(db: &mut RelationDB, s: &LiSym) -> Result<()> {
    let e = inversion_element(db.ctx(), s)?;
    if s.depth() == 1 {
        prepare_depth1_inversion(db, &s.args()[0])?;
        eliminate_small(db, &e)?;
        return prepare_depth(db, &e, 1);
    }
    let (_, ii) = li_expand(s);
    let pts = ii.points();
    let n = ii.weight();
    for tuple in [pts[1..].to_vec(), pts[..=n].to_vec()] {
        derive_identity(db, &Identity::Reversal(tuple))?;
    }
    if s.depth() == 2 {
        let (n1, n2) = (s.indices()[0], s.indices()[1]);
        let (x1, x2) = (&s.args()[0], &s.args()[1]);
        if n2 >= 1 {
            let w1 = QSWord::new(vec![(n1, x1.inv()?)])?;
            let w2 = QSWord::new(vec![(s.n0() + 1, x1.mul(x2))])?;
            let r = quasi_shuffle_relation(db.ctx(), n2 - 1, &w1, &w2)?;
            eliminate_small(db, &r)?;
        }
    }
    prepare_depth(db, &e, s.depth())
}

fn word_hopf(w: &QSWord) -> Result<HopfElem> {
    if w.is_empty() {
        return Ok(HopfElem::one());
    }
    Ok(li_to_hopf(&w.to_li(0)?))
}

/// Li(w1) Li(w2) - Li(w1 * w2) in H, with * the quasi-shuffle product.
pub fn li_hom_hopf(w1: &QSWord, w2: &QSWord) -> Result<HopfElem> {
    let mut rhs = HopfElem::zero();
    for (w, c) in qshuffle(w1, w2).iter() {
        rhs.add_scaled(&word_hopf(w)?, c);
    }
    Ok(word_hopf(w1)?.mul(&word_hopf(w2)?).sub(&rhs))
}

/// Projection of li_hom_hopf to the Lie coalgebra. Products vanish there,
/// so this is -Li^L(w1 * w2) when both words are nonempty.
pub fn li_hom_element(ctx: &Ctx, w1: &QSWord, w2: &QSWord) -> Result<LinComb> {
    li_hom_hopf(w1, w2)?.to_lie(ctx, w1.weight() + w2.weight())
}

pub fn verify_li_homomorphism(db: &RelationDB, w1: &QSWord, w2: &QSWord) -> Result<Certificate> {
    let name = format!("li-hom {w1} * {w2}");
    if w1.is_empty() || w2.is_empty() {
        return Ok(Certificate::new(name, true, "unit"));
    }
    let e = li_hom_element(db.ctx(), w1, w2)?;
    let exact = cobracket(db.ctx(), &e)?.refresh(db.ctx()).is_zero();
    let ok = exact || db.certify(&e)?;
    Ok(Certificate::new(name, ok, if exact { "exact cobracket" } else { "cobracket modulo db" })
        .with("weight", e.weight())
        .with("terms", e.len())
        .with("in_db", db.contains(&e)))
}

/// Prepares the database for the cobracket certificate of li-hom.
pub fn prepare_li_homomorphism(db: &mut RelationDB, w1: &QSWord, w2: &QSWord) -> Result<()> {
    if w1.is_empty() || w2.is_empty() {
        return Ok(());
    }
    let e = li_hom_element(db.ctx(), w1, w2)?;
    certify_with_elimination(db, &e)?;
    Ok(())
}

/// Li_n^L(x) + (-1)^n Li_n^L(1/x) + I^L(0; 0^n; x), which is log(x) in
/// weight one and the first two terms otherwise.
pub fn depth1_inversion_element(ctx: &Ctx, n: u32, x: &FieldElem) -> Result<LinComb> {
    if x.is_zero() {
        return Err(Error::Precondition("x = 0".into()));
    }
    let li = |y: FieldElem| li_to_lie(ctx, &LiSym::new(0, vec![n], vec![y])?);
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let log = ii_to_lie(ctx, &IISym::new(FieldElem::zero(), vec![FieldElem::zero(); n as usize], x.clone()))?;
    Ok(li(x.clone())?.add(&li(x.inv()?)?.scale(&sign)).add(&log))
}

/// Derives Li2(x) + Li2(1/x) - 2 Li2(1) for this x from the inversion family.
pub fn prepare_depth1_inversion(db: &mut RelationDB, x: &FieldElem) -> Result<()> {
    if x.is_zero() {
        return Err(Error::Precondition("x = 0".into()));
    }
    let target = li2(db, x)?.add(&li2(db, &x.inv()?)?);
    if db.contains(&target) {
        return Ok(());
    }
    let t = db.fresh_var();
    let tv = FieldElem::var(t);
    let fam = li2(db, &tv)?.add(&li2(db, &tv.inv()?)?);
    db.derive("inversion", &fam, t, crate::field::Center::Finite(x.clone()), crate::field::Center::Finite(FieldElem::one()))?;
    Ok(())
}

pub fn verify_depth1_inversion(db: &RelationDB, n: u32, x: &FieldElem) -> Result<Certificate> {
    let e = depth1_inversion_element(db.ctx(), n, x)?;
    let name = format!("inversion-depth1 n={n} x={x}");
    if n == 1 {
        return Ok(Certificate::new(name, e.is_zero(), "exact"));
    }
    let exact = cobracket(db.ctx(), &e)?.refresh(db.ctx()).is_zero();
    let ok = exact || db.certify(&e)?;
    let member = db.contains(&e);
    let mut cert = Certificate::new(name, ok, if exact { "exact cobracket" } else { "cobracket modulo db" })
        .with("in_db", member);
    if n == 2 {
        cert.certified = ok && member;
        cert.method = format!("{} + membership", cert.method);
    }
    Ok(cert)
}

/// I^L(0; x1..xn; x_{n+1}) - I^L(0; x_{i+1}, ..., x_{n+1}, x1, ..., x_{i-1}; x_i)
/// for points (x1, ..., x_{n+1}) and 1 <= i <= n.
pub fn cyclic_element(ctx: &Ctx, xs: &[FieldElem], i: usize) -> Result<LinComb> {
    let n = xs.len().saturating_sub(1);
    if n < 2 {
        return Err(Error::Precondition("cyclic symmetry needs n >= 2".into()));
    }
    if i == 0 || i > n {
        return Err(Error::Precondition(format!("index {i} must lie in 1..={n}")));
    }
    if xs[i - 1].is_zero() || xs[n].is_zero() {
        return Err(Error::Precondition(format!("x_{i} x_{} must be nonzero", n + 1)));
    }
    let a = IISym::new(FieldElem::zero(), xs[..n].to_vec(), xs[n].clone());
    let mut mid: Vec<FieldElem> = xs[i..].to_vec();
    mid.extend_from_slice(&xs[..i - 1]);
    let b = IISym::new(FieldElem::zero(), mid, xs[i - 1].clone());
    Ok(ii_to_lie(ctx, &a)?.sub(&ii_to_lie(ctx, &b)?))
}

pub fn verify_cyclic_mod_depth(db: &RelationDB, xs: &[FieldElem], i: usize) -> Result<Certificate> {
    let e = cyclic_element(db.ctx(), xs, i)?;
    let n = xs.len() - 1;
    let k = xs[..n].iter().filter(|x| !x.is_zero()).count();
    // the two correlators the difference reduces to
    let mut rot = vec![FieldElem::zero()];
    rot.extend_from_slice(&xs[i..]);
    rot.extend_from_slice(&xs[..i - 1]);
    let mut base = vec![FieldElem::zero()];
    base.extend_from_slice(&xs[..n]);
    let expected = normalize(db.ctx(), &rot)?.sub(&normalize(db.ctx(), &base)?);
    Ok(certify_depth(db, format!("cyclic-depth i={i}"), &e, k)?.with("structural", e == expected))
}

/// All point subsequences of s keeping both endpoints, of weight >= 1.
fn sub_symbols(s: &IISym) -> Vec<IISym> {
    let pts = s.points();
    let n = s.weight();
    let mut out = Vec::new();
    for lo in 0..=n {
        for hi in lo + 1..=n + 1 {
            let inner = hi - lo - 1;
            for mask in 0u64..(1u64 << inner) {
                if mask.count_ones() == 0 {
                    continue;
                }
                let mid: Vec<FieldElem> =
                    (0..inner).filter(|j| mask >> j & 1 == 1).map(|j| pts[lo + 1 + j].clone()).collect();
                out.push(IISym::new(pts[lo].clone(), mid, pts[hi].clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The Lie-level distribution difference for one symbol: I^L of the N-th
/// powers minus the sum over roots of unity on the middle entries.
pub fn distribution_ii_element(ctx: &Ctx, n: u32, s: &IISym) -> Result<LinComb> {
    let pw = |x: &FieldElem| x.pow(n as i64);
    let powered = IISym::new(pw(s.lower())?, s.mid().iter().map(pw).collect::<Result<_>>()?, pw(s.upper())?);
    let mut e = ii_to_lie(ctx, &powered)?;
    let z = ctx.root_of_unity(n)?;
    let roots: Vec<_> = (0..n).map(|k| z.pow(k as i64)).collect::<Result<_>>()?;
    let m = s.weight();
    let total = (n as usize).pow(m as u32);
    for mut code in 0..total {
        let mut mid = Vec::with_capacity(m);
        for x in s.mid() {
            mid.push(x.scale(&roots[code % n as usize]));
            code /= n as usize;
        }
        e = e.sub(&ii_to_lie(ctx, &IISym::new(s.lower().clone(), mid, s.upper().clone()))?);
    }
    Ok(e.refresh(ctx))
}

/// Derives the correlator distribution instances whose combination is the
/// Lie-level identity, for s and every sub-symbol.
pub fn prepare_distribution_hopf(db: &mut RelationDB, n: u32, s: &IISym) -> Result<()> {
    for sub in sub_symbols(s) {
        if sub.weight() < 2 {
            continue;
        }
        let pts = sub.points();
        let m = sub.weight();
        let mut upper = vec![pts[m + 1].clone()];
        upper.extend_from_slice(&pts[1..=m]);
        derive_identity(db, &Identity::Distribution(n, upper))?;
        derive_identity(db, &Identity::Distribution(n, pts[..=m].to_vec()))?;
    }
    Ok(())
}

/// Inductive certificate: the Lie-level identity holds modulo the
/// database for s and for every lower-weight symbol on a subsequence of
/// its points, which is what the reduced coproduct of the difference is
/// built from.
pub fn verify_distribution_hopf(db: &RelationDB, n: u32, s: &IISym) -> Result<Certificate> {
    let name = format!("distribution-hopf[{n}] {s}");
    if n == 1 {
        return Ok(Certificate::new(name, true, "trivial"));
    }
    if !db.ctx().has_roots_of_unity(n) {
        return Err(Error::Unsupported(format!("N = {n} needs the {n}-th roots of unity in the field context")));
    }
    let subs = sub_symbols(s);
    let mut failed = Vec::new();
    for sub in &subs {
        let e = distribution_ii_element(db.ctx(), n, sub)?;
        if !(e.is_zero() || db.contains(&e)) {
            failed.push(sub.to_string());
        }
    }
    Ok(Certificate::new(name, failed.is_empty(), "lie level on all sub-symbols")
        .with("sub_symbols", subs.len())
        .with("failed", if failed.is_empty() { "none".to_string() } else { failed.join("; ") }))
}
