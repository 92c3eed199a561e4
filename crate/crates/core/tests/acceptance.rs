//! One line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{
    as_rat, double_sum, family, index_sets, lincoproduct_sides, projected, q, trilog_oracle, v, word, words_up_to_three,
};
use polylog::cli::sample::Sampler;
use polylog::cli::selftest::all_ii;
use polylog::coalg::{cobracket, cojacobi, normalize, LinComb};
use polylog::field::{rat, Center, Ctx, FieldElem, Rational, Var};
use polylog::hopf::*;
use polylog::relations::*;
use polylog::special::{specialize, specialize_wedge, SpecPoint};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn seeded() -> Result<RelationDB, String> {
    let mut db = RelationDB::new(Ctx::rational());
    seed(&mut db).map_err(e)?;
    Ok(db)
}

fn cobracket_laws() -> Outcome {
    let ctx = Ctx::rational();
    let mut s = Sampler::new(101);
    let start = Instant::now();
    for i in 0..200 {
        let w = 2 + i % 4;
        let xs = s.tuple(w);
        let x = normalize(&ctx, &xs).map_err(e)?;
        let d = cobracket(&ctx, &x).map_err(e)?;
        ensure(d.add(&d.swapped()).refresh(&ctx).is_zero(), || format!("antisymmetry fails on {xs:?}"))?;
        ensure(cojacobi(&ctx, &x).map_err(e)?.is_zero(), || format!("coJacobi fails on {xs:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {}", secs(t)))?;
    Ok(format!("200 symbols, weights 2-5, {}", secs(t)))
}

fn well_definedness() -> Outcome {
    let ctx = Ctx::rational();
    let mut s = Sampler::new(102);
    for i in 0..200 {
        let w = 1 + i % 5;
        let xs = s.tuple(w);
        let mv = s.move_for(w);
        let ys = mv.apply(&xs);
        let (a, b) = (normalize(&ctx, &xs).map_err(e)?, normalize(&ctx, &ys).map_err(e)?);
        ensure(a == b, || format!("{mv:?} changes the class of {xs:?}"))?;
        let (da, db) = (cobracket(&ctx, &a).map_err(e)?.refresh(&ctx), cobracket(&ctx, &b).map_err(e)?.refresh(&ctx));
        ensure(da == db, || format!("{mv:?} changes the cobracket of {xs:?}"))?;
    }
    Ok("200 symbol and move pairs".into())
}

fn specialization_square() -> Outcome {
    let ctx = Ctx::rational();
    let mut s = Sampler::new(103);
    for i in 0..100 {
        let w = 1 + i % 4;
        let xs = s.tuple(w);
        let p = SpecPoint::new(s.var(), s.center()).map_err(e)?;
        let x = normalize(&ctx, &xs).map_err(e)?;
        let lhs = cobracket(&ctx, &specialize(&ctx, &x, &p).map_err(e)?).map_err(e)?.refresh(&ctx);
        let rhs = specialize_wedge(&ctx, &cobracket(&ctx, &x).map_err(e)?, &p).map_err(e)?;
        ensure(lhs == rhs, || format!("square fails for {xs:?} at {p}"))?;
    }
    Ok("100 tuples, centers in {0, 1, -1, 2, inf}".into())
}

fn five_term() -> Outcome {
    let ctx = Ctx::rational();
    let start = Instant::now();
    let c = verify_five_term(&ctx, &v("a"), &v("b")).map_err(e)?;
    let t = start.elapsed();
    ensure(c.certified, || c.to_string())?;
    ensure(t < Duration::from_secs(1), || format!("took {}", secs(t)))?;
    Ok(format!("symbolic (a, b), {}", secs(t)))
}

fn li2(ctx: &Ctx, x: &FieldElem) -> LinComb {
    normalize(ctx, &[FieldElem::one(), FieldElem::zero(), x.clone()]).expect("weight two").neg()
}

fn derivation_pipeline() -> Outcome {
    let ctx = Ctx::rational();
    let mut db = RelationDB::new(Ctx::rational());
    let t = Var::new("t");
    let tv = FieldElem::var(t);
    let two = rat(2);
    let dup = li2(&ctx, &tv.mul(&tv)).sub(&li2(&ctx, &tv).scale(&two)).sub(&li2(&ctx, &tv.neg()).scale(&two));
    let g1 = db.derive("duplication", &dup, t, Center::Finite(q(0)), Center::Finite(q(1))).map_err(e)?;
    let want1 = li2(&ctx, &q(1)).add(&li2(&ctx, &q(-1)).scale(&two));
    ensure(g1 == want1, || format!("duplication gave {g1}"))?;
    let s = v("s");
    let refl = li2(&ctx, &tv).add(&li2(&ctx, &FieldElem::one().sub(&tv)));
    let g2 = db.derive("reflection", &refl, t, Center::Finite(s.clone()), Center::Finite(q(0))).map_err(e)?;
    let want2 = li2(&ctx, &s).add(&li2(&ctx, &FieldElem::one().sub(&s))).sub(&li2(&ctx, &q(1)));
    ensure(g2 == want2, || format!("reflection gave {g2}"))?;
    ensure(db.reduce(&want1).is_zero() && db.reduce(&want2).is_zero(), || "generators do not reduce to 0".into())?;
    let text = db.to_text();
    let again = RelationDB::replay(&text).map_err(e)?.to_text();
    ensure(again == text, || "replay differs".into())?;
    Ok(format!("generators {g1} and {g2}; replay identical"))
}

fn identity_certificates() -> Outcome {
    let mut runs = Vec::new();
    let mut s = Sampler::new(106);
    let list = |xs: &[FieldElem]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    runs.push(vec!["shuffle".to_string(), "--xs".into(), "x0,x1,x2".into(), "--n1".into(), "1".into()]);
    for n1 in 1..=2 {
        runs.push(vec!["shuffle".into(), "--xs".into(), "x0,x1,x2,x3".into(), "--n1".into(), n1.to_string()]);
    }
    for w in 2..=4 {
        for _ in 0..2 {
            runs.push(vec!["reversal".into(), "--xs".into(), list(&s.rational_tuple(w))]);
        }
    }
    for w in 1..=3 {
        let xs: Vec<FieldElem> = (0..=w).map(|i| v(&format!("x{i}"))).collect();
        runs.push(vec!["distribution".into(), "--n".into(), "2".into(), "--xs".into(), list(&xs)]);
    }
    for n in 2..=3 {
        runs.push(vec!["inversion-depth1".into(), "--n".into(), n.to_string(), "--x".into(), "x".into()]);
    }
    for r in &runs {
        let mut args = vec!["polylog".to_string(), "verify".into()];
        args.extend(r.iter().cloned());
        let out = polylog::cli::run(args);
        ensure(out.code == 0, || format!("verify {} exited {}: {}", r.join(" "), out.code, out.stdout.trim()))?;
    }
    Ok(format!("{} verify runs exited 0", runs.len()))
}

fn goncharov_coproduct_checks() -> Outcome {
    let entries = [q(0), q(1), v("t"), v("s")];
    let start = Instant::now();
    let syms = all_ii(&entries, 4);
    for s in &syms {
        let (l, r) = coassociativity_sides(s);
        ensure(l == r, || format!("coassociativity fails for {s}"))?;
    }
    for n in 2..=4 {
        let (got, want) = lincoproduct_sides(n, &v("x"));
        ensure(got == want, || format!("Li_{n} coproduct mismatch"))?;
    }
    let ctx = Ctx::rational();
    let mut projected_count = 0;
    for s in syms.iter().filter(|s| s.weight() >= 2) {
        ensure(projected(&ctx, s) == double_sum(&ctx, s), || format!("projection differs from the double sum for {s}"))?;
        projected_count += 1;
    }
    Ok(format!("{} symbols coassociative, Li_n for n <= 4, {projected_count} projections checked, {}", syms.len(), secs(start.elapsed())))
}

fn quasi_shuffle() -> Outcome {
    let mut sm = Sampler::new(108);
    for _ in 0..100 {
        let (la, lb, lc) = (sm.range(0, 3) as usize, sm.range(0, 3) as usize, sm.range(0, 2) as usize);
        let (a, b, c) = (word(&mut sm, la), word(&mut sm, lb), word(&mut sm, lc));
        ensure(qshuffle(&a, &b) == qshuffle(&b, &a), || format!("{a} * {b} is not commutative"))?;
        let left = qshuffle(&a, &b).product(&WordComb::single(c.clone()), qshuffle);
        let right = WordComb::single(a.clone()).product(&qshuffle(&b, &c), qshuffle);
        ensure(left == right, || format!("({a} * {b}) * {c} is not associative"))?;
    }
    let mut db = seeded()?;
    let words = words_up_to_three();
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            if a.weight() + b.weight() > 3 {
                continue;
            }
            prepare_li_homomorphism(&mut db, a, b).map_err(e)?;
            let c = verify_li_homomorphism(&db, a, b).map_err(e)?;
            ensure(c.certified, || c.to_string())?;
            pairs += 1;
        }
    }
    Ok(format!("100 random triples; {pairs} word pairs certified"))
}

fn antipode_and_inversion() -> Outcome {
    let mut db = seeded()?;
    let mut tiers = std::collections::BTreeMap::<String, usize>::new();
    let mut count = 0;
    for (n0, idx) in index_sets() {
        let args = if idx.len() == 1 { vec![v("x")] } else { vec![v("x"), v("y")] };
        let s = LiSym::new(n0, idx, args).map_err(e)?;
        prepare_stuffle_antipode(&mut db, &s).map_err(e)?;
        let mut certs = vec![verify_stuffle_antipode(&db, &s).map_err(e)?];
        if s.weight() >= 2 {
            prepare_inversion(&mut db, &s).map_err(e)?;
            certs.push(verify_inversion(&db, &s).map_err(e)?);
        }
        for c in certs {
            ensure(c.certified, || c.to_string())?;
            *tiers.entry(c.method.clone()).or_default() += 1;
            count += 1;
        }
    }
    let used: Vec<String> = tiers.iter().map(|(t, n)| format!("{t}: {n}")).collect();
    Ok(format!("{count} certificates; {}", used.join(", ")))
}

fn twenty_two_term() -> Outcome {
    let ctx = Ctx::rational();
    let c = verify_22_term(&ctx, &v("a"), &v("b"), &v("c"), None).map_err(e)?;
    ensure(c.certified, || c.to_string())?;
    let mut s = Sampler::new(110);
    let mut points = Vec::new();
    while points.len() < 5 {
        let (a, b, c) = (s.nonzero_rational(), s.nonzero_rational(), s.nonzero_rational());
        let Ok(rows) = twenty_two_terms(&a, &b, &c) else { continue };
        if rows.iter().any(|(_, u)| u.is_zero()) {
            continue;
        }
        let terms: Vec<(Rational, Rational)> = rows.iter().map(|(k, u)| (Rational::from_integer((*k).into()), as_rat(u))).collect();
        ensure(trilog_oracle(&terms).is_empty(), || format!("oracle nonzero at ({a}, {b}, {c})"))?;
        let cert = verify_22_term(&ctx, &a, &b, &c, None).map_err(e)?;
        ensure(cert.certified, || cert.to_string())?;
        points.push((a, b, c));
    }
    let (a, b, c) = &points[0];
    let start = Instant::now();
    let st2 = verify_22_term(&ctx, a, b, c, Some(&Budget::default())).map_err(e)?;
    Ok(format!(
        "stage 1 zero symbolically and at 5 rational triples; stage 2 at ({a}, {b}, {c}): {} ({} legs, {})",
        st2.detail("stage2").unwrap_or("?"),
        st2.detail("stage2_legs_shown").unwrap_or("?"),
        secs(start.elapsed())
    ))
}

fn negative_regression() -> Outcome {
    let li2 = li_to_hopf(&LiSym::new(0, vec![2], vec![v("x")]).map_err(e)?);
    let d = coproduct(&li2).reduced();
    ensure(!d.is_zero(), || "reduced coproduct of Li2 vanished".into())?;
    Ok(format!("reduced coproduct of Li[2](x) = {d}"))
}

fn depth_drop() -> Outcome {
    let ctx = Ctx::rational();
    let p = SpecPoint::at(Var::new("s"), q(0)).map_err(e)?;
    let mut sm = Sampler::new(112);
    for _ in 0..50 {
        let l = family(&mut sm, false);
        let sp = specialize(&ctx, &li_to_lie(&ctx, &l).map_err(e)?, &p).map_err(e)?;
        ensure(depth_bound(&sp) < l.depth(), || format!("{l:?} specializes to {sp}"))?;
    }
    for _ in 0..20 {
        let l = family(&mut sm, true);
        let sp = specialize(&ctx, &li_to_lie(&ctx, &l).map_err(e)?, &p).map_err(e)?;
        ensure(sp.is_zero(), || format!("{l:?} specializes to {sp}"))?;
    }
    Ok("50 families within D_(k-1); 20 single-zero families give exactly 0".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cobracket laws", cobracket_laws),
        ("well-definedness", well_definedness),
        ("specialization commutation", specialization_square),
        ("five-term certification", five_term),
        ("derivation pipeline", derivation_pipeline),
        ("identity certificates", identity_certificates),
        ("Goncharov coproduct", goncharov_coproduct_checks),
        ("quasi-shuffle", quasi_shuffle),
        ("stuffle-antipode and inversion", antipode_and_inversion),
        ("22-term relation", twenty_two_term),
        ("negative regression", negative_regression),
        ("depth drop", depth_drop),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
