mod common;

use common::{double_sum, family, index_sets, lincoproduct_sides, projected, q, v, word, words_up_to_three};
use num_traits::One;
use polylog::cli::sample::Sampler;
use polylog::cli::selftest::all_ii;
use polylog::coalg::cobracket;
use polylog::field::{rat, Ctx, FieldElem, Rational, Var};
use polylog::hopf::*;
use polylog::relations::{seed, RelationDB};
use polylog::special::{specialize, SpecPoint};
use proptest::prelude::*;

fn entries() -> Vec<FieldElem> {
    vec![q(0), q(1), v("t"), v("s")]
}

#[test]
fn coassociativity_through_weight_three() {
    for s in all_ii(&entries(), 3) {
        let (l, r) = coassociativity_sides(&s);
        assert_eq!(l, r, "{s}");
    }
}

#[test]
fn counit() {
    let mut sm = Sampler::new(4);
    for w in 1..=4 {
        let s = sm.ii(w, &entries());
        if s.is_zero() {
            continue;
        }
        let d = goncharov_coproduct(&s);
        let h = HopfElem::sym(s.clone());
        assert_eq!(d.bidegree(w), {
            let mut t = HopfTensor::default();
            t.add_product(&h, &HopfElem::one(), &Rational::one());
            t
        });
        assert_eq!(d.bidegree(0), {
            let mut t = HopfTensor::default();
            t.add_product(&HopfElem::one(), &h, &Rational::one());
            t
        });
    }
}

#[test]
fn li_n_coproduct_is_li_times_log_powers() {
    for n in 2..=4u32 {
        let (got, want) = lincoproduct_sides(n, &v("x"));
        assert_eq!(got, want, "n = {n}");
    }
}

#[test]
fn log_powers_by_shuffle() {
    let x = v("x");
    let log = IISym::new(q(0), vec![q(0)], x.clone());
    let mut p = HopfElem::one();
    for j in 1..=4usize {
        p = p.mul(&HopfElem::sym(log.clone()));
        let fact: i64 = (1..=j as i64).product();
        let want = HopfElem::sym(IISym::new(q(0), vec![q(0); j], x.clone())).scale(&rat(fact));
        assert_eq!(p, want, "j = {j}");
        let a = IISym::new(q(0), vec![q(0); j], x.clone());
        assert_eq!(shuffle_product(&a, &log).unwrap(), HopfElem::sym(IISym::new(q(0), vec![q(0); j + 1], x.clone())).scale(&rat(j as i64 + 1)));
    }
}

#[test]
fn coproduct_projects_to_the_cobracket() {
    let ctx = Ctx::rational();
    let check = |s: &IISym| {
        let p = projected(&ctx, s);
        assert_eq!(p, double_sum(&ctx, s), "{s}");
        assert_eq!(p, cobracket(&ctx, &ii_to_lie(&ctx, s).unwrap()).unwrap().refresh(&ctx), "{s}");
    };
    for s in all_ii(&entries(), 3).iter().filter(|s| s.weight() >= 2) {
        check(s);
    }
    let mut sm = Sampler::new(43);
    let pool = [q(0), q(1), q(-1), v("t"), v("s"), v("t").add(&q(1))];
    for _ in 0..60 {
        check(&sm.ii(4, &pool));
    }
}

#[test]
fn depth_is_not_a_coalgebra_filtration() {
    let li2 = li_to_hopf(&LiSym::new(0, vec![2], vec![v("x")]).unwrap());
    assert!(!coproduct(&li2).reduced().is_zero());
}

#[test]
fn affine_invariance() {
    let ctx = Ctx::rational();
    let mut sm = Sampler::new(11);
    for i in 0..100 {
        let w = 2 + i % 3;
        let pts = sm.tuple(w + 1);
        let a = loop {
            let a = sm.elem();
            if !a.is_zero() {
                break a;
            }
        };
        let b = sm.elem();
        let moved: Vec<FieldElem> = pts.iter().map(|x| x.mul(&a).add(&b)).collect();
        let l = ii_to_lie(&ctx, &IISym::from_points(&pts)).unwrap();
        let r = ii_to_lie(&ctx, &IISym::from_points(&moved)).unwrap();
        assert_eq!(l, r, "{pts:?} under {a} x + {b}");
    }
}

#[test]
fn path_composition_counts() {
    let (x0, x1, x2, a) = (v("x0"), v("x1"), v("x2"), v("a"));
    let s = IISym::new(x0.clone(), vec![x1.clone()], x2.clone());
    let want = HopfElem::sym(IISym::new(a.clone(), vec![x1.clone()], x2.clone()))
        .add(&HopfElem::sym(IISym::new(x0.clone(), vec![x1.clone()], a.clone())));
    assert_eq!(path_compose(&s, &a), want);
    let s2 = IISym::new(x0, vec![x1, v("y")], x2);
    assert_eq!(path_compose(&s2, &a).len(), 3);
}

#[test]
fn depth_drops_under_specialization() {
    let ctx = Ctx::rational();
    let p = SpecPoint::at(Var::new("s"), q(0)).unwrap();
    let mut sm = Sampler::new(12);
    for _ in 0..50 {
        let l = family(&mut sm, false);
        let sp = specialize(&ctx, &li_to_lie(&ctx, &l).unwrap(), &p).unwrap();
        assert!(depth_bound(&sp) < l.depth(), "{l:?} -> {sp}");
    }
    for _ in 0..30 {
        let l = family(&mut sm, true);
        let sp = specialize(&ctx, &li_to_lie(&ctx, &l).unwrap(), &p).unwrap();
        assert!(sp.is_zero(), "{l:?} -> {sp}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quasi_shuffle_is_commutative_and_associative(seed in any::<u64>(), la in 0usize..=3, lb in 0usize..=3, lc in 0usize..=2) {
        let mut sm = Sampler::new(seed);
        let (a, b, c) = (word(&mut sm, la), word(&mut sm, lb), word(&mut sm, lc));
        prop_assert_eq!(qshuffle(&a, &b), qshuffle(&b, &a));
        prop_assert_eq!(shuffle_words(&a, &b), shuffle_words(&b, &a));
        let (wa, wc) = (WordComb::single(a.clone()), WordComb::single(c.clone()));
        let left = qshuffle(&a, &b).product(&wc, qshuffle);
        let right = wa.product(&qshuffle(&b, &c), qshuffle);
        prop_assert_eq!(left, right);
    }
}

#[test]
fn quasi_shuffle_unit() {
    let w = QSWord::new(vec![(1, v("x")), (2, v("y"))]).unwrap();
    assert_eq!(qshuffle(&QSWord::empty(), &w), WordComb::single(w.clone()));
    assert_eq!(shuffle_words(&w, &QSWord::empty()), WordComb::single(w));
}

fn seeded() -> RelationDB {
    let mut db = RelationDB::new(Ctx::rational());
    seed(&mut db).unwrap();
    db
}

#[test]
fn li_is_a_quasi_shuffle_homomorphism() {
    let mut db = seeded();
    let words = words_up_to_three();
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            if a.weight() + b.weight() > 3 {
                continue;
            }
            prepare_li_homomorphism(&mut db, a, b).unwrap();
            let c = verify_li_homomorphism(&db, a, b).unwrap();
            assert!(c.certified, "{c}");
            pairs += 1;
        }
    }
    // two weight-one words, six of weight two
    assert_eq!(pairs, 2 * 2 + 2 * (2 * 6));
}

#[test]
fn stuffle_antipode_and_inversion() {
    let mut db = seeded();
    let (x, y) = (v("x"), v("y"));
    let sets = index_sets();
    assert_eq!(sets.len(), 10);
    for (n0, idx) in sets {
        let args = if idx.len() == 1 { vec![x.clone()] } else { vec![x.clone(), y.clone()] };
        let s = LiSym::new(n0, idx, args).unwrap();
        prepare_stuffle_antipode(&mut db, &s).unwrap();
        let c = verify_stuffle_antipode(&db, &s).unwrap();
        assert!(c.certified, "{c}");
        if s.weight() < 2 {
            assert!(prepare_inversion(&mut db, &s).is_err());
            continue;
        }
        prepare_inversion(&mut db, &s).unwrap();
        let c = verify_inversion(&db, &s).unwrap();
        assert!(c.certified, "{c}");
    }
    let s = LiSym::new(0, vec![3], vec![q(5)]).unwrap();
    prepare_inversion(&mut db, &s).unwrap();
    assert!(verify_inversion(&db, &s).unwrap().certified);
}

#[test]
fn depth_one_inversion() {
    let mut db = seeded();
    for x in [v("x"), q(3), q(-1)] {
        prepare_depth1_inversion(&mut db, &x).unwrap();
        for n in 1..=3 {
            let c = verify_depth1_inversion(&db, n, &x).unwrap();
            assert!(c.certified, "{c}");
        }
    }
}

#[test]
fn cyclic_symmetry_modulo_depth() {
    let db = seeded();
    let xs = [v("x1"), q(0), v("x3")];
    for i in [1, 2] {
        if i == 2 {
            assert!(verify_cyclic_mod_depth(&db, &xs, i).is_err());
            continue;
        }
        assert!(verify_cyclic_mod_depth(&db, &xs, i).unwrap().certified);
    }
}

#[test]
fn distribution_for_iterated_integrals() {
    let mut db = seeded();
    for w in 1..=2 {
        let s = IISym::new(q(0), (1..=w).map(|i| v(&format!("x{i}"))).collect(), v("y"));
        prepare_distribution_hopf(&mut db, 2, &s).unwrap();
        let c = verify_distribution_hopf(&db, 2, &s).unwrap();
        assert!(c.certified, "{c}");
    }
}
