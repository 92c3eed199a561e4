//! Shared helpers: an exact oracle for rational arguments that works with
//! prime factorizations instead of the library's factor base, samplers
//! and the bookkeeping for the coproduct checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polylog::cli::sample::Sampler;
use polylog::coalg::Wedge;
use polylog::field::{Ctx, FieldElem, Rational, Var};
use polylog::hopf::{coproduct, goncharov_coproduct, ii_to_lie, li_to_hopf, IISym, LiSym, Mono, QSWord};

pub fn v(s: &str) -> FieldElem {
    FieldElem::var(Var::new(s))
}

pub fn q(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

pub fn frac(p: i64, d: i64) -> FieldElem {
    FieldElem::from_rational(Rational::new(p.into(), d.into()))
}

/// Exponent vector of a nonzero rational in Q^x (x) Q; the sign is torsion.
pub fn factor(x: &Rational) -> BTreeMap<u64, i64> {
    assert!(!x.is_zero());
    let mut out = BTreeMap::new();
    for (n, sign) in [(x.numer().abs(), 1), (x.denom().abs(), -1)] {
        let mut n: BigInt = n;
        let mut p = 2u64;
        while n > BigInt::one() {
            let bp = BigInt::from(p);
            if &bp * &bp > n {
                let last = n.to_u64().expect("small prime");
                *out.entry(last).or_insert(0) += sign;
                break;
            }
            while n.is_multiple_of(&bp) {
                n /= &bp;
                *out.entry(p).or_insert(0) += sign;
            }
            p += 1;
        }
    }
    out.retain(|_, e| *e != 0);
    out
}

pub type Wedge2 = BTreeMap<(u64, u64), Rational>;
pub type Wedge2x1 = BTreeMap<(u64, u64, u64), Rational>;

fn bump<K: Ord>(m: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    let e = m.entry(k).or_insert_with(Rational::zero);
    *e += c;
}

/// x ^ (1 - x) in the exterior square, in prime coordinates.
pub fn delta2(x: &Rational) -> Wedge2 {
    let mut w = Wedge2::new();
    let y = Rational::one() - x;
    if x.is_zero() || y.is_zero() {
        return w;
    }
    for (&p, &a) in &factor(x) {
        for (&r, &b) in &factor(&y) {
            let c = Rational::from_integer((a * b).into());
            match p.cmp(&r) {
                std::cmp::Ordering::Less => bump(&mut w, (p, r), c),
                std::cmp::Ordering::Greater => bump(&mut w, (r, p), -c),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    w.retain(|_, c| !c.is_zero());
    w
}

/// sum c_i {x_i}_2 -> sum c_i x_i ^ (1 - x_i).
pub fn bloch_oracle(terms: &[(Rational, Rational)]) -> Wedge2 {
    let mut w = Wedge2::new();
    for (c, x) in terms {
        for (k, d) in delta2(x) {
            bump(&mut w, k, c * d);
        }
    }
    w.retain(|_, c| !c.is_zero());
    w
}

/// sum c_i {x_i}_3 -> sum c_i (x_i ^ (1 - x_i)) (x) x_i.
pub fn trilog_oracle(terms: &[(Rational, Rational)]) -> Wedge2x1 {
    let mut w = Wedge2x1::new();
    for (c, x) in terms {
        if x.is_zero() {
            continue;
        }
        let f = factor(x);
        for ((p, r), d) in delta2(x) {
            for (&s, &e) in &f {
                bump(&mut w, (p, r, s), c * &d * Rational::from_integer(e.into()));
            }
        }
    }
    w.retain(|_, c| !c.is_zero());
    w
}

pub fn as_rat(x: &FieldElem) -> Rational {
    x.as_rational().expect("rational constant")
}

#[test]
fn oracle_sanity() {
    let r = |p: i64, d: i64| Rational::new(p.into(), d.into());
    assert_eq!(factor(&r(12, 5)), BTreeMap::from([(2, 2), (3, 1), (5, -1)]));
    // 2 ^ (1 - 2) = 2 ^ (-1) is torsion
    assert!(delta2(&r(2, 1)).is_empty());
    assert_eq!(delta2(&r(3, 1)), Wedge2::from([((2, 3), r(-1, 1))]));
    assert!(!bloch_oracle(&[(r(1, 1), r(3, 1))]).is_empty());
}

/// The weight-one letters log(b) - log(a) with log 0 = log 1 = 0: a
/// factor I(a; 0^j; b) is (log b - log a)^j / j!. Returns the polynomial
/// in L = log x, or None when a factor has a nonzero middle entry.
pub fn log_power(m: &Mono, x: &FieldElem) -> Option<BTreeMap<usize, Rational>> {
    let mut p = BTreeMap::from([(0usize, Rational::one())]);
    for f in m.factors() {
        if f.mid().iter().any(|y| !y.is_zero()) {
            return None;
        }
        let l = |y: &FieldElem| if y == x { 1i64 } else { 0 };
        let d = Rational::from_integer((l(f.upper()) - l(f.lower())).into());
        let j = f.weight();
        let fact: Rational = (1..=j).map(|i| Rational::from_integer((i as i64).into())).product();
        let c = num_traits::pow(d, j) / fact;
        p = p.into_iter().map(|(e, a)| (e + j, a * &c)).collect();
    }
    p.retain(|_, c| !c.is_zero());
    Some(p)
}

/// Both legs of the reduced coproduct sent to the indecomposables.
pub fn projected(ctx: &Ctx, s: &IISym) -> Wedge {
    let mut w = Wedge::zero();
    for ((a, b), c) in goncharov_coproduct(s).reduced().iter() {
        if let ([a], [b]) = (a.factors(), b.factors()) {
            w.add_wedge(&ii_to_lie(ctx, a).unwrap(), &ii_to_lie(ctx, b).unwrap(), c);
        }
    }
    w.refresh(ctx)
}

/// The double sum over 0 <= i < j <= n + 1.
pub fn double_sum(ctx: &Ctx, s: &IISym) -> Wedge {
    let x = s.points();
    let n = s.weight();
    let mut w = Wedge::zero();
    for i in 0..=n {
        for j in i + 2..=n + 1 {
            if i == 0 && j == n + 1 {
                continue;
            }
            let mut outer: Vec<FieldElem> = x[1..=i].to_vec();
            outer.extend_from_slice(&x[j..=n]);
            let a = IISym::new(x[0].clone(), outer, x[n + 1].clone());
            let b = IISym::from_points(&x[i..=j]);
            w.add_wedge(&ii_to_lie(ctx, &a).unwrap(), &ii_to_lie(ctx, &b).unwrap(), &Rational::one());
        }
    }
    w.refresh(ctx)
}

/// A random family over Q(s) with k arguments, at least one of which has a
/// zero or a pole at s = 0; with `one_zero` exactly one argument vanishes
/// there and the others are regular and nonzero.
pub fn family(sm: &mut Sampler, one_zero: bool) -> LiSym {
    let s = v("s");
    let regular = |sm: &mut Sampler| match sm.range(0, 3) {
        0 => sm.nonzero_rational(),
        1 => s.add(&q(sm.range(2, 4))),
        2 => s.add(&q(1)).div(&s.sub(&q(2))).unwrap(),
        _ => s.mul(&s).sub(&q(3)),
    };
    let singular = |sm: &mut Sampler| match sm.range(0, 3) {
        0 => s.mul(&sm.nonzero_rational()),
        1 => s.mul(&s.add(&q(1))),
        2 => s.inv().unwrap(),
        _ => s.mul(&s),
    };
    let k = sm.range(1, 2) as usize;
    let hit = sm.range(0, k as i64 - 1) as usize;
    let mut args = Vec::new();
    for i in 0..k {
        let a = if i == hit {
            if one_zero {
                s.mul(&sm.nonzero_rational())
            } else {
                singular(sm)
            }
        } else if one_zero || sm.range(0, 1) == 0 {
            regular(sm)
        } else {
            singular(sm)
        };
        args.push(a);
    }
    loop {
        let idx: Vec<u32> = (0..k).map(|_| sm.range(1, 2) as u32).collect();
        let n0 = sm.range(0, 1) as u32;
        if n0 as usize + idx.iter().map(|&n| n as usize).sum::<usize>() <= 4 {
            return LiSym::new(n0, idx, args).unwrap();
        }
    }
}

pub fn word(sm: &mut Sampler, len: usize) -> QSWord {
    let letters = [v("x"), v("y"), q(2), v("x").inv().unwrap()];
    QSWord::new((0..len).map(|_| (sm.range(1, 2) as u32, sm.pick(&letters).clone())).collect()).unwrap()
}

pub fn words_up_to_three() -> Vec<QSWord> {
    let (x, y) = (v("x"), v("y"));
    let mut out = Vec::new();
    for comp in [vec![1], vec![2], vec![3], vec![1, 1], vec![1, 2], vec![2, 1], vec![1, 1, 1]] {
        for mask in 0..1u32 << comp.len() {
            let letters = comp
                .iter()
                .enumerate()
                .map(|(i, &n)| (n, if mask >> i & 1 == 1 { y.clone() } else { x.clone() }))
                .collect();
            out.push(QSWord::new(letters).unwrap());
        }
    }
    out
}

/// (n0; n1, ..., nk) with weight at most 3 and depth 1 or 2.
pub fn index_sets() -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    for n0 in 0..=2u32 {
        for n1 in 1..=3u32 {
            if n0 + n1 <= 3 {
                out.push((n0, vec![n1]));
            }
            for n2 in 1..=2u32 {
                if n0 + n1 + n2 <= 3 {
                    out.push((n0, vec![n1, n2]));
                }
            }
        }
    }
    out
}

pub type LogPowers = BTreeMap<Mono, BTreeMap<usize, Rational>>;

/// Reduced coproduct of Li_n(x) with every right factor read as a power
/// of log x, against sum_j Li_{n-j}(x) (x) (log x)^j / j!.
pub fn lincoproduct_sides(n: u32, x: &FieldElem) -> (LogPowers, LogPowers) {
    let li = |m: u32| li_to_hopf(&LiSym::new(0, vec![m], vec![x.clone()]).unwrap());
    let mut got = LogPowers::new();
    for ((a, b), c) in coproduct(&li(n)).reduced().iter() {
        let p = log_power(b, x).unwrap_or_else(|| panic!("right factor {b} is not a log power"));
        let slot = got.entry(a.clone()).or_default();
        for (e, k) in p {
            *slot.entry(e).or_insert_with(Rational::zero) += k * c;
        }
    }
    got.values_mut().for_each(|p| p.retain(|_, c| !c.is_zero()));
    got.retain(|_, p| !p.is_empty());
    let mut want = LogPowers::new();
    for j in 1..n {
        let fact: Rational = (1..=j).map(|i| Rational::from_integer(i64::from(i).into())).product();
        for (m, c) in li(n - j).iter() {
            want.insert(m.clone(), BTreeMap::from([(j as usize, c / &fact)]));
        }
    }
    (got, want)
}
