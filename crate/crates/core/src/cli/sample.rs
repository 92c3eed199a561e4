//! Seeded random inputs for property checks.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Center, FieldElem, Rational, Var};
use crate::hopf::{IISym, LiSym};

pub struct Sampler {
    rng: ChaCha8Rng,
    var: Var,
}

/// A relation of the correlator coalgebra applied to a tuple.
#[derive(Clone, Debug)]
pub enum Move {
    Rotate(usize),
    Translate(FieldElem),
    Scale(FieldElem),
}

impl Move {
    pub fn apply(&self, xs: &[FieldElem]) -> Vec<FieldElem> {
        match self {
            Move::Rotate(k) => {
                let mut v = xs.to_vec();
                v.rotate_left(k % xs.len());
                v
            }
            Move::Translate(a) => xs.iter().map(|x| x.add(a)).collect(),
            Move::Scale(m) => xs.iter().map(|x| x.mul(m)).collect(),
        }
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), var: Var::new("t") }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.rng.random_range(0..xs.len())]
    }

    pub fn rational(&mut self) -> FieldElem {
        let p = self.range(-5, 5);
        let q = self.range(1, 4);
        FieldElem::from_rational(Rational::new(p.into(), q.into()))
    }

    pub fn nonzero_rational(&mut self) -> FieldElem {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A low-degree element of Q(t).
    pub fn elem(&mut self) -> FieldElem {
        let t = FieldElem::var(self.var);
        let k = FieldElem::from_int(self.range(-3, 3));
        match self.range(0, 5) {
            0 => k,
            1 => t.add(&k),
            2 => t.mul(&self.nonzero_rational()),
            3 => t.mul(&t).sub(&k),
            4 => t.add(&k).div(&t.add(&FieldElem::from_int(self.range(4, 6)))).expect("nonzero denominator"),
            _ => self.rational(),
        }
    }

    pub fn tuple(&mut self, weight: usize) -> Vec<FieldElem> {
        (0..=weight).map(|_| self.elem()).collect()
    }

    pub fn rational_tuple(&mut self, weight: usize) -> Vec<FieldElem> {
        (0..=weight).map(|_| self.rational()).collect()
    }

    /// A random (A1), (A2) or (A4) move; scaling only in weight at least 2.
    pub fn move_for(&mut self, weight: usize) -> Move {
        let top = if weight >= 2 { 2 } else { 1 };
        match self.range(0, top) {
            0 => Move::Rotate(self.range(1, weight as i64) as usize),
            1 => Move::Translate(self.elem()),
            _ => loop {
                let m = self.elem();
                if !m.is_zero() {
                    break Move::Scale(m);
                }
            },
        }
    }

    pub fn center(&mut self) -> Center {
        match self.range(0, 4) {
            4 => Center::Infinity,
            k => Center::Finite(FieldElem::from_int([0, 1, -1, 2][k as usize])),
        }
    }

    pub fn ii(&mut self, weight: usize, entries: &[FieldElem]) -> IISym {
        let pts: Vec<FieldElem> = (0..weight + 2).map(|_| self.pick(entries).clone()).collect();
        IISym::from_points(&pts)
    }

    pub fn li(&mut self, max_weight: usize, max_depth: usize, args: &[FieldElem]) -> LiSym {
        let k = self.range(1, max_depth as i64) as usize;
        loop {
            let idx: Vec<u32> = (0..k).map(|_| self.range(1, 2) as u32).collect();
            let n0 = self.range(0, 1) as u32;
            let w = n0 as usize + idx.iter().map(|&n| n as usize).sum::<usize>();
            if w <= max_weight {
                let xs = (0..k).map(|_| self.pick(args).clone()).collect();
                return LiSym::new(n0, idx, xs).expect("valid indices");
            }
        }
    }
}
