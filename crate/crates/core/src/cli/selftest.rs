//! A smoke run of the structural properties at small sample counts.

use crate::coalg::{cobracket, cojacobi, normalize};
use crate::error::Result;
use crate::field::{Ctx, FieldElem, Var};
use crate::hopf::{coassociativity_sides, IISym};
use crate::special::{specialize, specialize_wedge, SpecPoint};

use super::sample::Sampler;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Antisymmetry and coJacobi on random symbols of weight 2 to 5.
pub fn cobracket_laws(ctx: &Ctx, s: &mut Sampler, n: usize) -> Result<Check> {
    let mut failures = 0;
    for i in 0..n {
        let e = normalize(ctx, &s.tuple(2 + i % 4))?;
        let d = cobracket(ctx, &e)?;
        if d.swapped().add(&d).refresh(ctx).is_zero() && cojacobi(ctx, &e)?.is_zero() {
            continue;
        }
        failures += 1;
    }
    Ok(Check { name: "cobracket laws", samples: n, failures })
}

/// Normal forms and cobrackets are unchanged by the defining relations.
pub fn well_defined(ctx: &Ctx, s: &mut Sampler, n: usize) -> Result<Check> {
    let mut failures = 0;
    let mut samples = 0;
    while samples < n {
        let w = 1 + samples % 4;
        let xs = s.tuple(w);
        let ys = s.move_for(w).apply(&xs);
        let (a, b) = (normalize(ctx, &xs)?, normalize(ctx, &ys)?);
        samples += 1;
        let same = a == b && cobracket(ctx, &a)?.refresh(ctx) == cobracket(ctx, &b)?.refresh(ctx);
        failures += usize::from(!same);
    }
    Ok(Check { name: "well-definedness", samples, failures })
}

/// Sp commutes with the cobracket.
pub fn specialization_square(ctx: &Ctx, s: &mut Sampler, n: usize) -> Result<Check> {
    let mut failures = 0;
    for i in 0..n {
        let e = normalize(ctx, &s.tuple(2 + i % 3))?;
        let p = SpecPoint::new(s.var(), s.center())?;
        let lhs = cobracket(ctx, &specialize(ctx, &e, &p)?)?.refresh(ctx);
        let rhs = specialize_wedge(ctx, &cobracket(ctx, &e)?, &p)?;
        failures += usize::from(lhs != rhs);
    }
    Ok(Check { name: "specialization square", samples: n, failures })
}

/// Every iterated integral of weight at most `max_weight` with entries
/// in `entries`.
pub fn all_ii(entries: &[FieldElem], max_weight: usize) -> Vec<IISym> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        let mut idx = vec![0usize; w + 2];
        loop {
            let pts: Vec<FieldElem> = idx.iter().map(|&i| entries[i].clone()).collect();
            out.push(IISym::from_points(&pts));
            let mut j = 0;
            while j < idx.len() && idx[j] + 1 == entries.len() {
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
            idx[j] += 1;
        }
    }
    out
}

/// (Delta (x) 1) Delta = (1 (x) Delta) Delta over {0, 1, t, s}.
pub fn coassociativity(max_weight: usize) -> Check {
    let entries =
        [FieldElem::zero(), FieldElem::one(), FieldElem::var(Var::new("t")), FieldElem::var(Var::new("s"))];
    let syms = all_ii(&entries, max_weight);
    let failures = syms
        .iter()
        .filter(|s| {
            let (l, r) = coassociativity_sides(s);
            l != r
        })
        .count();
    Check { name: "coassociativity", samples: syms.len(), failures }
}

pub fn run(seed: u64, samples: usize) -> Result<Vec<Check>> {
    let ctx = Ctx::rational();
    let mut s = Sampler::new(seed);
    Ok(vec![
        cobracket_laws(&ctx, &mut s, samples)?,
        well_defined(&ctx, &mut s, samples)?,
        specialization_square(&ctx, &mut s, samples)?,
        coassociativity(2),
    ])
}
