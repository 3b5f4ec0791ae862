//! Local standard bases for ideals via Mora's normal form (bounded écart
//! reduction), with respect to the local degree order.

use crate::error::{AlgebraError, Result};
use crate::monomial::MonomialOrder;

use super::vector::{ModuleOrder, Vector};

/// Reduction steps allowed per normal form computation.
pub const MORA_BUDGET: u64 = 1_000_000;

fn ecart(v: &Vector) -> u32 {
    v.degree() - v.terms[0].0.mono.deg()
}

/// Weak normal form: the result is zero iff `f` lies in the localized ideal
/// generated by `basis`, provided `basis` is a standard basis.
pub fn mora_normal_form(f: Vector, basis: &[Vector], order: &ModuleOrder) -> Result<Vector> {
    let mut h = f;
    let mut extra: Vec<Vector> = Vec::new();
    let mut steps = 0u64;
    loop {
        let Some((lt, lc)) = h.terms.first().cloned() else {
            return Ok(h);
        };
        let mut best: Option<(&Vector, u32)> = None;
        for g in basis.iter().chain(extra.iter()) {
            let gt = &g.terms[0].0;
            if gt.pos == lt.pos && gt.mono.divides(&lt.mono) {
                let e = ecart(g);
                if best.map_or(true, |(_, b)| e < b) {
                    best = Some((g, e));
                }
            }
        }
        let Some((g, eg)) = best else {
            return Ok(h);
        };
        let g = g.clone();
        if eg > ecart(&h) {
            extra.push(h.clone());
        }
        let q = g.terms[0].0.mono.quotient_of(&lt.mono).expect("divisible");
        let c = lc.div(&g.terms[0].1).expect("nonzero lead");
        h = h.sub_mul(0, &c, &q, &g, order);
        steps += 1;
        if steps > MORA_BUDGET {
            return Err(AlgebraError::BudgetExceeded("Mora normal form".into()));
        }
    }
}

/// Standard basis of the ideal generated by `gens` (rank-one vectors) in the
/// localization at the origin. A basis containing a constant means the unit ideal.
pub fn standard_basis(gens: Vec<Vector>, nvars: usize) -> Result<Vec<Vector>> {
    let order = ModuleOrder::top(MonomialOrder::local(nvars));
    let mut basis: Vec<Vector> = Vec::new();
    for mut g in gens.into_iter().filter(|g| !g.is_zero()) {
        g.resort(&order);
        g.make_monic();
        basis.push(g);
    }
    if let Some(u) = basis.iter().find(|g| g.terms[0].0.mono.is_one()) {
        return Ok(vec![unit_like(u)]);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // lowest lcm degree first
        let k = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| {
                let l = basis[*i].terms[0].0.mono.lcm(&basis[*j].terms[0].0.mono);
                (l.deg(), *i, *j)
            })
            .map(|(k, _)| k)
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.terms[0].0.mono.is_coprime(&fj.terms[0].0.mono) {
            continue;
        }
        let lcm = fi.terms[0].0.mono.lcm(&fj.terms[0].0.mono);
        let mi = fi.terms[0].0.mono.quotient_of(&lcm).unwrap();
        let mj = fj.terms[0].0.mono.quotient_of(&lcm).unwrap();
        let one = fi.terms[0].1.field().one();
        let s = fi.mul_term(&one, &mi).sub_mul(0, &one, &mj, fj, &order);
        let mut h = mora_normal_form(s, &basis, &order)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.terms[0].0.mono.is_one() {
            return Ok(vec![unit_like(&h)]);
        }
        let n = basis.len();
        for i in 0..n {
            pairs.push((i, n));
        }
        basis.push(h);
    }
    // minimal standard basis: drop elements whose lead is divisible by another lead
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && keep[j] {
                let (ti, tj) = (&basis[i].terms[0].0.mono, &basis[j].terms[0].0.mono);
                if tj.divides(ti) && (tj != ti || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    Ok(basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect())
}

fn unit_like(u: &Vector) -> Vector {
    let one = u.terms[0].1.field().one();
    Vector {
        terms: vec![(u.terms[0].0, one)],
    }
}
