//! Buchberger's algorithm for submodules of free modules under a global order,
//! with normal selection by sugar degree and Buchberger's two criteria.

use std::collections::HashSet;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

use super::vector::{ModTerm, ModuleOrder, Vector};

/// Upper bound on reduction steps in one basis computation.
const REDUCTION_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: ModuleOrder,
    pub field: Field,
    pub elems: Vec<Vector>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ModTerm,
    sugar: u32,
}

struct Reducer<'a> {
    basis: &'a [Vector],
    order: &'a ModuleOrder,
    steps: u64,
}

impl Reducer<'_> {
    fn find(&self, t: &ModTerm, skip: Option<usize>) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, g) in self.basis.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            let lt = &g.terms[0].0;
            if lt.pos == t.pos && lt.mono.divides(&t.mono) {
                match best {
                    Some(b) if self.basis[b].terms.len() <= g.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Full reduction: no term of the result is divisible by a basis lead.
    fn reduce(&mut self, f: Vector, skip: Option<usize>) -> Result<Vector> {
        let mut p = f;
        let mut done = Vec::new();
        // p.terms[..h] are irreducible and already copied into `done`
        let mut h = 0;
        while h < p.terms.len() {
            let t = p.terms[h].0;
            match self.find(&t, skip) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.terms[0].0.mono.quotient_of(&t.mono).expect("divisible");
                    let c = p.terms[h].1.clone();
                    p = p.sub_mul(h, &c, &q, g, self.order);
                    h = 0;
                    self.steps += 1;
                    if self.steps > REDUCTION_BUDGET {
                        return Err(AlgebraError::BudgetExceeded("Groebner reduction".into()));
                    }
                }
                None => {
                    done.push(p.terms[h].clone());
                    h += 1;
                }
            }
        }
        Ok(Vector { terms: done })
    }
}

impl GroebnerBasis {
    /// Computes the reduced basis of the submodule generated by `gens`.
    pub fn compute(gens: Vec<Vector>, order: ModuleOrder, field: Field) -> Result<GroebnerBasis> {
        assert!(order.mono.is_global(), "Buchberger requires a global order");
        let mut basis: Vec<Vector> = Vec::new();
        let mut sugar: Vec<u32> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let mut steps = 0u64;

        let mut inputs: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
        for v in inputs.iter_mut() {
            v.resort(&order);
        }
        // smaller leads first keeps early reductions cheap
        inputs.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
        // the product criterion is only valid for ideals
        let rank_one = order.elim_block == 0 && inputs.iter().all(|v| v.terms.iter().all(|(t, _)| t.pos == 0));

        let mut queue: Vec<(Vector, u32)> = inputs
            .into_iter()
            .map(|v| {
                let d = v.degree();
                (v, d)
            })
            .collect();
        queue.reverse();

        loop {
            let (candidate, cand_sugar) = if let Some(item) = queue.pop() {
                item
            } else {
                // select the pair of minimal sugar, ties by smaller lcm
                let best = pairs
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        a.sugar
                            .cmp(&b.sugar)
                            .then_with(|| order.cmp(&a.lcm, &b.lcm))
                            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
                    })
                    .map(|(k, _)| k);
                let Some(k) = best else { break };
                let pair = pairs.swap_remove(k);
                pending.remove(&(pair.i, pair.j));
                if chain_criterion(&pair, &basis, &pending) {
                    continue;
                }
                let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm, &order);
                (s, pair.sugar)
            };
            let mut red = Reducer {
                basis: &basis,
                order: &order,
                steps,
            };
            let mut h = red.reduce(candidate, None)?;
            steps = red.steps;
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            let k = basis.len();
            let lt = h.terms[0].0;
            for (i, g) in basis.iter().enumerate() {
                let gt = g.terms[0].0;
                if gt.pos != lt.pos {
                    continue;
                }
                let lcm = gt.mono.lcm(&lt.mono);
                if rank_one && gt.mono.is_coprime(&lt.mono) {
                    continue;
                }
                let s = (sugar[i] + lcm.deg() - gt.mono.deg()).max(cand_sugar + lcm.deg() - lt.mono.deg());
                pairs.push(Pair {
                    i,
                    j: k,
                    lcm: ModTerm { mono: lcm, pos: lt.pos },
                    sugar: s,
                });
                pending.insert((i, k));
            }
            basis.push(h);
            sugar.push(cand_sugar);
        }

        Ok(GroebnerBasis {
            elems: interreduce(basis, &order)?,
            order,
            field,
        })
    }

    pub fn leads(&self) -> impl Iterator<Item = &ModTerm> {
        self.elems.iter().map(|g| &g.terms[0].0)
    }

    /// Full normal form of `v` (which must be sorted in `self.order`).
    pub fn reduce(&self, v: Vector) -> Result<Vector> {
        let mut r = Reducer {
            basis: &self.elems,
            order: &self.order,
            steps: 0,
        };
        r.reduce(v, None)
    }

    pub fn contains(&self, v: Vector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elems.iter().any(|g| g.terms[0].0.mono.is_one())
    }
}

fn spoly(f: &Vector, g: &Vector, lcm: &ModTerm, order: &ModuleOrder) -> Vector {
    let mf = f.terms[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
    let mg = g.terms[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
    let field_one = f.terms[0].1.field().one();
    // both are monic
    let a = f.mul_term(&field_one, &mf);
    a.sub_mul(0, &field_one, &mg, g, order)
}

/// Buchberger's chain criterion: skip `(i, j)` when some `k` has a lead dividing
/// the lcm and neither `(i, k)` nor `(j, k)` is still pending.
fn chain_criterion(pair: &Pair, basis: &[Vector], pending: &HashSet<(usize, usize)>) -> bool {
    for (k, g) in basis.iter().enumerate() {
        if k == pair.i || k == pair.j {
            continue;
        }
        let lt = &g.terms[0].0;
        if lt.pos != pair.lcm.pos || !lt.mono.divides(&pair.lcm.mono) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        if !pending.contains(&key(pair.i, k)) && !pending.contains(&key(pair.j, k)) {
            return true;
        }
    }
    false
}

fn interreduce(basis: Vec<Vector>, order: &ModuleOrder) -> Result<Vec<Vector>> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let ti = basis[i].terms[0].0;
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let tj = basis[j].terms[0].0;
            if tj.pos == ti.pos && tj.mono.divides(&ti.mono) && (tj.mono != ti.mono || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Vector> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut r = Reducer {
            basis: &minimal,
            order,
            steps: 0,
        };
        let lead = minimal[i].terms[0].clone();
        let tail = Vector {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut reduced = r.reduce(tail, Some(i))?;
        reduced.terms.insert(0, lead);
        out.push(reduced);
    }
    out.sort_by(|a, b| order.cmp(&a.terms[0].0, &b.terms[0].0));
    Ok(out)
}
