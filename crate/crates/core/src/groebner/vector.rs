//! Sparse elements of a free module `S^r`, the common currency of the engine.
//! Ideals are handled as rank-one modules.

use std::cmp::Ordering;

use crate::field::{Field, FieldElem};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub mono: Monomial,
    pub pos: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionRule {
    /// Compare monomials first, then positions (lower position is larger).
    TermOverPosition,
    /// Compare positions first (lower position is larger), then monomials.
    PositionOverTerm,
}

/// A module term order. Positions below `elim_block` dominate every position
/// at or above it, which turns the order into an elimination order for the
/// leading block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub rule: PositionRule,
    pub elim_block: u32,
}

impl ModuleOrder {
    pub fn top(mono: MonomialOrder) -> Self {
        ModuleOrder {
            mono,
            rule: PositionRule::TermOverPosition,
            elim_block: 0,
        }
    }

    pub fn eliminating(mono: MonomialOrder, block: usize) -> Self {
        ModuleOrder {
            mono,
            rule: PositionRule::TermOverPosition,
            elim_block: block as u32,
        }
    }

    #[inline]
    pub fn cmp(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        let ea = a.pos < self.elim_block;
        let eb = b.pos < self.elim_block;
        if ea != eb {
            return if ea { Ordering::Greater } else { Ordering::Less };
        }
        match self.rule {
            PositionRule::TermOverPosition => self.mono.cmp(&a.mono, &b.mono).then_with(|| b.pos.cmp(&a.pos)),
            PositionRule::PositionOverTerm => b.pos.cmp(&a.pos).then_with(|| self.mono.cmp(&a.mono, &b.mono)),
        }
    }
}

/// Terms are kept strictly descending under the order the vector was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub terms: Vec<(ModTerm, FieldElem)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(ModTerm, FieldElem)> {
        self.terms.first()
    }

    pub fn from_terms(mut terms: Vec<(ModTerm, FieldElem)>, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(ModTerm, FieldElem)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc = lc.add(&c),
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { terms: out }
    }

    /// Vector from polynomial components, component `i` landing at position `offset + i`.
    pub fn from_polys(components: &[Poly], offset: usize, ord: &ModuleOrder) -> Self {
        let terms = components
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(m, c)| {
                    (
                        ModTerm {
                            mono: *m,
                            pos: (offset + i) as u32,
                        },
                        c.clone(),
                    )
                })
            })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Components at positions `start..start+len`, reindexed from zero.
    pub fn to_polys(&self, start: usize, len: usize, field: Field, nvars: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); len];
        for (t, c) in &self.terms {
            let p = t.pos as usize;
            if p >= start && p < start + len {
                buckets[p - start].push((t.mono, c.clone()));
            }
        }
        buckets.into_iter().map(|b| Poly::from_terms(field, nvars, b)).collect()
    }

    pub fn max_pos(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.pos).max()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(t, _)| t.mono.deg()).max().unwrap_or(0)
    }

    pub fn scale(&mut self, c: &FieldElem) {
        for (_, d) in self.terms.iter_mut() {
            *d = d.mul(c);
        }
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero lead");
                self.scale(&inv);
            }
        }
    }

    /// `self - c * m * other`, merging under `ord`. The first `skip` terms of
    /// `self` are dropped.
    pub fn sub_mul(&self, skip: usize, c: &FieldElem, m: &Monomial, other: &Vector, ord: &ModuleOrder) -> Vector {
        let a = &self.terms[skip..];
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |k: usize| -> ModTerm {
            let t = &other.terms[k].0;
            ModTerm {
                mono: t.mono.mul(m),
                pos: t.pos,
            }
        };
        let mut bj = if j < other.terms.len() { Some(shifted(0)) } else { None };
        while i < a.len() || bj.is_some() {
            let o = match (a.get(i), bj.as_ref()) {
                (Some(x), Some(y)) => ord.cmp(&x.0, y),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match o {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bj.unwrap(), other.terms[j].1.mul(c).neg()));
                    j += 1;
                    bj = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
                Ordering::Equal => {
                    let v = a[i].1.sub(&other.terms[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                    bj = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, other: &Vector, ord: &ModuleOrder, field: Field) -> Vector {
        self.sub_mul(0, &field.one().neg(), &Monomial::one(), other, ord)
    }

    pub fn mul_term(&self, c: &FieldElem, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(t, d)| {
                    (
                        ModTerm {
                            mono: t.mono.mul(m),
                            pos: t.pos,
                        },
                        d.mul(c),
                    )
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly, ord: &ModuleOrder) -> Vector {
        let terms = p
            .terms()
            .iter()
            .flat_map(|(m, c)| self.mul_term(c, m).terms)
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Keeps only positions in `start..start+len`, shifted to start at zero.
    pub fn restrict(&self, start: usize, len: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| (t.pos as usize) >= start && (t.pos as usize) < start + len)
                .map(|(t, c)| {
                    (
                        ModTerm {
                            mono: t.mono,
                            pos: t.pos - start as u32,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn resort(&mut self, ord: &ModuleOrder) {
        self.terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    }
}
