use std::collections::HashMap;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::{
    kernel_of_matrix, submodule_basis, submodule_contains, syzygies, Column, GroebnerBasis, Ideal, ModuleOrder, PositionRule, Vector,
};
use crate::linalg::rank;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

/// A prime of `S` at which modules are localized: either a rational point or
/// generators asserted prime by the caller (primality is not checked).
#[derive(Clone, Debug)]
pub struct PrimeIdealSpec {
    pub gens: Vec<Poly>,
    pub point: Option<Vec<FieldElem>>,
}

impl PrimeIdealSpec {
    pub fn rational_point(field: Field, point: Vec<FieldElem>) -> Self {
        let n = point.len();
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, c)| &Poly::var(field, n, i) - &Poly::constant(field, n, c.clone()))
            .collect();
        PrimeIdealSpec { gens, point: Some(point) }
    }

    pub fn origin(field: Field, nvars: usize) -> Self {
        Self::rational_point(field, vec![field.zero(); nvars])
    }

    pub fn asserted(gens: Vec<Poly>) -> Self {
        PrimeIdealSpec { gens, point: None }
    }

    /// `f ∈ P`.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        match &self.point {
            Some(pt) => Ok(f.eval(pt)?.is_zero()),
            None => {
                let (field, n) = (f.field(), f.nvars());
                Ideal::new(field, n, self.gens.clone()).contains(f)
            }
        }
    }
}

/// `S^g / R` where the relation module `R` (columns) always contains `J·e_i`
/// for the ambient quotient ideal `J`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    field: Field,
    nvars: usize,
    ambient: Vec<Poly>,
    gens: usize,
    relations: Vec<Column>,
}

impl PresentedModule {
    pub fn new(field: Field, nvars: usize, ambient: Vec<Poly>, gens: usize, relations: Vec<Column>) -> Result<Self> {
        for r in &relations {
            if r.len() != gens {
                return Err(AlgebraError::InvalidModule(format!(
                    "relation of length {} for {} generators",
                    r.len(),
                    gens
                )));
            }
        }
        let ambient: Vec<Poly> = ambient.into_iter().filter(|p| !p.is_zero()).collect();
        let mut rels: Vec<Column> = relations.into_iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect();
        for i in 0..gens {
            for j in &ambient {
                let mut col = vec![Poly::zero(field, nvars); gens];
                col[i] = j.clone();
                rels.push(col);
            }
        }
        Ok(PresentedModule {
            field,
            nvars,
            ambient,
            gens,
            relations: rels,
        })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        PresentedModule {
            field,
            nvars,
            ambient: Vec::new(),
            gens: 0,
            relations: Vec::new(),
        }
    }

    pub fn free(field: Field, nvars: usize, ambient: Vec<Poly>, gens: usize) -> Result<Self> {
        Self::new(field, nvars, ambient, gens, Vec::new())
    }

    /// `S / (ambient + ideal)` as a cyclic module.
    pub fn cyclic(field: Field, nvars: usize, ambient: Vec<Poly>, ideal: &[Poly]) -> Result<Self> {
        Self::new(field, nvars, ambient, 1, ideal.iter().map(|p| vec![p.clone()]).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ambient(&self) -> &[Poly] {
        &self.ambient
    }

    pub fn num_gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &[Column] {
        &self.relations
    }

    fn zero_poly(&self) -> Poly {
        Poly::zero(self.field, self.nvars)
    }

    /// Minimal number of generators of the localization at the origin:
    /// `g - rank` of the constant parts of the relations.
    pub fn min_generators_at_origin(&self) -> usize {
        if self.gens == 0 {
            return 0;
        }
        let rows: Vec<Vec<FieldElem>> = self
            .relations
            .iter()
            .filter(|r| r.iter().any(|p| p.is_local_unit()))
            .map(|r| r.iter().map(|p| p.constant_term()).collect())
            .collect();
        self.gens - rank(rows, self.gens)
    }

    /// Nakayama: the localization at the origin vanishes iff `M/mM = 0`.
    pub fn is_locally_zero_at_origin(&self) -> bool {
        self.min_generators_at_origin() == 0
    }

    /// `M_P = 0` iff some generator of `Ann(M)` lies outside `P`.
    pub fn is_locally_zero(&self, at: &PrimeIdealSpec) -> Result<bool> {
        let ann = self.annihilator()?;
        for g in ann.gens() {
            if !at.contains(g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `{f : f M = 0} = ∩_j (R : e_j)`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let (field, n) = (self.field, self.nvars);
        let mut acc = Ideal::unit(field, n);
        for j in 0..self.gens {
            let colon = self.colon_of_generator(j)?;
            acc = if j == 0 { colon } else { acc.intersect(&colon)? };
        }
        Ok(acc)
    }

    /// `(R : e_j)`: the tag coordinates of `span{(r, 0), (e_j, 1)}` meeting `0 ⊕ S`.
    fn colon_of_generator(&self, j: usize) -> Result<Ideal> {
        let (field, n, g) = (self.field, self.nvars, self.gens);
        let order = ModuleOrder {
            mono: MonomialOrder::grevlex(n),
            rule: PositionRule::PositionOverTerm,
            elim_block: 0,
        };
        let mut vecs: Vec<Vector> = self
            .relations
            .iter()
            .map(|r| Vector::from_polys(r, 0, &order))
            .collect();
        let mut e = vec![self.zero_poly(); g + 1];
        e[j] = Poly::one(field, n);
        e[g] = Poly::one(field, n);
        vecs.push(Vector::from_polys(&e, 0, &order));
        let basis = GroebnerBasis::compute(vecs, order, field)?;
        let gens = basis
            .elems
            .iter()
            .filter(|v| v.terms[0].0.pos as usize == g)
            .map(|v| v.to_polys(g, 1, field, n).remove(0))
            .collect();
        Ok(Ideal::new(field, n, gens))
    }

    /// `dim_k M / m^k M` at the origin, by linear algebra on truncated relations.
    pub fn quotient_dim(&self, k: u32) -> usize {
        if self.gens == 0 || k == 0 {
            return 0;
        }
        let monos = monomials_below(self.nvars, k);
        let index: HashMap<(Monomial, usize), usize> = (0..self.gens)
            .flat_map(|p| monos.iter().map(move |m| (*m, p)))
            .enumerate()
            .map(|(i, key)| (key, i))
            .collect();
        let ncols = index.len();
        let mut rows = Vec::new();
        for r in &self.relations {
            if r.iter().all(|p| p.order().map_or(true, |o| o >= k)) {
                continue;
            }
            for mu in &monos {
                let mut row = vec![self.field.zero(); ncols];
                let mut nonzero = false;
                for (pos, p) in r.iter().enumerate() {
                    for (m, c) in p.terms() {
                        let t = m.mul(mu);
                        if t.deg() < k {
                            let col = index[&(t, pos)];
                            row[col] = row[col].add(c);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        ncols - rank(rows, ncols)
    }

    /// Extends the relations by `J'·e_i`; requires `J ⊆ J'`.
    pub fn base_change(&self, new_ambient: &[Poly]) -> Result<PresentedModule> {
        let target = Ideal::new(self.field, self.nvars, new_ambient.to_vec());
        for j in &self.ambient {
            if !target.contains(j)? {
                return Err(AlgebraError::Precondition("base change requires J ⊆ J'".into()));
            }
        }
        let rels: Vec<Column> = self
            .relations
            .iter()
            .filter(|r| !is_ambient_multiple(r, &self.ambient))
            .cloned()
            .collect();
        PresentedModule::new(self.field, self.nvars, new_ambient.to_vec(), self.gens, rels)
    }

    /// `M / (a_1..a_k) M`.
    pub fn quotient_by_elements(&self, elems: &[Poly]) -> Result<PresentedModule> {
        let mut rels = self.relations.clone();
        for a in elems {
            for i in 0..self.gens {
                let mut col = vec![self.zero_poly(); self.gens];
                col[i] = a.clone();
                rels.push(col);
            }
        }
        Ok(PresentedModule {
            relations: rels,
            ..self.clone()
        })
    }

    /// Presentation of the submodule of `self` generated by the columns `sub`.
    pub fn submodule(&self, sub: &[Column]) -> Result<PresentedModule> {
        subquotient(self.field, self.nvars, &self.ambient, self.gens, sub, &self.relations)
    }

    /// Kernel of multiplication by `a`, as a submodule of `self`.
    pub fn kernel_of_scalar(&self, a: &Poly) -> Result<PresentedModule> {
        let cols: Vec<Column> = (0..self.gens)
            .map(|i| {
                let mut c = vec![self.zero_poly(); self.gens];
                c[i] = a.clone();
                c
            })
            .collect();
        let ker = kernel_of_matrix(&cols, &self.relations, self.gens, self.field, self.nvars)?;
        self.submodule(&ker)
    }

    /// `(0 :_M (a_1..a_k))`, the elements killed by every `a_t`, as a submodule.
    pub fn kernel_of_elements(&self, elems: &[Poly]) -> Result<PresentedModule> {
        let (g, k) = (self.gens, elems.len());
        if g == 0 {
            return Ok(self.clone());
        }
        let cols: Vec<Column> = (0..g)
            .map(|j| {
                let mut c = vec![self.zero_poly(); g * k];
                for (t, a) in elems.iter().enumerate() {
                    c[t * g + j] = a.clone();
                }
                c
            })
            .collect();
        let mut rels = Vec::with_capacity(self.relations.len() * k);
        for t in 0..k {
            for r in &self.relations {
                let mut c = vec![self.zero_poly(); g * k];
                c[t * g..(t + 1) * g].clone_from_slice(r);
                rels.push(c);
            }
        }
        let ker = kernel_of_matrix(&cols, &rels, g * k, self.field, self.nvars)?;
        self.submodule(&ker)
    }

    /// `(0 :_M m)` for the maximal ideal at the origin.
    pub fn socle(&self) -> Result<PresentedModule> {
        let vars: Vec<Poly> = (0..self.nvars).map(|i| Poly::var(self.field, self.nvars, i)).collect();
        self.kernel_of_elements(&vars)
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        let g = self.gens + other.gens;
        let mut rels = Vec::with_capacity(self.relations.len() + other.relations.len());
        for r in &self.relations {
            let mut c = r.clone();
            c.resize(g, self.zero_poly());
            rels.push(c);
        }
        for r in &other.relations {
            let mut c = vec![self.zero_poly(); self.gens];
            c.extend(r.iter().cloned());
            rels.push(c);
        }
        let mut ambient = self.ambient.clone();
        for a in &other.ambient {
            if !ambient.contains(a) {
                ambient.push(a.clone());
            }
        }
        PresentedModule {
            field: self.field,
            nvars: self.nvars,
            ambient: if self.gens == 0 { other.ambient.clone() } else if other.gens == 0 { self.ambient.clone() } else { ambient },
            gens: g,
            relations: rels,
        }
    }

    /// Removes generators that a relation with a constant coefficient expresses
    /// through the others. The result is isomorphic over `S`.
    pub fn prune(&self) -> PresentedModule {
        let mut gens = self.gens;
        let mut rels: Vec<Column> = self.relations.clone();
        loop {
            let found = rels.iter().enumerate().find_map(|(k, r)| {
                r.iter()
                    .enumerate()
                    .find(|(_, p)| p.is_constant() && !p.is_zero())
                    .map(|(j, _)| (k, j))
            });
            let Some((k, j)) = found else { break };
            let pivot = rels.swap_remove(k);
            let inv = pivot[j].constant_term().inv().expect("nonzero constant");
            for r in rels.iter_mut() {
                if r[j].is_zero() {
                    continue;
                }
                let f = r[j].scale(&inv);
                for (x, y) in r.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            for r in rels.iter_mut() {
                r.remove(j);
            }
            gens -= 1;
            rels.retain(|r| r.iter().any(|p| !p.is_zero()));
        }
        dedup_columns(&mut rels);
        PresentedModule {
            field: self.field,
            nvars: self.nvars,
            ambient: if gens == 0 { Vec::new() } else { self.ambient.clone() },
            gens,
            relations: rels,
        }
    }

    /// Translates every defining polynomial so that `point` becomes the origin.
    pub fn translate(&self, point: &[FieldElem]) -> Result<PresentedModule> {
        let tr = |ps: &[Poly]| ps.iter().map(|p| p.translate(point)).collect::<Result<Vec<_>>>();
        Ok(PresentedModule {
            field: self.field,
            nvars: self.nvars,
            ambient: tr(&self.ambient)?,
            gens: self.gens,
            relations: self.relations.iter().map(|r| tr(r)).collect::<Result<Vec<_>>>()?,
        })
    }

    /// Every element of `J` annihilates the module.
    pub fn is_annihilated_by(&self, ideal: &[Poly]) -> Result<bool> {
        if self.gens == 0 {
            return Ok(true);
        }
        let gb = submodule_basis(&self.relations, self.gens, self.field, self.nvars)?;
        for a in ideal {
            for i in 0..self.gens {
                let mut col = vec![self.zero_poly(); self.gens];
                col[i] = a.clone();
                if !submodule_contains(&gb, &col)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn is_ambient_multiple(r: &Column, ambient: &[Poly]) -> bool {
    let nz: Vec<&Poly> = r.iter().filter(|p| !p.is_zero()).collect();
    nz.len() == 1 && ambient.contains(nz[0])
}

fn dedup_columns(rels: &mut Vec<Column>) {
    let mut seen = std::collections::HashSet::new();
    rels.retain(|r| seen.insert(r.clone()));
}

/// Presents `(Z + B) / B` inside `S^g` (generators `sub` = Z, relations `rels` = B).
pub fn subquotient(field: Field, nvars: usize, ambient: &[Poly], g: usize, sub: &[Column], rels: &[Column]) -> Result<PresentedModule> {
    let m = sub.len();
    if m == 0 || g == 0 {
        return Ok(PresentedModule::zero(field, nvars));
    }
    let mut all: Vec<Column> = sub.to_vec();
    all.extend(rels.iter().cloned());
    let syz = syzygies(&all, g, field, nvars)?;
    let relations: Vec<Column> = syz.into_iter().map(|s| s[..m].to_vec()).collect();
    // the relations already contain J·e_i because J annihilates S^g / B
    let module = PresentedModule {
        field,
        nvars,
        ambient: ambient.to_vec(),
        gens: m,
        relations: relations.into_iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect(),
    };
    Ok(module.prune())
}

/// All monomials of total degree `< k` in `n` variables.
pub fn monomials_below(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 1..k {
        let mut next = Vec::new();
        for m in &frontier {
            // multiply only by variables >= the last used one to avoid repeats
            let last = (0..n).rev().find(|&i| m.exp(i) > 0).unwrap_or(0);
            for i in last..n {
                next.push(m.mul(&Monomial::var(i)));
            }
        }
        out.extend(next.iter().copied());
        frontier = next;
    }
    out
}

/// Record of a presented module used as a serializable summary.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationSummary {
    pub generators: usize,
    /// Row `i` holds the `i`-th entry of every relation column.
    pub matrix: Vec<Vec<String>>,
}

impl PresentedModule {
    pub fn summary(&self, names: &[String]) -> PresentationSummary {
        let cols: Vec<&Column> = self
            .relations
            .iter()
            .filter(|r| !is_ambient_multiple(r, &self.ambient))
            .collect();
        PresentationSummary {
            generators: self.gens,
            matrix: (0..self.gens)
                .map(|i| cols.iter().map(|c| c[i].display_with(names).to_string()).collect())
                .collect(),
        }
    }
}
