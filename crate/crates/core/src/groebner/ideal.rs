use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::Poly;

use super::buchberger::GroebnerBasis;
use super::dim::monomial_dimension;
use super::mora::{mora_normal_form, standard_basis};
use super::syzygy::{syzygies, Column};
use super::vector::{ModuleOrder, Vector};

/// Colon steps allowed when saturating.
pub const SATURATION_BUDGET: usize = 64;

/// An ideal of `k[x_1..x_n]` with lazily computed bases, one cache per order.
#[derive(Debug)]
pub struct Ideal {
    field: Field,
    nvars: usize,
    gens: Vec<Poly>,
    grevlex: OnceLock<Arc<GroebnerBasis>>,
    lex: OnceLock<Arc<GroebnerBasis>>,
    local: OnceLock<Arc<Vec<Vector>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field,
            nvars: self.nvars,
            gens: self.gens.clone(),
            grevlex: self.grevlex.clone(),
            lex: self.lex.clone(),
            local: self.local.clone(),
        }
    }
}

fn rank_one(p: &Poly, ord: &ModuleOrder) -> Vector {
    Vector::from_polys(std::slice::from_ref(p), 0, ord)
}

fn from_rank_one(v: &Vector, field: Field, nvars: usize) -> Poly {
    v.to_polys(0, 1, field, nvars).pop().expect("one component")
}

impl Ideal {
    pub fn new(field: Field, nvars: usize, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect::<Vec<_>>();
        debug_assert!(gens.iter().all(|g| g.field() == field && g.nvars() == nvars));
        Ideal {
            field,
            nvars,
            gens,
            grevlex: OnceLock::new(),
            lex: OnceLock::new(),
            local: OnceLock::new(),
        }
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        Ideal::new(field, nvars, Vec::new())
    }

    pub fn unit(field: Field, nvars: usize) -> Self {
        Ideal::new(field, nvars, vec![Poly::one(field, nvars)])
    }

    /// The maximal ideal of the origin.
    pub fn maximal_at_origin(field: Field, nvars: usize) -> Self {
        Ideal::new(field, nvars, (0..nvars).map(|i| Poly::var(field, nvars, i)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn with_gens(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(self.field, self.nvars, g)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.with_gens(&other.gens)
    }

    fn global_basis(&self, kind: OrderKind) -> Result<Arc<GroebnerBasis>> {
        let cell = match kind {
            OrderKind::Grevlex => &self.grevlex,
            OrderKind::Lex => &self.lex,
            OrderKind::NegGrevlexLocal => panic!("local order has no Buchberger basis"),
        };
        if let Some(b) = cell.get() {
            return Ok(b.clone());
        }
        let order = ModuleOrder::top(MonomialOrder { kind, nvars: self.nvars });
        let gens = self.gens.iter().map(|g| rank_one(g, &order)).collect();
        let gb = Arc::new(GroebnerBasis::compute(gens, order, self.field)?);
        Ok(cell.get_or_init(|| gb).clone())
    }

    /// Reduced Gröbner basis under a global order.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Vec<Poly>> {
        if !order.is_global() {
            return Err(AlgebraError::Precondition("groebner requires a global order".into()));
        }
        let gb = self.global_basis(order.kind)?;
        Ok(gb.elems.iter().map(|v| from_rank_one(v, self.field, self.nvars)).collect())
    }

    /// Standard basis for the local order (Mora).
    pub fn standard_basis_local(&self) -> Result<Vec<Poly>> {
        Ok(self.local_basis()?.iter().map(|v| from_rank_one(v, self.field, self.nvars)).collect())
    }

    fn local_basis(&self) -> Result<Arc<Vec<Vector>>> {
        if let Some(b) = self.local.get() {
            return Ok(b.clone());
        }
        let order = ModuleOrder::top(MonomialOrder::local(self.nvars));
        let gens = self.gens.iter().map(|g| rank_one(g, &order)).collect();
        let sb = Arc::new(standard_basis(gens, self.nvars)?);
        Ok(self.local.get_or_init(|| sb).clone())
    }

    /// Leading monomials of the basis for `order` (standard basis when local).
    pub fn lead_monomials(&self, order: MonomialOrder) -> Result<Vec<Monomial>> {
        if order.is_global() {
            Ok(self.global_basis(order.kind)?.leads().map(|t| t.mono).collect())
        } else {
            Ok(self.local_basis()?.iter().map(|v| v.terms[0].0.mono).collect())
        }
    }

    /// Remainder of `p`: the canonical normal form for a global order, a weak
    /// (Mora) normal form for the local order.
    pub fn normal_form(&self, p: &Poly, order: MonomialOrder) -> Result<Poly> {
        if order.is_global() {
            let gb = self.global_basis(order.kind)?;
            let r = gb.reduce(rank_one(p, &gb.order))?;
            Ok(from_rank_one(&r, self.field, self.nvars))
        } else {
            let sb = self.local_basis()?;
            let ord = ModuleOrder::top(order);
            let r = mora_normal_form(rank_one(p, &ord), &sb, &ord)?;
            Ok(from_rank_one(&r, self.field, self.nvars))
        }
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p, MonomialOrder::grevlex(self.nvars))?.is_zero())
    }

    /// Membership in the localization at the origin.
    pub fn contains_locally(&self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p, MonomialOrder::local(self.nvars))?.is_zero())
    }

    /// Local membership decided globally: `p` lies in the localized ideal iff
    /// `(I : p)` contains an element not vanishing at the origin.
    pub fn contains_locally_via_colon(&self, p: &Poly) -> Result<bool> {
        Ok(self.colon(p)?.has_local_unit_generator())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn same_locally(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains_locally(g)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !other.contains_locally(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.global_basis(OrderKind::Grevlex)?.is_unit_ideal())
    }

    /// Some generator is invertible at the origin. Decides `I ⊄ (x_1..x_n)`
    /// from any generating set.
    pub fn has_local_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.is_local_unit())
    }

    /// `I` generates the unit ideal of the local ring at the origin.
    pub fn is_locally_unit(&self) -> bool {
        self.has_local_unit_generator()
    }

    /// `(I : f) = {h : h f ∈ I}`.
    pub fn colon(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(self.field, self.nvars));
        }
        let mut cols: Vec<Column> = vec![vec![f.clone()]];
        cols.extend(self.gens.iter().map(|g| vec![g.clone()]));
        let syz = syzygies(&cols, 1, self.field, self.nvars)?;
        let gens = syz.into_iter().map(|s| s[0].clone()).collect();
        Ok(Ideal::new(self.field, self.nvars, gens))
    }

    /// `(I : J) = ∩_j (I : g_j)`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.field, self.nvars);
        for g in &other.gens {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let (f, n) = (self.field, self.nvars);
        let zero = Poly::zero(f, n);
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(f, n));
        }
        let mut cols: Vec<Column> = vec![vec![Poly::one(f, n), Poly::one(f, n)]];
        cols.extend(self.gens.iter().map(|g| vec![g.clone(), zero.clone()]));
        cols.extend(other.gens.iter().map(|g| vec![zero.clone(), g.clone()]));
        let syz = syzygies(&cols, 2, f, n)?;
        Ok(Ideal::new(f, n, syz.into_iter().map(|s| s[0].clone()).collect()))
    }

    /// `(I : f^∞)` by iterated colons.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_BUDGET {
            let next = cur.colon(f)?;
            if cur.contains_ideal(&next)? {
                return Ok(next);
            }
            cur = next;
        }
        Err(AlgebraError::BudgetExceeded("saturation".into()))
    }

    /// `f ∈ √I` via the Rabinowitsch trick.
    pub fn radical_contains(&self, f: &Poly) -> Result<bool> {
        let n = self.nvars;
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.remap(n + 1, &map)).collect();
        let t = Poly::var(self.field, n + 1, n);
        let tf = &t * &f.remap(n + 1, &map);
        gens.push(&Poly::one(self.field, n + 1) - &tf);
        Ideal::new(self.field, n + 1, gens).is_unit()
    }

    /// `f` is nilpotent in the local ring at the origin of `S/I`.
    pub fn radical_contains_locally(&self, f: &Poly) -> Result<bool> {
        Ok(self.saturate(f)?.has_local_unit_generator())
    }

    /// Krull dimension of `S/I`, `None` for the unit ideal.
    pub fn dim_global(&self) -> Result<Option<usize>> {
        self.dim_global_with(MonomialOrder::grevlex(self.nvars))
    }

    pub fn dim_global_with(&self, order: MonomialOrder) -> Result<Option<usize>> {
        let leads = self.lead_monomials(order)?;
        Ok(monomial_dimension(&leads, self.nvars))
    }

    /// Krull dimension of the localization of `S/I` at the origin through the
    /// tangent cone; `None` when the localization is zero.
    pub fn dim_local_at_origin(&self) -> Result<Option<usize>> {
        if self.has_local_unit_generator() {
            return Ok(None);
        }
        let leads = self.lead_monomials(MonomialOrder::local(self.nvars))?;
        Ok(monomial_dimension(&leads, self.nvars))
    }

    pub fn translate(&self, point: &[FieldElem]) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.translate(point)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.field, self.nvars, gens))
    }

    /// Every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[FieldElem]) -> Result<bool> {
        for g in &self.gens {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
