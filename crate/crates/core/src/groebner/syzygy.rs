//! Syzygies, lifts and matrix kernels, all read off one Gröbner basis of the
//! generators augmented by unit vectors that record their cofactors.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;

use super::buchberger::GroebnerBasis;
use super::vector::{ModuleOrder, Vector};

/// A column vector of polynomials, i.e. an element of `S^r`.
pub type Column = Vec<Poly>;

/// Gröbner basis of `{(g_i, e_i)}` in `S^(r + m)` under an order eliminating
/// the first `r` positions.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    rank: usize,
    count: usize,
    field: Field,
    nvars: usize,
    basis: GroebnerBasis,
}

impl TrackedBasis {
    pub fn new(gens: &[Column], rank: usize, field: Field, nvars: usize) -> Result<Self> {
        let order = ModuleOrder::eliminating(MonomialOrder::grevlex(nvars), rank);
        let m = gens.len();
        let augmented: Vec<Vector> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                assert_eq!(g.len(), rank, "column length mismatch");
                let mut comps = g.clone();
                comps.extend((0..m).map(|k| if k == i { Poly::one(field, nvars) } else { Poly::zero(field, nvars) }));
                Vector::from_polys(&comps, 0, &order)
            })
            .collect();
        let basis = GroebnerBasis::compute(augmented, order, field)?;
        Ok(TrackedBasis {
            rank,
            count: m,
            field,
            nvars,
            basis,
        })
    }

    /// Generators of the syzygy module of the input columns.
    pub fn syzygies(&self) -> Vec<Column> {
        self.basis
            .elems
            .iter()
            .filter(|g| g.terms[0].0.pos as usize >= self.rank)
            .map(|g| g.to_polys(self.rank, self.count, self.field, self.nvars))
            .collect()
    }

    /// Gröbner basis elements of the span itself (the first block).
    pub fn span_basis(&self) -> Vec<Column> {
        self.basis
            .elems
            .iter()
            .filter(|g| (g.terms[0].0.pos as usize) < self.rank)
            .map(|g| g.to_polys(0, self.rank, self.field, self.nvars))
            .collect()
    }

    /// Coefficients `c` with `sum c_i g_i = v`.
    pub fn lift(&self, v: &[Poly]) -> Result<Column> {
        let order = self.basis.order;
        let start = Vector::from_polys(v, 0, &order);
        let r = self.basis.reduce(start)?;
        if r.terms.iter().any(|(t, _)| (t.pos as usize) < self.rank) {
            return Err(AlgebraError::NotInSpan(format!("vector of length {}", v.len())));
        }
        Ok(r.to_polys(self.rank, self.count, self.field, self.nvars)
            .into_iter()
            .map(|p| p.neg())
            .collect())
    }

    pub fn contains(&self, v: &[Poly]) -> Result<bool> {
        let order = self.basis.order;
        let r = self.basis.reduce(Vector::from_polys(v, 0, &order))?;
        Ok(r.terms.iter().all(|(t, _)| (t.pos as usize) >= self.rank))
    }
}

/// Generators of `{c : sum c_i g_i = 0}`.
pub fn syzygies(gens: &[Column], rank: usize, field: Field, nvars: usize) -> Result<Vec<Column>> {
    Ok(TrackedBasis::new(gens, rank, field, nvars)?.syzygies())
}

/// Expresses `v` in terms of `gens`, failing with a non-membership report.
pub fn lift(v: &[Poly], gens: &[Column], field: Field, nvars: usize) -> Result<Column> {
    TrackedBasis::new(gens, v.len(), field, nvars)?.lift(v)
}

/// Kernel of the map `S^c -> S^r / R` given by `columns` (c columns of length r),
/// with `relations` generating `R`. Zero generators are dropped.
pub fn kernel_of_matrix(columns: &[Column], relations: &[Column], rank: usize, field: Field, nvars: usize) -> Result<Vec<Column>> {
    let c = columns.len();
    if c == 0 {
        return Ok(Vec::new());
    }
    let mut all: Vec<Column> = columns.to_vec();
    all.extend(relations.iter().cloned());
    if rank == 0 {
        // target is zero: everything is in the kernel
        return Ok(unit_columns(c, field, nvars));
    }
    let syz = syzygies(&all, rank, field, nvars)?;
    Ok(syz
        .into_iter()
        .map(|s| s[..c].to_vec())
        .filter(|s| s.iter().any(|p| !p.is_zero()))
        .collect())
}

pub fn unit_columns(c: usize, field: Field, nvars: usize) -> Vec<Column> {
    (0..c)
        .map(|i| (0..c).map(|k| if k == i { Poly::one(field, nvars) } else { Poly::zero(field, nvars) }).collect())
        .collect()
}

/// Gröbner basis of a submodule of `S^rank` under TOP grevlex.
pub fn submodule_basis(gens: &[Column], rank: usize, field: Field, nvars: usize) -> Result<GroebnerBasis> {
    let order = ModuleOrder::top(MonomialOrder::grevlex(nvars));
    let vecs = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), rank, "column length mismatch");
            Vector::from_polys(g, 0, &order)
        })
        .collect();
    GroebnerBasis::compute(vecs, order, field)
}

/// Membership of `v` in the submodule with basis `gb` (TOP order).
pub fn submodule_contains(gb: &GroebnerBasis, v: &[Poly]) -> Result<bool> {
    gb.contains(Vector::from_polys(v, 0, &gb.order))
}

/// Sum of `coeffs[i] * gens[i]`.
pub fn combine(coeffs: &[Poly], gens: &[Column], rank: usize, field: Field, nvars: usize) -> Column {
    let mut out = vec![Poly::zero(field, nvars); rank];
    for (c, g) in coeffs.iter().zip(gens) {
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(g) {
            *o = &*o + &(c * p);
        }
    }
    out
}
