use crate::error::{AlgebraError, Result};
use crate::groebner::{kernel_of_matrix, submodule_basis, submodule_contains, unit_columns, Column};
use crate::poly::Poly;

use super::presented::{subquotient, PresentedModule};

/// `S`-linear map between presented modules; `matrix[j]` is the image of the
/// `j`-th source generator in target coordinates.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: Vec<Column>,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Vec<Column>) -> Result<Self> {
        if matrix.len() != source.num_gens() || matrix.iter().any(|c| c.len() != target.num_gens()) {
            return Err(AlgebraError::InvalidModule("matrix shape does not match the modules".into()));
        }
        let map = ModuleMap { source, target, matrix };
        if !map.is_well_defined()? {
            return Err(AlgebraError::InvalidModule("map does not respect the source relations".into()));
        }
        Ok(map)
    }

    pub fn apply(&self, v: &[Poly]) -> Column {
        apply(&self.matrix, v, &self.target)
    }

    /// Every source relation maps into the target relations.
    pub fn is_well_defined(&self) -> Result<bool> {
        self.maps_into_relations(self.source.relations())
    }

    fn maps_into_relations(&self, cols: &[Column]) -> Result<bool> {
        if self.target.num_gens() == 0 {
            return Ok(true);
        }
        let gb = submodule_basis(self.target.relations(), self.target.num_gens(), self.target.field(), self.target.nvars())?;
        for r in cols {
            if !submodule_contains(&gb, &self.apply(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The map is zero on the modules.
    pub fn is_zero(&self) -> Result<bool> {
        let units = unit_columns(self.source.num_gens(), self.source.field(), self.source.nvars());
        self.maps_into_relations(&units)
    }

    pub fn compose(&self, after: &ModuleMap) -> ModuleMap {
        let matrix = self.matrix.iter().map(|c| after.apply(c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix,
        }
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self) -> Result<PresentedModule> {
        let src = &self.source;
        let ker = kernel_of_matrix(&self.matrix, self.target.relations(), self.target.num_gens(), src.field(), src.nvars())?;
        src.submodule(&ker)
    }

    pub fn image(&self) -> Result<PresentedModule> {
        self.target.submodule(&self.matrix)
    }
}

fn apply(matrix: &[Column], v: &[Poly], target: &PresentedModule) -> Column {
    let mut out = vec![Poly::zero(target.field(), target.nvars()); target.num_gens()];
    for (c, col) in v.iter().zip(matrix) {
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(col) {
            if !p.is_zero() {
                *o = &*o + &(c * p);
            }
        }
    }
    out
}

/// Cochain complex `M^lo -> ... -> M^0` with `diffs[k]: terms[k] -> terms[k+1]`.
#[derive(Clone, Debug)]
pub struct ComplexOfModules {
    lo: i32,
    terms: Vec<PresentedModule>,
    diffs: Vec<Vec<Column>>,
}

impl ComplexOfModules {
    /// Checks shapes, well-definedness of each differential and `d∘d = 0`.
    pub fn new(lo: i32, terms: Vec<PresentedModule>, diffs: Vec<Vec<Column>>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() || lo > 0 || lo + terms.len() as i32 - 1 != 0 {
            return Err(AlgebraError::InvalidModule("complex must occupy degrees lo..=0".into()));
        }
        let c = ComplexOfModules { lo, terms, diffs };
        for k in 0..c.diffs.len() {
            c.map_at(k)?;
        }
        for k in 0..c.diffs.len().saturating_sub(1) {
            let dd = c.map_at(k)?.compose(&c.map_at(k + 1)?);
            if !dd.is_zero()? {
                return Err(AlgebraError::ComplexInvariant(format!("d∘d ≠ 0 in degree {}", c.lo + k as i32)));
            }
        }
        Ok(c)
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(lo: i32, terms: Vec<PresentedModule>, diffs: Vec<Vec<Column>>) -> Self {
        debug_assert_eq!(diffs.len() + 1, terms.len());
        ComplexOfModules { lo, terms, diffs }
    }

    pub fn single(m: PresentedModule) -> Self {
        ComplexOfModules {
            lo: 0,
            terms: vec![m],
            diffs: Vec::new(),
        }
    }

    fn map_at(&self, k: usize) -> Result<ModuleMap> {
        ModuleMap::new(self.terms[k].clone(), self.terms[k + 1].clone(), self.diffs[k].clone())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Vec<Column>] {
        &self.diffs
    }

    pub fn term(&self, degree: i32) -> Option<&PresentedModule> {
        if degree < self.lo || degree > 0 {
            return None;
        }
        self.terms.get((degree - self.lo) as usize)
    }

    /// `H^i = ker d^i / im d^(i-1)`, pruned.
    pub fn homology_at(&self, degree: i32) -> Result<PresentedModule> {
        let Some(m) = self.term(degree) else {
            let any = &self.terms[0];
            return Ok(PresentedModule::zero(any.field(), any.nvars()));
        };
        let (field, n, g) = (m.field(), m.nvars(), m.num_gens());
        let k = (degree - self.lo) as usize;
        let cycles = if k < self.diffs.len() {
            let target = &self.terms[k + 1];
            kernel_of_matrix(&self.diffs[k], target.relations(), target.num_gens(), field, n)?
        } else {
            unit_columns(g, field, n)
        };
        let mut boundaries: Vec<Column> = m.relations().to_vec();
        if k > 0 {
            boundaries.extend(self.diffs[k - 1].iter().cloned());
        }
        subquotient(field, n, m.ambient(), g, &cycles, &boundaries)
    }

    /// Termwise base change along `S/J -> S/J'`.
    pub fn base_change(&self, ambient: &[Poly]) -> Result<ComplexOfModules> {
        let terms = self.terms.iter().map(|t| t.base_change(ambient)).collect::<Result<Vec<_>>>()?;
        Ok(ComplexOfModules {
            lo: self.lo,
            terms,
            diffs: self.diffs.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn koszul_complex_of_x() {
        // S --x--> S over k[x]: H^0 = k, H^-1 = 0
        let f = Field::prime(32003).unwrap();
        let x = Poly::var(f, 1, 0);
        let s = PresentedModule::free(f, 1, vec![], 1).unwrap();
        let c = ComplexOfModules::new(-1, vec![s.clone(), s], vec![vec![vec![x]]]).unwrap();
        let h0 = c.homology_at(0).unwrap();
        assert_eq!(h0.quotient_dim(4), 1);
        assert!(c.homology_at(-1).unwrap().num_gens() == 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let f = Field::prime(32003).unwrap();
        let x = Poly::var(f, 1, 0);
        let s = PresentedModule::free(f, 1, vec![], 1).unwrap();
        let d = vec![vec![x.clone()]];
        let err = ComplexOfModules::new(-2, vec![s.clone(), s.clone(), s], vec![d.clone(), d]);
        assert!(err.is_err());
    }
}
