use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::groebner::Column;
use crate::poly::Poly;

/// Module used in a trivial extension, as generators and relation columns over `S`.
/// The current `J_A` is added to the relations when the tower is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionModule {
    pub gens: usize,
    pub relations: Vec<Column>,
}

impl ExtensionModule {
    /// `S / (ideal)`.
    pub fn cyclic(ideal: Vec<Poly>) -> Self {
        ExtensionModule {
            gens: 1,
            relations: ideal.into_iter().map(|p| vec![p]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Koszul(Vec<Poly>),
    TrivExt { module: ExtensionModule, shift: u32 },
}

/// A tower `S/J`, followed by Koszul and trivial extensions, at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGRingSpec {
    pub field: Field,
    pub vars: Vec<String>,
    pub base: Vec<Poly>,
    pub steps: Vec<Step>,
    pub point: Option<Vec<FieldElem>>,
}

impl DGRingSpec {
    pub fn quotient(field: Field, vars: Vec<String>, base: Vec<Poly>) -> Self {
        DGRingSpec {
            field,
            vars,
            base,
            steps: Vec::new(),
            point: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn koszul(&self, elements: Vec<Poly>) -> DGRingSpec {
        let mut s = self.clone();
        s.steps.push(Step::Koszul(elements));
        s
    }

    pub fn trivial_extension(&self, module: ExtensionModule, shift: u32) -> DGRingSpec {
        let mut s = self.clone();
        s.steps.push(Step::TrivExt { module, shift });
        s
    }

    pub fn with_point(&self, point: Vec<FieldElem>) -> DGRingSpec {
        DGRingSpec {
            point: Some(point),
            ..self.clone()
        }
    }

    /// All polynomials of the tower, in order.
    pub fn polynomials(&self) -> impl Iterator<Item = &Poly> {
        self.base.iter().chain(self.steps.iter().flat_map(|s| -> Box<dyn Iterator<Item = &Poly>> {
            match s {
                Step::Koszul(e) => Box::new(e.iter()),
                Step::TrivExt { module, .. } => Box::new(module.relations.iter().flatten()),
            }
        }))
    }

    /// Generators of `J_A`: the base ideal together with every Koszul element.
    pub fn h0_generators(&self) -> Vec<Poly> {
        let mut out = self.base.clone();
        for s in &self.steps {
            if let Step::Koszul(e) = s {
                out.extend(e.iter().cloned());
            }
        }
        out
    }

    /// The same tower with every polynomial translated so that `point` becomes
    /// the origin. The result carries no point.
    pub fn localize_at_point(&self, point: &[FieldElem]) -> Result<DGRingSpec> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let tr = |ps: &[Poly]| ps.iter().map(|p| p.translate(point)).collect::<Result<Vec<_>>>();
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(match s {
                    Step::Koszul(e) => Step::Koszul(tr(e)?),
                    Step::TrivExt { module, shift } => Step::TrivExt {
                        module: ExtensionModule {
                            gens: module.gens,
                            relations: module.relations.iter().map(|r| tr(r)).collect::<Result<_>>()?,
                        },
                        shift: *shift,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DGRingSpec {
            field: self.field,
            vars: self.vars.clone(),
            base: tr(&self.base)?,
            steps,
            point: None,
        })
    }

    /// Moves the base point, if any, to the origin.
    pub fn at_origin(&self) -> Result<DGRingSpec> {
        match &self.point {
            Some(p) if p.iter().any(|c| !c.is_zero()) => self.localize_at_point(p),
            _ => Ok(DGRingSpec {
                point: None,
                ..self.clone()
            }),
        }
    }

    /// Checks the tower invariants at the origin.
    pub fn validate(&self) -> Result<()> {
        let n = self.nvars();
        for p in self.polynomials() {
            if p.nvars() != n {
                return Err(AlgebraError::ArityMismatch {
                    expected: n,
                    got: p.nvars(),
                });
            }
            if p.field() != self.field {
                return Err(AlgebraError::FieldMismatch(format!("{:?}", self.field), format!("{:?}", p.field())));
            }
        }
        if let Some(g) = self.base.iter().find(|g| g.is_local_unit()) {
            return Err(AlgebraError::InvalidTower(format!(
                "quotient generator {} does not vanish at the point, so H^0 is locally zero",
                g.display_with(&self.vars)
            )));
        }
        for s in &self.steps {
            match s {
                Step::Koszul(e) => {
                    if let Some(a) = e.iter().find(|a| a.is_local_unit()) {
                        return Err(AlgebraError::NotInMaximalIdeal(a.display_with(&self.vars).to_string()));
                    }
                }
                Step::TrivExt { module, shift } => {
                    if *shift < 1 {
                        return Err(AlgebraError::InvalidTower("trivial extension shift must be at least 1".into()));
                    }
                    if module.relations.iter().any(|r| r.len() != module.gens) {
                        return Err(AlgebraError::InvalidModule("relation length differs from generator count".into()));
                    }
                }
            }
        }
        Ok(())
    }
}
