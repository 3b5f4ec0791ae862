use serde::Serialize;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;

use super::presented::PresentedModule;

/// Isomorphism invariants of a module localized at the origin.
#[derive(Clone, Debug)]
pub struct ModuleFingerprint {
    pub min_generators: usize,
    pub annihilator: Ideal,
    pub annihilator_dim: Option<usize>,
    pub quotient_dims: [usize; 4],
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FingerprintRecord {
    pub min_generators: usize,
    pub annihilator: Vec<String>,
    pub annihilator_dim: Option<usize>,
    pub quotient_dims: [usize; 4],
}

impl ModuleFingerprint {
    pub fn of(m: &PresentedModule) -> Result<Self> {
        let annihilator = m.annihilator()?;
        let annihilator_dim = if annihilator.is_locally_unit() {
            None
        } else {
            annihilator.dim_local_at_origin()?
        };
        let mut quotient_dims = [0; 4];
        for (k, d) in quotient_dims.iter_mut().enumerate() {
            *d = m.quotient_dim(k as u32 + 1);
        }
        Ok(ModuleFingerprint {
            min_generators: m.min_generators_at_origin(),
            annihilator,
            annihilator_dim,
            quotient_dims,
        })
    }

    /// Equality of the invariants, comparing annihilators after localization.
    pub fn matches(&self, other: &ModuleFingerprint) -> Result<bool> {
        if self.min_generators != other.min_generators
            || self.annihilator_dim != other.annihilator_dim
            || self.quotient_dims != other.quotient_dims
        {
            return Ok(false);
        }
        self.annihilator.same_locally(&other.annihilator)
    }

    pub fn record(&self, names: &[String]) -> Result<FingerprintRecord> {
        let basis = self.annihilator.groebner(MonomialOrder::grevlex(self.annihilator.nvars()))?;
        Ok(FingerprintRecord {
            min_generators: self.min_generators,
            annihilator: basis.iter().map(|p| p.display_with(names).to_string()).collect(),
            annihilator_dim: self.annihilator_dim,
            quotient_dims: self.quotient_dims,
        })
    }
}
