use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{Column, Ideal};
use crate::module::{ComplexOfModules, ModuleFingerprint, PresentedModule};
use crate::poly::Poly;

use super::spec::{DGRingSpec, ExtensionModule, Step};

/// `inf`, `sup` and `amp`, counting only degrees whose cohomology survives
/// localization at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AmplitudeProfile {
    pub inf: i32,
    pub sup: i32,
    pub amp: i32,
}

#[derive(Debug)]
pub struct DGRingRealization {
    spec: DGRingSpec,
    complex: ComplexOfModules,
    h0: Ideal,
    cohomology: OnceLock<Result<Vec<PresentedModule>>>,
}

/// Builds the underlying complex of the tower, after moving its point to the origin.
pub fn realize(spec: &DGRingSpec) -> Result<DGRingRealization> {
    let spec = spec.at_origin()?;
    spec.validate()?;
    let (field, n) = (spec.field, spec.nvars());
    let mut h0 = spec.base.clone();
    let mut complex = ComplexOfModules::single(PresentedModule::cyclic(field, n, spec.base.clone(), &[])?);
    for step in &spec.steps {
        match step {
            Step::Koszul(elems) => {
                for a in elems {
                    complex = koszul_step(&complex, a, field, n);
                }
                h0.extend(elems.iter().cloned());
            }
            Step::TrivExt { module, shift } => {
                complex = trivext_step(&complex, module, *shift, &h0, field, n)?;
            }
        }
    }
    Ok(DGRingRealization {
        h0: Ideal::new(field, n, h0),
        spec,
        complex,
        cohomology: OnceLock::new(),
    })
}

fn term_or_zero(c: &ComplexOfModules, degree: i32, field: Field, n: usize) -> PresentedModule {
    c.term(degree).cloned().unwrap_or_else(|| PresentedModule::zero(field, n))
}

fn diff_at(c: &ComplexOfModules, degree: i32) -> Option<&Vec<Column>> {
    if degree < c.lo() || degree >= 0 {
        return None;
    }
    c.diffs().get((degree - c.lo()) as usize)
}

/// Cone of multiplication by `a`: `T^m = C^m ⊕ C^(m+1)` with
/// `d(c0, c1) = (d c0 + a c1, -d c1)`.
pub(crate) fn koszul_step(c: &ComplexOfModules, a: &Poly, field: Field, n: usize) -> ComplexOfModules {
    let lo = c.lo() - 1;
    let zero = Poly::zero(field, n);
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for m in lo..=0 {
        let top = term_or_zero(c, m, field, n);
        let bottom = term_or_zero(c, m + 1, field, n);
        terms.push(top.direct_sum(&bottom));
        if m == 0 {
            break;
        }
        let (ga, gb) = (top.num_gens(), bottom.num_gens());
        let gc = term_or_zero(c, m + 2, field, n).num_gens();
        let mut cols = Vec::with_capacity(ga + gb);
        for j in 0..ga {
            let mut col = match diff_at(c, m) {
                Some(d) => d[j].clone(),
                None => vec![zero.clone(); gb],
            };
            col.resize(gb + gc, zero.clone());
            cols.push(col);
        }
        for j in 0..gb {
            let mut col = vec![zero.clone(); gb];
            col[j] = a.clone();
            match diff_at(c, m + 1) {
                Some(d) => col.extend(d[j].iter().map(|p| p.neg())),
                None => col.resize(gb + gc, zero.clone()),
            }
            cols.push(col);
        }
        diffs.push(cols);
    }
    ComplexOfModules::new_unchecked(lo, terms, diffs)
}

/// Adds `M` in degree `-shift` with zero differential.
fn trivext_step(
    c: &ComplexOfModules,
    module: &ExtensionModule,
    shift: u32,
    h0: &[Poly],
    field: Field,
    n: usize,
) -> Result<ComplexOfModules> {
    let m_mod = PresentedModule::new(field, n, h0.to_vec(), module.gens, module.relations.clone())?;
    let at = -(shift as i32);
    let lo = c.lo().min(at);
    let zero = Poly::zero(field, n);
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for m in lo..=0 {
        let base = term_or_zero(c, m, field, n);
        let extra = if m == at { m_mod.num_gens() } else { 0 };
        terms.push(if m == at { base.direct_sum(&m_mod) } else { base.clone() });
        if m == 0 {
            break;
        }
        let target_base = term_or_zero(c, m + 1, field, n).num_gens();
        let target_extra = if m + 1 == at { m_mod.num_gens() } else { 0 };
        let width = target_base + target_extra;
        let mut cols = Vec::with_capacity(base.num_gens() + extra);
        for j in 0..base.num_gens() {
            let mut col = match diff_at(c, m) {
                Some(d) => d[j].clone(),
                None => vec![zero.clone(); target_base],
            };
            col.resize(width, zero.clone());
            cols.push(col);
        }
        for _ in 0..extra {
            cols.push(vec![zero.clone(); width]);
        }
        diffs.push(cols);
    }
    Ok(ComplexOfModules::new_unchecked(lo, terms, diffs))
}

impl DGRingRealization {
    /// The tower, translated so that its point is the origin.
    pub fn spec(&self) -> &DGRingSpec {
        &self.spec
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    pub fn complex(&self) -> &ComplexOfModules {
        &self.complex
    }

    /// `J_A` with `H^0(A) = S / J_A`.
    pub fn h0_ideal(&self) -> &Ideal {
        &self.h0
    }

    /// `J_A`, after checking that the homology in degree 0 agrees with `S/J_A`.
    pub fn h0(&self) -> Result<&Ideal> {
        let computed = ModuleFingerprint::of(&self.cohomology(0)?)?;
        let expected = ModuleFingerprint::of(&PresentedModule::cyclic(self.field(), self.nvars(), self.h0.gens().to_vec(), &[])?)?;
        if !computed.matches(&expected)? {
            return Err(AlgebraError::Internal("H^0 of the complex differs from S/J_A".into()));
        }
        Ok(&self.h0)
    }

    pub fn lo(&self) -> i32 {
        self.complex.lo()
    }

    pub fn cohomology_all(&self) -> Result<&[PresentedModule]> {
        let cached = self.cohomology.get_or_init(|| {
            (self.complex.lo()..=0)
                .map(|i| self.complex.homology_at(i))
                .collect::<Result<Vec<_>>>()
        });
        match cached {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn cohomology(&self, degree: i32) -> Result<PresentedModule> {
        let all = self.cohomology_all()?;
        if degree > 0 || degree < self.lo() {
            return Ok(PresentedModule::zero(self.field(), self.nvars()));
        }
        Ok(all[(degree - self.lo()) as usize].clone())
    }

    /// Degrees whose cohomology is nonzero at the origin.
    pub fn support_degrees(&self) -> Result<Vec<i32>> {
        let all = self.cohomology_all()?;
        Ok((self.lo()..=0)
            .zip(all)
            .filter(|(_, h)| !h.is_locally_zero_at_origin())
            .map(|(i, _)| i)
            .collect())
    }

    pub fn amplitude_profile(&self) -> Result<AmplitudeProfile> {
        let degs = self.support_degrees()?;
        let (Some(&inf), Some(&sup)) = (degs.first(), degs.last()) else {
            return Err(AlgebraError::InvalidTower("the DG-ring is zero at the point".into()));
        };
        Ok(AmplitudeProfile {
            inf,
            sup,
            amp: sup - inf,
        })
    }

    /// `H^inf(A)`.
    pub fn bottom_cohomology(&self) -> Result<PresentedModule> {
        self.cohomology(self.amplitude_profile()?.inf)
    }

    /// Local form of `Supp(H^inf) = Spec(H^0)`: every annihilator generator is
    /// nilpotent in the local ring `H^0(A)`.
    pub fn has_constant_amplitude(&self) -> Result<bool> {
        let ann = self.bottom_cohomology()?.annihilator()?;
        for g in ann.gens() {
            if !self.h0.radical_contains_locally(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `K(A; elements)`. Each element must vanish at the origin.
    pub fn extend_koszul(&self, elements: &[Poly]) -> Result<DGRingRealization> {
        if let Some(a) = elements.iter().find(|a| a.is_local_unit()) {
            return Err(AlgebraError::NotInMaximalIdeal(a.display_with(&self.spec.vars).to_string()));
        }
        Ok(DGRingRealization {
            spec: self.spec.koszul(elements.to_vec()),
            complex: self.koszul_complex(elements),
            h0: self.h0.with_gens(elements),
            cohomology: OnceLock::new(),
        })
    }

    /// Underlying complex of `K(A; elements)` with no membership requirement
    /// on the elements.
    pub fn koszul_complex(&self, elements: &[Poly]) -> ComplexOfModules {
        let mut c = self.complex.clone();
        for a in elements {
            c = koszul_step(&c, a, self.field(), self.nvars());
        }
        c
    }

    /// Fingerprints of every cohomology module, indexed from `lo` to 0.
    pub fn fingerprints(&self) -> Result<Vec<(i32, ModuleFingerprint)>> {
        let all = self.cohomology_all()?;
        (self.lo()..=0)
            .zip(all)
            .map(|(i, h)| Ok((i, ModuleFingerprint::of(h)?)))
            .collect()
    }
}

/// Degree-wise fingerprint equality, where missing degrees count as zero.
pub fn fingerprints_match(a: &[(i32, ModuleFingerprint)], b: &[(i32, ModuleFingerprint)], field: Field, nvars: usize) -> Result<bool> {
    let lo = a.first().map_or(0, |x| x.0).min(b.first().map_or(0, |x| x.0));
    let zero = ModuleFingerprint::of(&PresentedModule::zero(field, nvars))?;
    for d in lo..=0 {
        let fa = a.iter().find(|x| x.0 == d).map_or(&zero, |x| &x.1);
        let fb = b.iter().find(|x| x.0 == d).map_or(&zero, |x| &x.1);
        if !fa.matches(fb)? {
            return Ok(false);
        }
    }
    Ok(true)
}
