use crate::dg::{fingerprints_match, realize, DGRingRealization, DGRingSpec};
use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::groebner::{lift, Ideal};
use crate::linalg::determinant;
use crate::module::{ComplexOfModules, ModuleFingerprint, PresentedModule};
use crate::poly::Poly;

use super::sequence::{embdim_of, is_minimal_generating_sequence, is_sequence_regular, local_dim, local_dim_of};

/// `κ(A) = K(A; regular system of parameters)` with the checks run on it.
#[derive(Clone, Debug)]
pub struct ResidueDGField {
    pub spec: DGRingSpec,
    pub parameters: Vec<Poly>,
    pub amp: i32,
    pub amp_of_base: i32,
    /// `H^0(κ(A))` has the fingerprint of the residue field.
    pub h0_is_residue_field: bool,
    /// `K(H^0(A); parameters)` is the residue field concentrated in degree 0.
    pub reduction_is_residue_field: bool,
    /// Length of the Koszul resolution of the residue field over `H^0(A)`.
    pub flat_dimension: usize,
    pub local_dim: usize,
}

impl ResidueDGField {
    pub fn consistent(&self) -> bool {
        self.amp == self.amp_of_base
            && self.h0_is_residue_field
            && self.reduction_is_residue_field
            && self.flat_dimension == self.local_dim
    }
}

pub(crate) fn residue_field_fingerprint(field: crate::field::Field, n: usize) -> Result<ModuleFingerprint> {
    let vars: Vec<Poly> = (0..n).map(|i| Poly::var(field, n, i)).collect();
    ModuleFingerprint::of(&PresentedModule::cyclic(field, n, vec![], &vars)?)
}

fn complex_is_locally_zero(c: &ComplexOfModules) -> Result<bool> {
    for i in c.lo()..=0 {
        if !c.homology_at(i)?.is_locally_zero_at_origin() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue DG-field from the given regular system of parameters.
pub fn residue_dg_field_with(real: &DGRingRealization, params: &[Poly]) -> Result<ResidueDGField> {
    let (field, n) = (real.field(), real.nvars());
    let kappa = real.extend_koszul(params)?;
    let residue = residue_field_fingerprint(field, n)?;
    let h0k = ModuleFingerprint::of(&kappa.cohomology(0)?)?;
    let h0_is_residue_field = h0k.matches(&residue)?
        && local_dim_of(kappa.h0_ideal())? == 0
        && embdim_of(kappa.h0_ideal().gens(), n) == 0;

    let h0_tower = DGRingSpec::quotient(field, real.spec().vars.clone(), real.h0_ideal().gens().to_vec());
    let reduced = realize(&h0_tower)?.extend_koszul(params)?;
    let mut reduction_is_residue_field = ModuleFingerprint::of(&reduced.cohomology(0)?)?.matches(&residue)?;
    for i in reduced.lo()..0 {
        reduction_is_residue_field &= reduced.cohomology(i)?.is_locally_zero_at_origin();
    }
    let amp = kappa.amplitude_profile()?.amp;
    Ok(ResidueDGField {
        spec: kappa.spec().clone(),
        parameters: params.to_vec(),
        amp,
        amp_of_base: real.amplitude_profile()?.amp,
        h0_is_residue_field,
        reduction_is_residue_field,
        // a Koszul complex on a minimal generating sequence is a minimal resolution
        flat_dimension: if reduction_is_residue_field { params.len() } else { 0 },
        local_dim: local_dim(real)?,
    })
}

/// `κ(A)`; available only when `A` is sequence-regular.
pub fn residue_dg_field(real: &DGRingRealization) -> Result<ResidueDGField> {
    let sr = is_sequence_regular(real)?;
    if !sr.value {
        return Err(AlgebraError::Precondition(
            "residue DG-fields are available only in the sequence-regular case".into(),
        ));
    }
    residue_dg_field_with(real, &sr.witness)
}

/// `b = R·a` over the local ring `H^0(A)`. Row `i` is `numerators[i] / denominators[i]`
/// with each denominator a local unit.
#[derive(Clone, Debug)]
pub struct ParameterChangeMatrix {
    pub source: Vec<Poly>,
    pub target: Vec<Poly>,
    pub numerators: Vec<Vec<Poly>>,
    pub denominators: Vec<Poly>,
    /// Value of the determinant at the origin.
    pub det_at_origin: FieldElem,
}

impl ParameterChangeMatrix {
    pub fn det_is_local_unit(&self) -> bool {
        !self.det_at_origin.is_zero()
    }
}

pub fn parameter_change_matrix(real: &DGRingRealization, a: &[Poly], b: &[Poly]) -> Result<ParameterChangeMatrix> {
    if !is_minimal_generating_sequence(real, a) || !is_minimal_generating_sequence(real, b) {
        return Err(AlgebraError::Precondition("both sequences must minimally generate the maximal ideal".into()));
    }
    let (field, n) = (real.field(), real.nvars());
    let j = real.h0_ideal();
    let mut span: Vec<Poly> = a.to_vec();
    span.extend(j.gens().iter().cloned());
    let span_ideal = Ideal::new(field, n, span.clone());
    let cols: Vec<Vec<Poly>> = span.iter().map(|p| vec![p.clone()]).collect();
    let mut numerators = Vec::new();
    let mut denominators = Vec::new();
    for bi in b {
        let u = if span_ideal.contains(bi)? {
            Poly::one(field, n)
        } else {
            span_ideal
                .colon(bi)?
                .gens()
                .iter()
                .find(|g| g.is_local_unit())
                .cloned()
                .ok_or_else(|| AlgebraError::NotInSpan(bi.display_with(&real.spec().vars).to_string()))?
        };
        let coeffs = lift(&[&u * bi], &cols, field, n)?;
        let row: Vec<Poly> = coeffs[..a.len()].to_vec();
        let mut resid = &u * bi;
        for (c, aj) in row.iter().zip(a) {
            resid = &resid - &(c * aj);
        }
        if !j.contains(&resid)? {
            return Err(AlgebraError::Internal("parameter change row does not reproduce the target".into()));
        }
        numerators.push(row);
        denominators.push(u);
    }
    let consts: Vec<Vec<FieldElem>> = numerators.iter().map(|r| r.iter().map(|p| p.constant_term()).collect()).collect();
    let mut det = determinant(consts, field);
    for u in &denominators {
        det = det.div(&u.constant_term()).ok_or(AlgebraError::DivisionByZero)?;
    }
    Ok(ParameterChangeMatrix {
        source: a.to_vec(),
        target: b.to_vec(),
        numerators,
        denominators,
        det_at_origin: det,
    })
}

/// `Σ_j t_ij a_j` for each row of `t`.
pub fn apply_matrix(t: &[Vec<Poly>], a: &[Poly]) -> Vec<Poly> {
    t.iter()
        .map(|row| {
            row.iter().zip(a).fold(Poly::zero(a[0].field(), a[0].nvars()), |acc, (c, x)| &acc + &(c * x))
        })
        .collect()
}

/// Cohomology fingerprints of `K(A; a)` and `K(A; T·a)` agree.
pub fn verify_gl_invariance(real: &DGRingRealization, a: &[Poly], t: &[Vec<Poly>]) -> Result<bool> {
    let base = real.extend_koszul(a)?.fingerprints()?;
    verify_gl_invariance_against(real, &base, a, t)
}

/// As [`verify_gl_invariance`] with the fingerprints of `K(A; a)` precomputed.
pub fn verify_gl_invariance_against(
    real: &DGRingRealization,
    base: &[(i32, ModuleFingerprint)],
    a: &[Poly],
    t: &[Vec<Poly>],
) -> Result<bool> {
    if t.len() != a.len() || t.iter().any(|r| r.len() != a.len()) {
        return Err(AlgebraError::Precondition("matrix must be square of the sequence length".into()));
    }
    let consts: Vec<Vec<FieldElem>> = t.iter().map(|r| r.iter().map(|p| p.constant_term()).collect()).collect();
    if determinant(consts, real.field()).is_zero() {
        return Err(AlgebraError::Precondition("determinant is not a local unit".into()));
    }
    let b = apply_matrix(t, a);
    let other = real.extend_koszul(&b)?.fingerprints()?;
    fingerprints_match(base, &other, real.field(), real.nvars())
}

/// A DG-module over `A` of Koszul type: `K(A; b_1..b_k)`, whose elements may
/// be local units, or the zero module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DGModuleSpec {
    Zero,
    Koszul(Vec<Poly>),
}

#[derive(Clone, Debug)]
pub struct NakayamaRecord {
    pub module_is_zero: bool,
    pub tensor_is_zero: bool,
}

impl NakayamaRecord {
    pub fn holds(&self) -> bool {
        self.module_is_zero == self.tensor_is_zero
    }
}

fn koszul_module_is_zero(real: &DGRingRealization, elems: &[Poly]) -> Result<bool> {
    complex_is_locally_zero(&real.koszul_complex(elems))
}

/// Both sides of `M = 0 ⟺ κ(A) ⊗ M = 0`.
pub fn nakayama_check(real: &DGRingRealization, m: &DGModuleSpec) -> Result<NakayamaRecord> {
    let kappa = residue_dg_field(real)?;
    match m {
        DGModuleSpec::Zero => Ok(NakayamaRecord {
            module_is_zero: true,
            tensor_is_zero: true,
        }),
        DGModuleSpec::Koszul(b) => {
            let mut combined = kappa.parameters.clone();
            combined.extend(b.iter().cloned());
            Ok(NakayamaRecord {
                module_is_zero: koszul_module_is_zero(real, b)?,
                tensor_is_zero: koszul_module_is_zero(real, &combined)?,
            })
        }
    }
}

/// `M ⊗ κ(A, p) ≠ 0` at the rational point `p`, given in the tower's coordinates.
pub fn in_small_support(spec: &DGRingSpec, m: &DGModuleSpec, point: &[FieldElem]) -> Result<bool> {
    let DGModuleSpec::Koszul(b) = m else {
        return Ok(false);
    };
    let real = realize_at(spec, point)?;
    let kappa = residue_dg_field(&real)?;
    let mut combined = kappa.parameters.clone();
    for e in b {
        combined.push(e.translate(point)?);
    }
    Ok(!koszul_module_is_zero(&real, &combined)?)
}

/// Realizes the tower at `point`, which must lie on the zero locus of `J_A`.
pub fn realize_at(spec: &DGRingSpec, point: &[FieldElem]) -> Result<DGRingRealization> {
    for g in spec.h0_generators() {
        if !g.eval(point)?.is_zero() {
            return Err(AlgebraError::PointNotOnLocus(format!(
                "{} does not vanish there",
                g.display_with(&spec.vars)
            )));
        }
    }
    realize(&spec.with_point(point.to_vec()))
}
