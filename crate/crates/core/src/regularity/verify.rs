use serde::Serialize;

use crate::dg::{realize, DGRingRealization, DGRingSpec};
use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::linalg::rank;
use crate::poly::Poly;

use super::residue::realize_at;
use super::sequence::{
    embdim, embdim_of, h0_is_regular_local, is_local_cm, is_regular_sequence, is_sequence_regular, local_dim,
    local_dim_of, CmVerdict, SearchConfig, SequenceRegularity,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Counterexample,
    /// The hypotheses of the statement fail on this instance.
    Skipped,
    /// A randomized search ran out of trials before certifying a side.
    Inconclusive,
}

/// Local-CM and constant amplitude, the standing hypotheses of the amplitude formulas.
#[derive(Clone, Debug)]
pub struct Hypotheses {
    pub cm: CmVerdict,
    pub constant_amplitude: bool,
}

impl Hypotheses {
    pub fn check(real: &DGRingRealization, config: SearchConfig) -> Result<Self> {
        Ok(Hypotheses {
            cm: is_local_cm(real, config)?,
            constant_amplitude: real.has_constant_amplitude()?,
        })
    }

    pub fn hold(&self) -> bool {
        self.cm.value && self.constant_amplitude
    }

    /// `Some(outcome)` when the statement cannot be evaluated.
    fn gate(&self) -> Option<Outcome> {
        if self.hold() {
            None
        } else if !self.constant_amplitude || self.cm.certified {
            Some(Outcome::Skipped)
        } else {
            Some(Outcome::Inconclusive)
        }
    }
}

fn require_in_maximal_ideal(real: &DGRingRealization, elems: &[Poly]) -> Result<()> {
    match elems.iter().find(|a| a.is_local_unit()) {
        Some(a) => Err(AlgebraError::NotInMaximalIdeal(a.display_with(&real.spec().vars).to_string())),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct KosAmpRecord {
    pub hypotheses: Hypotheses,
    pub n: usize,
    pub dim_h0: usize,
    pub dim_quotient: usize,
    pub amp_base: i32,
    /// `n - dim H^0(A) + dim H^0(A)/I + amp(A)`.
    pub predicted: i64,
    pub computed: i32,
    pub outcome: Outcome,
}

pub fn verify_kos_amp(real: &DGRingRealization, elems: &[Poly], config: SearchConfig) -> Result<KosAmpRecord> {
    require_in_maximal_ideal(real, elems)?;
    let hypotheses = Hypotheses::check(real, config)?;
    let dim_h0 = local_dim(real)?;
    let dim_quotient = local_dim_of(&real.h0_ideal().with_gens(elems))?;
    let amp_base = real.amplitude_profile()?.amp;
    let predicted = elems.len() as i64 - dim_h0 as i64 + dim_quotient as i64 + amp_base as i64;
    let computed = real.extend_koszul(elems)?.amplitude_profile()?.amp;
    let outcome = hypotheses.gate().unwrap_or(if predicted == computed as i64 {
        Outcome::Pass
    } else {
        Outcome::Counterexample
    });
    Ok(KosAmpRecord {
        hypotheses,
        n: elems.len(),
        dim_h0,
        dim_quotient,
        amp_base,
        predicted,
        computed,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct SopRecord {
    pub hypotheses: Hypotheses,
    pub regular: bool,
    pub dimension_drops: bool,
    pub outcome: Outcome,
}

/// Regular sequence iff `dim H^0(A)/(x) = dim H^0(A) - n`.
pub fn verify_sop(real: &DGRingRealization, elems: &[Poly], config: SearchConfig) -> Result<SopRecord> {
    require_in_maximal_ideal(real, elems)?;
    let hypotheses = Hypotheses::check(real, config)?;
    let regular = is_regular_sequence(real, elems)?;
    let dim = local_dim(real)? as i64;
    let dim_q = local_dim_of(&real.h0_ideal().with_gens(elems))? as i64;
    let dimension_drops = dim_q == dim - elems.len() as i64;
    let outcome = hypotheses.gate().unwrap_or(if regular == dimension_drops {
        Outcome::Pass
    } else {
        Outcome::Counterexample
    });
    Ok(SopRecord {
        hypotheses,
        regular,
        dimension_drops,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct DoubleCmRecord {
    pub hypotheses: Hypotheses,
    pub h0_cm: CmVerdict,
    pub regular_on_a: bool,
    pub regular_on_h0: bool,
    pub outcome: Outcome,
}

/// The ring `H^0(A)` as a tower of its own.
pub fn h0_tower(real: &DGRingRealization) -> DGRingSpec {
    DGRingSpec::quotient(real.field(), real.spec().vars.clone(), real.h0_ideal().gens().to_vec())
}

/// `A`-regular iff `H^0(A)`-regular, when both `A` and `H^0(A)` are CM.
pub fn verify_double_cm(real: &DGRingRealization, elems: &[Poly], config: SearchConfig) -> Result<DoubleCmRecord> {
    require_in_maximal_ideal(real, elems)?;
    let hypotheses = Hypotheses::check(real, config)?;
    let ring = realize(&h0_tower(real))?;
    let h0_cm = is_local_cm(&ring, config)?;
    let regular_on_a = is_regular_sequence(real, elems)?;
    let regular_on_h0 = is_regular_sequence(&ring, elems)?;
    let outcome = match hypotheses.gate() {
        Some(o) => o,
        None if !h0_cm.value => {
            if h0_cm.certified {
                Outcome::Skipped
            } else {
                Outcome::Inconclusive
            }
        }
        None if regular_on_a == regular_on_h0 => Outcome::Pass,
        None => Outcome::Counterexample,
    };
    Ok(DoubleCmRecord {
        hypotheses,
        h0_cm,
        regular_on_a,
        regular_on_h0,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct MainRecord {
    pub sequence_regular: SequenceRegularity,
    pub cm: CmVerdict,
    pub h0_regular: bool,
    pub constant_amplitude: bool,
    /// Local-CM at further points of the locus, as supporting evidence.
    pub cm_at_points: Vec<(Vec<FieldElem>, bool)>,
    pub outcome: Outcome,
}

/// Sequence-regular iff (CM and `H^0(A)` regular local).
pub fn verify_main(
    spec: &DGRingSpec,
    real: &DGRingRealization,
    config: SearchConfig,
    points: &[Vec<FieldElem>],
) -> Result<MainRecord> {
    let sequence_regular = is_sequence_regular(real)?;
    let cm = is_local_cm(real, config)?;
    let h0_regular = h0_is_regular_local(real)?;
    let constant_amplitude = real.has_constant_amplitude()?;
    let mut cm_at_points = Vec::new();
    for p in points {
        let r = realize_at(spec, p)?;
        cm_at_points.push((p.clone(), is_local_cm(&r, config)?.value));
    }
    let rhs = cm.value && h0_regular;
    let outcome = if sequence_regular.value == rhs {
        Outcome::Pass
    } else if sequence_regular.value && h0_regular && !cm.certified {
        Outcome::Inconclusive
    } else {
        Outcome::Counterexample
    };
    Ok(MainRecord {
        sequence_regular,
        cm,
        h0_regular,
        constant_amplitude,
        cm_at_points,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct DerivedQuotientRecord {
    pub koszul_sequence_regular: bool,
    pub quotient_regular: bool,
    /// Minimal generators of the ideal extended to a regular system of parameters.
    pub extension: Option<Vec<Poly>>,
    pub extension_is_regular: Option<bool>,
    pub outcome: Outcome,
}

/// `K(A; elems)` sequence-regular iff `H^0(A)/(elems)` is regular local.
pub fn verify_derived_quotient(real: &DGRingRealization, elems: &[Poly]) -> Result<DerivedQuotientRecord> {
    require_in_maximal_ideal(real, elems)?;
    if !is_sequence_regular(real)?.value {
        return Err(AlgebraError::Precondition("the DG-ring must be sequence-regular".into()));
    }
    let quotient = real.extend_koszul(elems)?;
    let koszul_sequence_regular = is_sequence_regular(&quotient)?.value;
    let n = real.nvars();
    let q_ideal = real.h0_ideal().with_gens(elems);
    let quotient_regular = embdim_of(q_ideal.gens(), n) == local_dim_of(&q_ideal)?;
    let (extension, extension_is_regular) = if quotient_regular {
        let ext = extend_to_parameters(real, elems);
        let ok = ext.len() == embdim(real) && is_regular_sequence(real, &ext)?;
        (Some(ext), Some(ok))
    } else {
        (None, None)
    };
    let outcome = if koszul_sequence_regular == quotient_regular && extension_is_regular != Some(false) {
        Outcome::Pass
    } else {
        Outcome::Counterexample
    };
    Ok(DerivedQuotientRecord {
        koszul_sequence_regular,
        quotient_regular,
        extension,
        extension_is_regular,
        outcome,
    })
}

/// Greedily picks elements, then variables, whose linear parts are independent
/// modulo those of `J_A`.
fn extend_to_parameters(real: &DGRingRealization, elems: &[Poly]) -> Vec<Poly> {
    let (field, n) = (real.field(), real.nvars());
    let mut rows: Vec<Vec<FieldElem>> = real.h0_ideal().gens().iter().map(|g| g.linear_coefficients()).collect();
    let mut current = rank(rows.clone(), n);
    let mut out = Vec::new();
    let vars = (0..n).map(|i| Poly::var(field, n, i));
    for cand in elems.iter().cloned().chain(vars) {
        rows.push(cand.linear_coefficients());
        let r = rank(rows.clone(), n);
        if r > current {
            current = r;
            out.push(cand);
        } else {
            rows.pop();
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PointVerdict {
    pub point: Vec<FieldElem>,
    pub sequence_regular: SequenceRegularity,
}

/// Sequence-regularity after moving each point to the origin.
pub fn seq_regular_at_points(spec: &DGRingSpec, points: &[Vec<FieldElem>]) -> Result<Vec<PointVerdict>> {
    points
        .iter()
        .map(|p| {
            let r = realize_at(spec, p)?;
            Ok(PointVerdict {
                point: p.clone(),
                sequence_regular: is_sequence_regular(&r)?,
            })
        })
        .collect()
}
