use serde::Serialize;

use crate::dg::{AmplitudeProfile, DGRingRealization};
use crate::error::{AlgebraError, Result};
use crate::poly::Poly;

use super::residue::{residue_dg_field, ResidueDGField};
use super::sequence::{embdim, h0_is_regular_local, is_local_cm, is_sequence_regular, SearchConfig};

#[derive(Clone, Debug, Serialize)]
pub struct ResidueSummary {
    pub parameters: Vec<String>,
    pub tower: String,
    pub amp: i32,
    pub h0_is_residue_field: bool,
    pub reduction_is_residue_field: bool,
    pub flat_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub amplitude: AmplitudeProfile,
    pub local_dim: usize,
    pub embdim: usize,
    pub seq_depth: usize,
    pub seq_depth_certified: bool,
    pub seq_depth_witness: Vec<String>,
    /// `seq.depth + inf`.
    pub depth: i64,
    pub is_local_cm: bool,
    pub h0_is_regular_local: bool,
    pub is_sequence_regular: bool,
    pub sequence_witness: Vec<String>,
    pub constant_amplitude: bool,
    pub kappa: Option<ResidueSummary>,
    pub caveats: Vec<String>,
}

fn show(ps: &[Poly], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.display_with(names).to_string()).collect()
}

pub fn summarize_residue(k: &ResidueDGField, names: &[String]) -> ResidueSummary {
    ResidueSummary {
        parameters: show(&k.parameters, names),
        tower: format!("K(A; {})", show(&k.parameters, names).join(", ")),
        amp: k.amp,
        h0_is_residue_field: k.h0_is_residue_field,
        reduction_is_residue_field: k.reduction_is_residue_field,
        flat_dimension: k.flat_dimension,
    }
}

/// Runs the whole pipeline and checks the invariants linking its outputs.
pub fn regularity_report(real: &DGRingRealization, config: SearchConfig) -> Result<RegularityReport> {
    let names = &real.spec().vars;
    let amplitude = real.amplitude_profile()?;
    let cm = is_local_cm(real, config)?;
    let h0_regular = h0_is_regular_local(real)?;
    let sr = is_sequence_regular(real)?;
    let constant_amplitude = real.has_constant_amplitude()?;
    let kappa = if sr.value {
        Some(summarize_residue(&residue_dg_field(real)?, names))
    } else {
        None
    };
    if sr.value && !(h0_regular && (cm.value || !cm.seq_depth.certified)) {
        return Err(AlgebraError::Internal("sequence-regular without CM and regular H^0".into()));
    }
    let mut caveats = vec![
        "isomorphisms of cohomology are certified by module fingerprints".to_string(),
        "power series rings are modeled by localizing polynomial rings at the point".to_string(),
    ];
    if !cm.seq_depth.certified {
        caveats.push(format!(
            "seq.depth is a lower bound: {} random trials found no further regular element",
            config.trials
        ));
    }
    if cm.value && constant_amplitude {
        caveats.push(
            "Cohen-Macaulay: local-CM with constant amplitude over a catenary H^0 implies CM at every prime".to_string(),
        );
    }
    Ok(RegularityReport {
        amplitude,
        local_dim: cm.local_dim,
        embdim: embdim(real),
        seq_depth: cm.seq_depth.value,
        seq_depth_certified: cm.seq_depth.certified,
        seq_depth_witness: show(&cm.seq_depth.witness, names),
        depth: cm.seq_depth.value as i64 + amplitude.inf as i64,
        is_local_cm: cm.value,
        h0_is_regular_local: h0_regular,
        is_sequence_regular: sr.value,
        sequence_witness: show(&sr.witness, names),
        constant_amplitude,
        kappa,
        caveats,
    })
}
