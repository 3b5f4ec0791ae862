//! Regular elements and sequences, seq.depth, Cohen-Macaulay and
//! sequence-regular tests, residue DG-fields, and checks of the theorems
//! relating them.

mod report;
mod residue;
mod sequence;
mod verify;

pub use report::{regularity_report, summarize_residue, RegularityReport, ResidueSummary};
pub use residue::{
    apply_matrix, in_small_support, nakayama_check, parameter_change_matrix, realize_at, residue_dg_field,
    residue_dg_field_with, verify_gl_invariance, verify_gl_invariance_against, DGModuleSpec, NakayamaRecord,
    ParameterChangeMatrix, ResidueDGField,
};
pub use sequence::{
    embdim, embdim_of, first_irregular, h0_is_regular_local, is_local_cm, is_minimal_generating_sequence,
    is_regular_element, is_regular_sequence, is_sequence_regular, local_dim, minimal_generators,
    minimal_generators_of, seq_depth, CmVerdict, SearchConfig, SeqDepth, SequenceRegularity,
};
pub use verify::{
    h0_tower, seq_regular_at_points, verify_derived_quotient, verify_double_cm, verify_kos_amp, verify_main,
    verify_sop, DerivedQuotientRecord, DoubleCmRecord, Hypotheses, KosAmpRecord, MainRecord, Outcome,
    PointVerdict, SopRecord,
};

#[cfg(test)]
mod tests;
