//! DG-rings presented as towers over `S = k[x_1..x_n]`: a quotient `S/J`
//! followed by Koszul extensions and trivial extensions by modules.

mod realization;
mod spec;

pub use realization::{fingerprints_match, realize, AmplitudeProfile, DGRingRealization};
pub use spec::{DGRingSpec, ExtensionModule, Step};

#[cfg(test)]
mod tests;
