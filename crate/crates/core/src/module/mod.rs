//! Finitely presented modules, maps, complexes and their homology.

mod complex;
mod fingerprint;
mod presented;

pub use complex::{ComplexOfModules, ModuleMap};
pub use fingerprint::{FingerprintRecord, ModuleFingerprint};
pub use presented::{monomials_below, subquotient, PresentationSummary, PresentedModule, PrimeIdealSpec};
