//! Ideal and submodule computations: Buchberger bases for global orders, Mora
//! standard bases for the local order at the origin, syzygies, colons,
//! saturation, radical membership and Krull dimension.

mod buchberger;
mod dim;
mod ideal;
mod mora;
mod syzygy;
mod vector;

pub use buchberger::GroebnerBasis;
pub use dim::monomial_dimension;
pub use ideal::{Ideal, SATURATION_BUDGET};
pub use mora::{mora_normal_form, standard_basis, MORA_BUDGET};
pub use syzygy::{
    combine, kernel_of_matrix, lift, submodule_basis, submodule_contains, syzygies, unit_columns, Column, TrackedBasis,
};
pub use vector::{ModTerm, ModuleOrder, PositionRule, Vector};
