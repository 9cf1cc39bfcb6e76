//! Exact homological algebra over the integers.

mod abgroup;
mod bredon;
mod cohehdn;
mod cochain;
mod coefficients;
mod group_cohomology;
mod module;
mod presentation;
mod resolution;

pub use abgroup::AbGroupNF;
pub use bredon::{bredon_cochains, bredon_cohomology, join_trusted_max};
pub use cohehdn::{cohehdn_verify, CohehdnReport, CohehdnRow};
pub use cochain::{cohomology_from_cochains, CohomologyResult, DegreeGroup, PresentedCochainComplex};
pub use coefficients::{
    check_functoriality, parse_constant, CoefficientSystem, ConstantSystem, FreeOrbitSystem, MorphismJson,
    SubconjugateIndicator, TabulatedJson, TabulatedSystem, ValueJson,
};
pub use group_cohomology::{group_cohomology, trivial_module, Budgets, GroupCohomologyMethod};
pub use module::GModule;
pub use presentation::{Normalized, Presentation};
pub use resolution::{
    ext_group_ring, ext_groups, invariants, lattice_resolution, trivial_z, Resolution, DEFAULT_RESOLUTION_RANK_BUDGET,
};
