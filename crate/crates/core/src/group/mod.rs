//! Finite groups by multiplication table, their subgroups and `G`-sets.

mod finite;
mod gset;
mod subgroup;

pub use finite::{
    cyclic_group, dihedral_group, elem_ab_product, FiniteGroup, GroupFamily, GroupSpec, EXHAUSTIVE_AXIOM_BOUND,
};
pub use gset::{coset_gset, left_regular_gset, GSet};
pub use subgroup::{
    are_conjugate, is_subconjugate, subgroups, subgroups_bounded, Subgroup, SubgroupClasses, SUBGROUP_ORDER_BOUND,
};
