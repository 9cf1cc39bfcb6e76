use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::orbit_join;
use crate::error::{Error, Result};
use crate::group::left_regular_gset;
use crate::homology::{
    bredon_cohomology, ext_groups, join_trusted_max, lattice_resolution, trivial_z, CohomologyResult, FreeOrbitSystem,
    GModule, Presentation, PresentedCochainComplex,
};
use crate::linalg::{Matrix, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupCohomologyMethod {
    /// Bredon cohomology of a finite Milnor join of the regular `G`-set.
    Milnor,
    /// The 2-periodic complex alternating `g - 1` and the norm (cyclic `G`).
    Periodic,
    /// `Ext_{Z[G]}(Z, M)` from a lattice resolution of `Z`.
    Resolution,
}

impl fmt::Display for GroupCohomologyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupCohomologyMethod::Milnor => "milnor",
            GroupCohomologyMethod::Periodic => "periodic",
            GroupCohomologyMethod::Resolution => "resolution",
        })
    }
}

impl FromStr for GroupCohomologyMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "milnor" => Ok(Self::Milnor),
            "periodic" => Ok(Self::Periodic),
            "resolution" => Ok(Self::Resolution),
            _ => Err(Error::Parse(format!("unknown method `{s}` (expected milnor, periodic or resolution)"))),
        }
    }
}

/// Budgets shared by the group cohomology methods.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_cells: u128,
    pub resolution_rank: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_cells: crate::complex::DEFAULT_CELL_BUDGET,
            resolution_rank: crate::homology::DEFAULT_RESOLUTION_RANK_BUDGET,
        }
    }
}

/// `H^i(G; M)` for `i = 0..=max_degree`.
pub fn group_cohomology(
    m: &GModule,
    max_degree: usize,
    method: GroupCohomologyMethod,
    budgets: Budgets,
) -> Result<CohomologyResult> {
    let group = m.group().clone();
    match method {
        GroupCohomologyMethod::Periodic => {
            let g = group
                .cyclic_generator()
                .ok_or_else(|| Error::Unsupported(format!("periodic method needs a cyclic group, got {}", group.name())))?;
            let a = m.rank();
            let minus = m.act(g).sub(&Matrix::identity(a));
            let norm = m.sum_of((0..group.order()).map(|k| group.pow(g, k)));
            let deltas = (0..=max_degree)
                .map(|j| SparseMatrix::from_dense(if j % 2 == 0 { &minus } else { &norm }))
                .collect();
            let terms = vec![m.presentation().clone(); max_degree + 2];
            let groups = PresentedCochainComplex::new(terms, deltas)?.cohomology(0..=max_degree)?;
            Ok(CohomologyResult::new(0, groups, Some(max_degree), format!("periodic complex of {}", group.name())))
        }
        GroupCohomologyMethod::Milnor => {
            let k = max_degree + 2;
            let x = orbit_join(&left_regular_gset(group.clone()), k, budgets.max_cells)?;
            let mut r = bredon_cohomology(&x, &FreeOrbitSystem::new(m.clone()), max_degree, join_trusted_max(k))?;
            r.note = format!("Milnor join E{}^(*{k}); {}", group.name(), r.note);
            Ok(r)
        }
        GroupCohomologyMethod::Resolution => {
            let res = lattice_resolution(&trivial_z(group.clone()), max_degree + 1, budgets.resolution_rank)?;
            let groups = ext_groups(&res, m, max_degree)?;
            let note = format!("Ext over Z[{}] from a resolution with ranks {:?}", group.name(), res.ranks());
            Ok(CohomologyResult::new(0, groups, Some(max_degree), note))
        }
    }
}

/// `Z` or `Z/m` with trivial action.
pub fn trivial_module(group: std::sync::Arc<crate::group::FiniteGroup>, modulus: u64) -> GModule {
    GModule::trivial(group, Presentation::cyclic(modulus))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{cyclic_group, dihedral_group};
    use crate::homology::AbGroupNF;

    #[test]
    fn cyclic_integer_cohomology() {
        let g = Arc::new(cyclic_group(6));
        let m = trivial_module(g, 0);
        let p = group_cohomology(&m, 4, GroupCohomologyMethod::Periodic, Budgets::default()).unwrap();
        let z6 = AbGroupNF::cyclic(6);
        assert_eq!(p.groups(), vec![AbGroupNF::free(1), AbGroupNF::zero(), z6.clone(), AbGroupNF::zero(), z6]);
    }

    #[test]
    fn coprime_coefficients_vanish() {
        let g = Arc::new(cyclic_group(2));
        let r = group_cohomology(&trivial_module(g, 5), 4, GroupCohomologyMethod::Periodic, Budgets::default()).unwrap();
        assert_eq!(r.get(0), Some(&AbGroupNF::cyclic(5)));
        assert!((1..=4).all(|i| r.get(i).unwrap().is_zero()));
    }

    #[test]
    fn methods_agree_on_small_groups() {
        for g in [Arc::new(cyclic_group(3)), Arc::new(cyclic_group(4))] {
            for modulus in [0u64, 2, 3] {
                let m = trivial_module(g.clone(), modulus);
                let a = group_cohomology(&m, 3, GroupCohomologyMethod::Periodic, Budgets::default()).unwrap();
                let b = group_cohomology(&m, 3, GroupCohomologyMethod::Milnor, Budgets::default()).unwrap();
                let c = group_cohomology(&m, 3, GroupCohomologyMethod::Resolution, Budgets::default()).unwrap();
                assert_eq!(a.groups(), b.groups(), "{} Z/{modulus}", g.name());
                assert_eq!(a.groups(), c.groups(), "{} Z/{modulus}", g.name());
            }
        }
    }

    #[test]
    fn dihedral_cohomology() {
        // H^*(D_3; Z) = Z, 0, Z/2, 0, Z/6
        let g = Arc::new(dihedral_group(3));
        let m = trivial_module(g.clone(), 0);
        let r = group_cohomology(&m, 4, GroupCohomologyMethod::Resolution, Budgets::default()).unwrap();
        let expect = [AbGroupNF::free(1), AbGroupNF::zero(), AbGroupNF::cyclic(2), AbGroupNF::zero(), AbGroupNF::cyclic(6)];
        assert_eq!(r.groups(), expect.to_vec());
        let b = group_cohomology(&m, 3, GroupCohomologyMethod::Milnor, Budgets::default()).unwrap();
        assert_eq!(b.groups(), expect[..4].to_vec());
        assert!(matches!(
            group_cohomology(&m, 2, GroupCohomologyMethod::Periodic, Budgets::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
