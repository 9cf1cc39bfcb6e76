//! Numerical check of the comparison between Bredon cohomology of
//! `E_H D_n` (`H = <y>`, `n` odd) and `Ext` of the augmentation kernel
//! `𝒦 = ker(Z{D_n/H} → Z)`.
//!
//! From `0 → 𝒦 → Z{D_n/H} → Z → 0` and `Ext^j(Z{D_n/H}, M) = H^j(H; M)`,
//! `Ext^{i-1}(𝒦, M^e)` sits between `H^{i-1}(H; M^e)` and `H^i(D_n; M^e)`,
//! so it vanishes when both of those do.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::orbit_join;
use crate::error::{Error, Result};
use crate::group::{coset_gset, FiniteGroup, GroupFamily, Subgroup};
use crate::homology::{
    bredon_cohomology, ext_groups, group_cohomology, join_trusted_max, lattice_resolution, AbGroupNF, Budgets,
    CoefficientSystem, GModule, GroupCohomologyMethod,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohehdnRow {
    pub i: usize,
    /// `H^i_{D_n}(E_H D_n; M)` from the join model.
    pub bredon: AbGroupNF,
    /// `Ext^{i-1}_{D_n}(𝒦, M^e)`.
    pub ext: AbGroupNF,
    pub isomorphic: bool,
    /// `H^i(D_n; M^e)`.
    pub group_cohomology: AbGroupNF,
    /// `H^{i-1}(H; M^e)`.
    pub subgroup_cohomology: AbGroupNF,
    pub vanishing_predicted: bool,
    /// Present when vanishing is predicted: whether the Bredon group is 0.
    pub vanishing_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohehdnReport {
    pub n: usize,
    pub coefficients: String,
    pub join_copies: usize,
    pub trusted_max: Option<usize>,
    pub resolution_ranks: Vec<usize>,
    pub rows: Vec<CohehdnRow>,
}

impl CohehdnReport {
    pub fn all_isomorphic(&self) -> bool {
        self.rows.iter().all(|r| r.isomorphic)
    }

    /// No predicted vanishing failed.
    pub fn vanishing_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.vanishing_holds != Some(false))
    }
}

fn dihedral_n(g: &FiniteGroup) -> Result<usize> {
    match g.family() {
        GroupFamily::Dihedral(n) if n % 2 == 1 => Ok(*n),
        _ => Err(Error::Unsupported(format!("needs D_n with n odd, got {}", g.name()))),
    }
}

/// Rows for `i = 2..=max_i`, and also `i = 1` when `M^e = 0`.
pub fn cohehdn_verify(m: &dyn CoefficientSystem, max_i: usize, budgets: Budgets) -> Result<CohehdnReport> {
    let group: Arc<FiniteGroup> = m.group().clone();
    let n = dihedral_n(&group)?;
    let me: GModule = m.underlying_module()?;
    let first = if me.presentation().is_zero() { 1 } else { 2 };
    if max_i < first {
        return Err(Error::InvalidArgument(format!("max_i must be at least {first}")));
    }
    let h = Subgroup::generated(&group, &[group.generator("y").expect("dihedral generator y")]);
    let set = coset_gset(group.clone(), &h)?;

    let copies = max_i + 2;
    let x = orbit_join(&set, copies, budgets.max_cells)?;
    let trusted_max = join_trusted_max(copies);
    let bredon = bredon_cohomology(&x, m, max_i, trusted_max)?;

    let kernel = GModule::augmentation_kernel(&set);
    let res = lattice_resolution(&kernel, max_i, budgets.resolution_rank)?;
    let ext = ext_groups(&res, &me, max_i - 1)?;

    let gc = group_cohomology(&me, max_i, GroupCohomologyMethod::Resolution, budgets)?;
    let hc = group_cohomology(&me.restrict(&h), max_i - 1, GroupCohomologyMethod::Periodic, budgets)?;

    let rows = (first..=max_i)
        .map(|i| {
            let b = bredon.get(i).cloned().unwrap_or_default();
            let e = ext[i - 1].clone();
            let g_i = gc.get(i).cloned().unwrap_or_default();
            let h_prev = hc.get(i - 1).cloned().unwrap_or_default();
            let predicted = g_i.is_zero() && h_prev.is_zero();
            CohehdnRow {
                i,
                isomorphic: b == e,
                vanishing_holds: predicted.then(|| b.is_zero()),
                bredon: b,
                ext: e,
                group_cohomology: g_i,
                subgroup_cohomology: h_prev,
                vanishing_predicted: predicted,
            }
        })
        .collect();
    Ok(CohehdnReport {
        n,
        coefficients: m.describe(),
        join_copies: copies,
        trusted_max,
        resolution_ranks: res.ranks().to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dihedral_group;
    use crate::homology::{parse_constant, ConstantSystem};

    #[test]
    fn zero_system() {
        let g = Arc::new(dihedral_group(3));
        let r = cohehdn_verify(&ConstantSystem::zero(g), 3, Budgets::default()).unwrap();
        assert_eq!(r.rows.first().unwrap().i, 1);
        assert!(r.rows.iter().all(|row| row.bredon.is_zero() && row.isomorphic && row.vanishing_holds == Some(true)));
    }

    #[test]
    fn coprime_coefficients() {
        let g = Arc::new(dihedral_group(3));
        let r = cohehdn_verify(&parse_constant(g, "Z/5").unwrap(), 4, Budgets::default()).unwrap();
        assert_eq!(r.rows.len(), 3);
        for row in &r.rows {
            assert!(row.isomorphic && row.vanishing_predicted && row.vanishing_holds == Some(true), "{row:?}");
        }
    }

    #[test]
    fn even_modulus() {
        let g = Arc::new(dihedral_group(3));
        let r = cohehdn_verify(&parse_constant(g, "Z/4").unwrap(), 3, Budgets::default()).unwrap();
        assert!(r.all_isomorphic(), "{r:?}");
        assert!(r.vanishing_consistent());
    }

    #[test]
    fn rejects_other_groups() {
        let g = Arc::new(crate::group::cyclic_group(6));
        assert!(cohehdn_verify(&parse_constant(g, "Z/5").unwrap(), 3, Budgets::default()).is_err());
    }
}
