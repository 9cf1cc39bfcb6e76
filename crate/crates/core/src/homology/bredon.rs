use num_traits::Zero;
use rayon::prelude::*;

use crate::complex::GSimplicialComplex;
use crate::error::Result;
use crate::homology::{CoefficientSystem, CohomologyResult, Presentation, PresentedCochainComplex};
use crate::linalg::SparseMatrix;
use crate::Int;

/// Degrees in which a `k`-fold join computes the cohomology of the infinite
/// join: the `k`-fold join is `(k-2)`-connected of dimension `k-1`, so its
/// top degree is not yet the limit value.
pub fn join_trusted_max(k: usize) -> Option<usize> {
    k.checked_sub(2)
}

/// Bredon cochains `C^n = ⊕_{n-cell orbits} M(G/H_σ)` in degrees
/// `0..=max_degree + 1` (or the top dimension, if smaller).
pub fn bredon_cochains(
    x: &GSimplicialComplex,
    m: &dyn CoefficientSystem,
    max_degree: usize,
) -> Result<PresentedCochainComplex> {
    let data = x.orbit_chain_data();
    let top = data.len().min(max_degree + 2);
    let values: Vec<Vec<Presentation>> = data[..top]
        .iter()
        .map(|cells| cells.iter().map(|c| m.value(&c.isotropy)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let offsets: Vec<Vec<usize>> = values
        .iter()
        .map(|v| {
            v.iter()
                .scan(0, |acc, p| {
                    let o = *acc;
                    *acc += p.gens();
                    Some(o)
                })
                .collect()
        })
        .collect();
    let terms: Vec<Presentation> = values.iter().map(|v| Presentation::direct_sum(v)).collect();
    let deltas = (1..top)
        .into_par_iter()
        .map(|n| {
            let mut t: Vec<(usize, usize, Int)> = Vec::new();
            for (o, cell) in data[n].iter().enumerate() {
                for f in &cell.faces {
                    let h = &data[n - 1][f.orbit].isotropy;
                    let a = m.morphism(&cell.isotropy, h, f.element)?;
                    let (r0, c0) = (offsets[n][o], offsets[n - 1][f.orbit]);
                    for i in 0..a.nrows() {
                        for j in 0..a.ncols() {
                            let v = &a[(i, j)];
                            if !v.is_zero() {
                                t.push((r0 + i, c0 + j, if f.sign > 0 { v.clone() } else { -v.clone() }));
                            }
                        }
                    }
                }
            }
            Ok(SparseMatrix::from_triplets(terms[n].gens(), terms[n - 1].gens(), t))
        })
        .collect::<Result<Vec<_>>>()?;
    PresentedCochainComplex::new(terms, deltas)
}

/// `H^i_G(X; M)` for `i = 0..=max_degree`, flagged trusted up to
/// `trusted_max`.
pub fn bredon_cohomology(
    x: &GSimplicialComplex,
    m: &dyn CoefficientSystem,
    max_degree: usize,
    trusted_max: Option<usize>,
) -> Result<CohomologyResult> {
    let cx = bredon_cochains(x, m, max_degree)?;
    let hi = max_degree.min(cx.terms().len().saturating_sub(1));
    let groups = cx.cohomology(0..=hi)?;
    let note = format!("Bredon cochains of {} over {} cells, coefficients: {}", x.group().name(), x.complex().total(), m.describe());
    Ok(CohomologyResult::new(0, groups, trusted_max, note))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::{orbit_join, DEFAULT_CELL_BUDGET};
    use crate::group::{coset_gset, cyclic_group, dihedral_group, left_regular_gset, Subgroup};
    use crate::homology::{parse_constant, AbGroupNF, ConstantSystem, SubconjugateIndicator};

    #[test]
    fn point_has_only_degree_zero() {
        let g = Arc::new(dihedral_group(3));
        let pt = coset_gset(g.clone(), &Subgroup::whole(&g)).unwrap();
        let x = orbit_join(&pt, 1, DEFAULT_CELL_BUDGET).unwrap();
        let cx = bredon_cochains(&x, &parse_constant(g.clone(), "Z/4").unwrap(), 3).unwrap();
        assert_eq!(cx.terms().len(), 1);
        let r = bredon_cohomology(&x, &parse_constant(g, "Z/4").unwrap(), 3, Some(3)).unwrap();
        assert_eq!(r.groups(), vec![AbGroupNF::cyclic(4)]);
    }

    #[test]
    fn connected_free_complex_has_h0_z() {
        let g = Arc::new(cyclic_group(4));
        let x = orbit_join(&left_regular_gset(g.clone()), 3, DEFAULT_CELL_BUDGET).unwrap();
        let r = bredon_cohomology(&x, &parse_constant(g, "Z").unwrap(), 1, Some(1)).unwrap();
        assert_eq!(r.get(0), Some(&AbGroupNF::free(1)));
    }

    #[test]
    fn indicator_cochain_counts() {
        let g = Arc::new(dihedral_group(3));
        let h = Subgroup::generated(&g, &[g.generator("y").unwrap()]);
        let x = orbit_join(&coset_gset(g.clone(), &h).unwrap(), 2, DEFAULT_CELL_BUDGET).unwrap();
        let cx = bredon_cochains(&x, &SubconjugateIndicator::new(g.clone(), h), 1).unwrap();
        assert_eq!(cx.terms()[0].gens(), 2);
        // edges: 3 orbits with reflection isotropy and 1 free orbit, all subconjugate to <y>
        assert_eq!(cx.terms()[1].gens(), x.orbits(1).len());
    }

    #[test]
    fn zero_system_gives_zero() {
        let g = Arc::new(dihedral_group(3));
        let h = Subgroup::generated(&g, &[g.generator("y").unwrap()]);
        let x = orbit_join(&coset_gset(g.clone(), &h).unwrap(), 4, DEFAULT_CELL_BUDGET).unwrap();
        let r = bredon_cohomology(&x, &ConstantSystem::zero(g), 3, Some(2)).unwrap();
        assert!(r.groups().iter().all(AbGroupNF::is_zero));
        assert!(r.degrees[2].trusted && !r.degrees[3].trusted);
    }
}
