//! Free `Z[G]`-resolutions of lattices and `Ext` over the group ring.
//!
//! `Z[G]^r` has coordinates `(s, x) ↦ s·|G| + x`, with `g` acting by
//! `(s, x) ↦ (s, g x)`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{AbGroupNF, GModule, Presentation, PresentedCochainComplex};
use crate::linalg::{kernel_basis, sparse_invariant_factors, Lattice, Matrix, SparseMatrix};
use crate::{Int, IntMatrix};

/// Default bound on the abelian rank `r_j·|G|` of any term.
pub const DEFAULT_RESOLUTION_RANK_BUDGET: usize = 4096;

/// `0 ← L ← F_0 ← F_1 ← … ← F_depth` with `F_j = Z[G]^{ranks[j]}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    group: Arc<FiniteGroup>,
    ranks: Vec<usize>,
    /// `maps[0] : F_0 → L`, `maps[j] : F_j → F_{j-1}`.
    maps: Vec<IntMatrix>,
}

impl Resolution {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `Z[G]`-ranks of the free terms.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn depth(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn map(&self, j: usize) -> &IntMatrix {
        &self.maps[j]
    }

    /// Index of the last nonzero term if the resolution has terminated.
    pub fn length(&self) -> Option<usize> {
        let last_zero = self.ranks.iter().position(|&r| r == 0)?;
        Some(last_zero.saturating_sub(1))
    }

    /// Exactness at every stage: `ε_0` is onto, composites vanish, and each
    /// image is a saturated lattice of the rank of the previous kernel.
    pub fn verify(&self) -> Result<()> {
        let fail = |j: usize| Err(Error::IllDefined(format!("resolution is not exact at stage {j}")));
        let sp = |m: &IntMatrix| SparseMatrix::from_dense(m);
        let f0 = sparse_invariant_factors(&sp(&self.maps[0]));
        if f0.rank != self.maps[0].nrows() || !f0.nontrivial.is_empty() {
            return fail(0);
        }
        let mut prev_rank = f0.rank;
        for j in 1..self.maps.len() {
            if !self.maps[j - 1].mul(&self.maps[j]).is_zero() {
                return fail(j);
            }
            let f = sparse_invariant_factors(&sp(&self.maps[j]));
            if f.rank + prev_rank != self.maps[j - 1].ncols() || !f.nontrivial.is_empty() {
                return fail(j);
            }
            prev_rank = f.rank;
        }
        Ok(())
    }
}

fn regular_translate(group: &FiniteGroup, g: usize, v: &[Int]) -> Vec<Int> {
    let n = group.order();
    let mut out = vec![Int::zero(); v.len()];
    for (idx, a) in v.iter().enumerate() {
        if !a.is_zero() {
            let (s, x) = (idx / n, idx % n);
            out[s * n + group.mul(g, x)] = a.clone();
        }
    }
    out
}

/// Generators of the `G`-stable lattice spanned by the columns of `basis`,
/// chosen greedily: each round takes the candidate (a basis vector or a sum
/// of two) whose translates enlarge the current span the most, measured by
/// rank and then by the drop in pivot product.
fn choose_generators(
    group: &FiniteGroup,
    basis: &IntMatrix,
    act: &dyn Fn(usize, &[Int]) -> Vec<Int>,
) -> Vec<Vec<Int>> {
    let cols: Vec<Vec<Int>> = (0..basis.ncols()).map(|j| basis.column(j)).collect();
    let mut candidates = cols.clone();
    if cols.len() <= 64 {
        for i in 0..cols.len() {
            for j in i + 1..cols.len() {
                candidates.push(cols[i].iter().zip(&cols[j]).map(|(a, b)| a + b).collect());
            }
        }
    }
    let mut lat = Lattice::new(basis.nrows());
    let mut gens = Vec::new();
    while let Some(missing) = cols.iter().position(|b| !lat.contains(b)) {
        let extend = |v: &[Int]| {
            let mut l = lat.clone();
            for g in group.elements() {
                l.insert(&act(g, v));
            }
            l
        };
        let mut best = extend(&cols[missing]);
        let mut best_v = cols[missing].clone();
        for c in &candidates {
            if lat.contains(c) {
                continue;
            }
            let l = extend(c);
            let better = l.rank() > best.rank()
                || (l.rank() == best.rank() && l.pivot_product().abs() < best.pivot_product().abs());
            if better {
                best = l;
                best_v = c.clone();
            }
        }
        lat = best;
        gens.push(best_v);
    }
    gens
}

fn free_map(group: &FiniteGroup, rows: usize, gens: &[Vec<Int>], act: &dyn Fn(usize, &[Int]) -> Vec<Int>) -> IntMatrix {
    let n = group.order();
    let mut m = Matrix::zeros(rows, gens.len() * n);
    for (t, v) in gens.iter().enumerate() {
        for g in group.elements() {
            for (i, a) in act(g, v).into_iter().enumerate() {
                m[(i, t * n + g)] = a;
            }
        }
    }
    m
}

/// A free resolution of the torsion-free module `l` with terms
/// `F_0, …, F_depth`.
pub fn lattice_resolution(l: &GModule, depth: usize, rank_budget: usize) -> Result<Resolution> {
    if !l.presentation().is_free() {
        return Err(Error::Torsion);
    }
    let group = l.group().clone();
    let n = group.order();
    let module_act = |g: usize, v: &[Int]| l.act(g).mul_vec(v);
    let gens = choose_generators(&group, &Matrix::identity(l.rank()), &module_act);
    let mut maps = vec![free_map(&group, l.rank(), &gens, &module_act)];
    let mut ranks = vec![gens.len()];
    let ring_act = |g: usize, v: &[Int]| regular_translate(&group, g, v);
    for _ in 0..depth {
        let last = maps.last().unwrap();
        let kernel = kernel_basis(last);
        let gens = choose_generators(&group, &kernel, &ring_act);
        if gens.len() * n > rank_budget {
            return Err(Error::BudgetExceeded(format!(
                "resolution term of rank {} exceeds the budget {rank_budget}",
                gens.len() * n
            )));
        }
        maps.push(free_map(&group, last.ncols(), &gens, &ring_act));
        ranks.push(gens.len());
    }
    let res = Resolution { group, ranks, maps };
    res.verify()?;
    Ok(res)
}

/// `Hom_G(F_•, M)` in degrees `0..=top`.
fn hom_complex(res: &Resolution, m: &GModule, top: usize) -> Result<PresentedCochainComplex> {
    let group = &res.group;
    if m.group().order() != group.order() {
        return Err(Error::InvalidArgument("module and resolution are over different groups".into()));
    }
    let n = group.order();
    let a = m.rank();
    let terms: Vec<Presentation> =
        (0..=top).map(|j| Presentation::direct_sum(&vec![m.presentation().clone(); res.ranks[j]])).collect();
    let mut deltas = Vec::new();
    for j in 0..top {
        let eps = &res.maps[j + 1];
        let mut t = Vec::new();
        for tt in 0..res.ranks[j + 1] {
            let col = tt * n + group.identity();
            for row in 0..eps.nrows() {
                let c = &eps[(row, col)];
                if c.is_zero() {
                    continue;
                }
                let (s, g) = (row / n, row % n);
                let rho = m.act(g);
                for p in 0..a {
                    for q in 0..a {
                        if !rho[(p, q)].is_zero() {
                            t.push((tt * a + p, s * a + q, c * &rho[(p, q)]));
                        }
                    }
                }
            }
        }
        deltas.push(SparseMatrix::from_triplets(terms[j + 1].gens(), terms[j].gens(), t));
    }
    PresentedCochainComplex::new(terms, deltas)
}

/// `Ext^i_{Z[G]}(L, M)` for `i = 0..=max_i`, from a resolution of `L`.
pub fn ext_groups(res: &Resolution, m: &GModule, max_i: usize) -> Result<Vec<AbGroupNF>> {
    if max_i >= res.depth() {
        return Err(Error::DepthInsufficient { depth: res.depth(), degree: max_i });
    }
    hom_complex(res, m, max_i + 1)?.cohomology(0..=max_i)
}

/// `Ext^i_{Z[G]}(L, M)`.
pub fn ext_group_ring(res: &Resolution, m: &GModule, i: usize) -> Result<AbGroupNF> {
    Ok(ext_groups(res, m, i)?.pop().expect("nonempty range"))
}

/// The trivial module `Z`.
pub fn trivial_z(group: Arc<FiniteGroup>) -> GModule {
    GModule::trivial(group, Presentation::free(1))
}

/// `M^G` as an abelian group, for checking `Ext^0(Z, M)`.
pub fn invariants(m: &GModule) -> Result<AbGroupNF> {
    let a = m.rank();
    let g = m.group();
    let rows: Vec<IntMatrix> = g.elements().map(|x| m.act(x).sub(&Matrix::identity(a))).collect();
    let stacked = rows.iter().skip(1).fold(rows[0].clone(), |acc, r| acc.vcat(r));
    let cx = PresentedCochainComplex::new(
        vec![m.presentation().clone(), Presentation::direct_sum(&vec![m.presentation().clone(); g.order()])],
        vec![SparseMatrix::from_dense(&stacked)],
    )?;
    Ok(cx.cohomology(0..=0)?.remove(0))
}
