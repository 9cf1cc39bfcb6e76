use std::collections::VecDeque;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{left_regular_gset, FiniteGroup, GSet, Subgroup};
use crate::homology::Presentation;
use crate::linalg::Matrix;
use crate::{Int, IntMatrix};

/// A finitely generated `Z[G]`-module: a presented abelian group with an
/// integer matrix for every group element. Matrices act on coordinate
/// columns and are stored reduced modulo the relations.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    presentation: Presentation,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// The abelian group with trivial action.
    pub fn trivial(group: Arc<FiniteGroup>, presentation: Presentation) -> Self {
        let id = Matrix::identity(presentation.gens());
        let action = vec![id; group.order()];
        GModule { group, presentation, action }
    }

    /// Module generated by the given matrices for some group elements; the
    /// remaining elements are filled in by products and the result is
    /// checked to be a well-defined action.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        presentation: Presentation,
        generators: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        let n = presentation.gens();
        for (g, a) in generators {
            if *g >= group.order() || a.shape() != (n, n) {
                return Err(Error::IllDefined(format!("bad action matrix for element {g}")));
            }
            if !presentation.accepts_map_from(&presentation, a) {
                return Err(Error::IllDefined(format!("action of element {g} does not respect relations")));
            }
        }
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[group.identity()] = Some(Matrix::identity(n));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (g, a) in generators {
                let y = group.mul(*g, x);
                if action[y].is_none() {
                    action[y] = Some(presentation.reduce_rows(&a.mul(action[x].as_ref().unwrap())));
                    queue.push_back(y);
                }
            }
        }
        let action: Vec<IntMatrix> = action
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::IllDefined("the given elements do not generate the group".into()))?;
        let m = GModule { group, presentation, action };
        m.check_action(generators)?;
        Ok(m)
    }

    fn check_action(&self, generators: &[(usize, IntMatrix)]) -> Result<()> {
        for (g, a) in generators {
            for x in self.group.elements() {
                let lhs = self.presentation.reduce_rows(&a.mul(&self.action[x]));
                if lhs != self.action[self.group.mul(*g, x)] {
                    return Err(Error::IllDefined(format!(
                        "action matrices violate the group law at ({}, {})",
                        self.group.element_label(*g),
                        self.group.element_label(x)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Free abelian group on the points of a `G`-set, `G` permuting them.
    pub fn permutation(set: &GSet) -> Self {
        let group = set.group().clone();
        let m = set.size();
        let action = group
            .elements()
            .map(|g| Matrix::from_fn(m, m, |i, j| if set.act(g, j) == i { Int::one() } else { Int::zero() }))
            .collect();
        GModule { group, presentation: Presentation::free(m), action }
    }

    /// `Z[G]` with basis the group elements.
    pub fn group_ring(group: Arc<FiniteGroup>) -> Self {
        Self::permutation(&left_regular_gset(group))
    }

    /// Kernel of the augmentation `Z{X} → Z`, with basis `p_i - p_0`
    /// for `i = 1..|X|`.
    pub fn augmentation_kernel(set: &GSet) -> Self {
        let group = set.group().clone();
        let m = set.size();
        let coord = |p: usize, i: usize| -> i64 { i64::from(p != 0 && p == i + 1) };
        let action = group
            .elements()
            .map(|g| {
                // g (p_j - p_0) = (p_{gj} - p_0) - (p_{g0} - p_0)
                Matrix::from_fn(m - 1, m - 1, |i, j| {
                    Int::from(coord(set.act(g, j + 1), i) - coord(set.act(g, 0), i))
                })
            })
            .collect();
        GModule { group, presentation: Presentation::free(m - 1), action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.presentation.gens()
    }

    pub fn act(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// `Σ_g ρ(g)` over a list of elements.
    pub fn sum_of(&self, elements: impl IntoIterator<Item = usize>) -> IntMatrix {
        let n = self.rank();
        elements.into_iter().fold(Matrix::zeros(n, n), |acc, g| acc.add(&self.action[g]))
    }

    /// The same abelian group viewed as a module over a subgroup.
    pub fn restrict(&self, h: &Subgroup) -> GModule {
        let (sub, embed) = self.group.subgroup_group(h);
        let action = embed.iter().map(|&g| self.action[g].clone()).collect();
        GModule { group: Arc::new(sub), presentation: self.presentation.clone(), action }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{coset_gset, cyclic_group, dihedral_group};

    #[test]
    fn augmentation_kernel_of_d3() {
        let g = Arc::new(dihedral_group(3));
        let h = Subgroup::generated(&g, &[g.generator("y").unwrap()]);
        let k = GModule::augmentation_kernel(&coset_gset(g.clone(), &h).unwrap());
        assert_eq!(k.rank(), 2);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(k.act(a).mul(k.act(b)), *k.act(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn generated_modules() {
        let g = Arc::new(cyclic_group(4));
        let neg = Matrix::from_i64_rows(&[vec![-1]]);
        let sign = GModule::from_generators(g.clone(), Presentation::free(1), &[(1, neg.clone())]).unwrap();
        assert_eq!(sign.act(2)[(0, 0)], Int::from(1));
        let c3 = Arc::new(cyclic_group(3));
        assert!(GModule::from_generators(c3, Presentation::free(1), &[(1, neg)]).is_err());
        // multiplication by 2 on Z/3 has order 2, so it is an action of C_4
        let two = Matrix::from_i64_rows(&[vec![2]]);
        let m = GModule::from_generators(g, Presentation::cyclic(3), &[(1, two)]).unwrap();
        assert_eq!(m.act(3)[(0, 0)], Int::from(2));
    }

    #[test]
    fn restriction_keeps_matrices() {
        let g = Arc::new(dihedral_group(3));
        let h = Subgroup::generated(&g, &[g.generator("y").unwrap()]);
        let r = GModule::group_ring(g.clone()).restrict(&h);
        assert_eq!(r.group().order(), 2);
        assert_eq!(r.rank(), 6);
    }
}
