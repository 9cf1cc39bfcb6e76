use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default order bound for [`subgroups`].
pub const SUBGROUP_ORDER_BOUND: usize = 240;

/// A subgroup, stored as its sorted element indices in the parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
    /// Index of the conjugacy class in the enumeration that produced it.
    pub class_id: Option<usize>,
}

impl Subgroup {
    /// Validates closure; the identity and inverses follow in a finite group.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || elements.iter().any(|&a| a >= g.order()) {
            return Err(Error::NotASubgroup("empty or out-of-range element set".into()));
        }
        let mut member = vec![false; g.order()];
        elements.iter().for_each(|&a| member[a] = true);
        for &a in &elements {
            for &b in &elements {
                if !member[g.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("{a}*{b} leaves the set")));
                }
            }
        }
        Ok(Subgroup { elements, class_id: None })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup { elements: g.generate(gens), class_id: None }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { elements: vec![g.identity()], class_id: None }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: g.elements().collect(), class_id: None }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// `g K g^{-1}`
    pub fn conjugate(&self, grp: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| grp.conjugate(g, h)).collect();
        elements.sort_unstable();
        Subgroup { elements, class_id: self.class_id }
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    /// An element generating the subgroup, if it is cyclic.
    pub fn cyclic_generator(&self, g: &FiniteGroup) -> Option<usize> {
        self.elements.iter().copied().find(|&a| g.element_order(a) == self.order())
    }
}

/// Subgroups of a group, grouped by conjugacy class.
#[derive(Clone, Debug)]
pub struct SubgroupClasses {
    pub classes: Vec<Vec<Subgroup>>,
}

impl SubgroupClasses {
    pub fn all(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().map(|c| &c[0])
    }

    /// The class id of a subgroup given by its elements.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.all().find(|s| s.same_elements(h)).and_then(|s| s.class_id)
    }
}

type Bits = Vec<u64>;

fn to_bits(order: usize, elems: &[usize]) -> Bits {
    let mut b = vec![0u64; order.div_ceil(64)];
    for &e in elems {
        b[e / 64] |= 1 << (e % 64);
    }
    b
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Every subgroup of `g`, grouped into conjugacy classes. Classes are ordered
/// by subgroup order, then by their smallest member.
pub fn subgroups(g: &FiniteGroup) -> Result<SubgroupClasses> {
    subgroups_bounded(g, SUBGROUP_ORDER_BOUND)
}

pub fn subgroups_bounded(g: &FiniteGroup, bound: usize) -> Result<SubgroupClasses> {
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded { order: g.order(), bound });
    }
    let n = g.order();
    let mut index: HashMap<Bits, usize> = HashMap::new();
    // (elements, generators, bits)
    let mut found: Vec<(Vec<usize>, Vec<usize>, Bits)> = Vec::new();
    let mut cyclic: Vec<(usize, Bits)> = Vec::new();
    for a in g.elements() {
        let elems = g.generate(&[a]);
        let bits = to_bits(n, &elems);
        if !index.contains_key(&bits) {
            index.insert(bits.clone(), found.len());
            found.push((elems, vec![a], bits.clone()));
            cyclic.push((a, bits));
        }
    }
    let mut i = 0;
    while i < found.len() {
        for (c, cbits) in &cyclic {
            if subset(cbits, &found[i].2) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.push(*c);
            let elems = g.generate(&gens);
            let bits = to_bits(n, &elems);
            if !index.contains_key(&bits) {
                index.insert(bits.clone(), found.len());
                found.push((elems, gens, bits));
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let index: HashMap<Bits, usize> = found.iter().enumerate().map(|(i, f)| (f.2.clone(), i)).collect();
    let mut class = vec![usize::MAX; found.len()];
    let mut classes: Vec<Vec<Subgroup>> = Vec::new();
    for i in 0..found.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for x in g.elements() {
            let mut conj: Vec<usize> = found[i].0.iter().map(|&h| g.conjugate(x, h)).collect();
            conj.sort_unstable();
            let j = index[&to_bits(n, &conj)];
            if class[j] == usize::MAX {
                class[j] = id;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members.into_iter().map(|j| Subgroup { elements: found[j].0.clone(), class_id: Some(id) }).collect());
    }
    Ok(SubgroupClasses { classes })
}

/// True iff some conjugate of `k` lies inside `h`.
pub fn is_subconjugate(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> bool {
    if h.order() % k.order() != 0 {
        return false;
    }
    g.elements().any(|x| k.elements().iter().all(|&a| h.contains(g.conjugate(x, a))))
}

pub fn are_conjugate(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() == b.order() && is_subconjugate(g, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, elem_ab_product};

    /// Brute-force oracle: every subset closed under multiplication.
    fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        assert!(n <= 12);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let elems: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if Subgroup::new(g, elems.clone()).is_ok() {
                out.push(elems);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        for g in [cyclic_group(6), dihedral_group(3), dihedral_group(4), elem_ab_product(8).unwrap(), cyclic_group(12)] {
            let fast: Vec<Vec<usize>> = {
                let mut v: Vec<_> = subgroups(&g).unwrap().all().map(|s| s.elements().to_vec()).collect();
                v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                v
            };
            assert_eq!(fast, brute_force_subgroups(&g), "{g:?}");
        }
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        assert_eq!(subgroups(&cyclic_group(1)).unwrap().len(), 1);
    }

    #[test]
    fn c6_classes_are_singletons() {
        let s = subgroups(&cyclic_group(6)).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.classes.len(), 4);
        let orders: Vec<usize> = s.representatives().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn d3_classes() {
        let s = subgroups(&dihedral_group(3)).unwrap();
        assert_eq!(s.len(), 6);
        let sizes: Vec<(usize, usize)> = s.classes.iter().map(|c| (c[0].order(), c.len())).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
    }

    #[test]
    fn odd_dihedral_reflections_conjugate() {
        for n in [3, 5, 15] {
            let d = dihedral_group(n);
            let involutions: Vec<usize> = d.elements().filter(|&a| d.element_order(a) == 2).collect();
            assert_eq!(involutions.len(), n);
            let y = d.generator("y").unwrap();
            assert!(involutions.iter().all(|&a| d.elements().any(|g| d.conjugate(g, y) == a)));
            let s = subgroups(&d).unwrap();
            assert_eq!(s.classes.iter().filter(|c| c[0].order() == 2).count(), 1);
        }
    }

    #[test]
    fn subconjugacy() {
        let d = dihedral_group(3);
        let h = Subgroup::generated(&d, &[d.generator("y").unwrap()]);
        let e = Subgroup::trivial(&d);
        assert!(is_subconjugate(&d, &e, &h));
        for r in d.elements().filter(|&a| d.element_order(a) == 2) {
            assert!(is_subconjugate(&d, &Subgroup::generated(&d, &[r]), &h));
        }
        let c3 = Subgroup::generated(&d, &[d.generator("x").unwrap()]);
        assert!(!is_subconjugate(&d, &c3, &h));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(subgroups_bounded(&cyclic_group(10), 8), Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn not_a_subgroup() {
        let d = dihedral_group(3);
        assert!(Subgroup::new(&d, vec![0, 1]).is_err());
    }
}
