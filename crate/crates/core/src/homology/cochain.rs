//! Cohomology of cochain complexes whose terms are presented abelian
//! groups.
//!
//! A complex `C^n = Z^{a_n} / R_n` is given by integer lifts `δ_n` of its
//! differentials. It is replaced by the free complex
//! `T^n = Z^{a_n} ⊕ Z^{r_{n+1}}` with
//! `D(x, y) = (δx + R y, -k x - h y)` where `R h = δ R` and `R k = δ δ`;
//! `T` maps onto `C` with acyclic kernel, so both have the same cohomology.
//! Everything therefore reduces to ranks and invariant factors of sparse
//! integer matrices.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{AbGroupNF, Presentation};
use crate::linalg::{sparse_invariant_factors, InvariantFactors, SparseMatrix};
use crate::{Int, SparseIntMatrix};

#[derive(Clone, Debug)]
pub struct PresentedCochainComplex {
    terms: Vec<Presentation>,
    deltas: Vec<SparseIntMatrix>,
}

impl PresentedCochainComplex {
    /// `deltas[n]` lifts `C^n → C^{n+1}`; there may be one fewer delta than
    /// terms (the complex ends) or equally many (the last target is
    /// implicit and only used for the kernel at the top degree).
    pub fn new(terms: Vec<Presentation>, deltas: Vec<SparseIntMatrix>) -> Result<Self> {
        if deltas.len() + 1 < terms.len() || deltas.len() > terms.len() {
            return Err(Error::InvalidArgument("cochain complex needs a differential between consecutive terms".into()));
        }
        for (n, d) in deltas.iter().enumerate() {
            let rows = terms.get(n + 1).map(Presentation::gens);
            if d.ncols() != terms[n].gens() || rows.is_some_and(|r| r != d.nrows()) {
                return Err(Error::InvalidArgument(format!("differential {n} has the wrong shape")));
            }
        }
        Ok(PresentedCochainComplex { terms, deltas })
    }

    /// A complex of free modules.
    pub fn free(deltas: Vec<SparseIntMatrix>) -> Result<Self> {
        let mut terms: Vec<Presentation> = deltas.iter().map(|d| Presentation::free(d.ncols())).collect();
        if let Some(last) = deltas.last() {
            terms.push(Presentation::free(last.nrows()));
        }
        Self::new(terms, deltas)
    }

    pub fn terms(&self) -> &[Presentation] {
        &self.terms
    }

    pub fn delta(&self, n: usize) -> Option<&SparseIntMatrix> {
        self.deltas.get(n)
    }

    fn term(&self, n: usize) -> Presentation {
        if let Some(t) = self.terms.get(n) {
            return t.clone();
        }
        // implicit free target of a final differential
        match n.checked_sub(1).and_then(|m| self.deltas.get(m)) {
            Some(d) if n == self.terms.len() => Presentation::free(d.nrows()),
            _ => Presentation::zero(),
        }
    }

    fn delta_or_zero(&self, n: usize) -> SparseIntMatrix {
        self.deltas.get(n).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.term(n + 1).gens(), self.term(n).gens()))
    }

    /// `h` with `R_{n+1} h = δ_n R_n`.
    fn h(&self, n: usize) -> Result<Vec<(usize, usize, Int)>> {
        let (src, dst) = (self.term(n), self.term(n + 1));
        let delta = self.delta_or_zero(n).transpose();
        let dst_rel = relation_index(&dst);
        let mut out = Vec::new();
        for (j, g) in src.relation_generators().into_iter().enumerate() {
            for (i, v) in delta.row(g) {
                let v = v * &src.moduli()[g];
                match dst_rel[*i] {
                    Some(ri) => {
                        let m = &dst.moduli()[*i];
                        if !num_integer::Integer::is_multiple_of(&v, m) {
                            return Err(Error::IllDefined(format!("differential {n} does not respect relations")));
                        }
                        out.push((ri, j, v / m));
                    }
                    None if v.is_zero() => {}
                    None => return Err(Error::IllDefined(format!("differential {n} sends torsion to a free generator"))),
                }
            }
        }
        Ok(out)
    }

    /// `k` with `R_{n+2} k = δ_{n+1} δ_n`.
    fn k(&self, n: usize) -> Result<Vec<(usize, usize, Int)>> {
        if n + 1 >= self.deltas.len() {
            return Ok(Vec::new());
        }
        let prod = self.deltas[n + 1].mul(&self.deltas[n]);
        let dst = self.term(n + 2);
        let rel = relation_index(&dst);
        let mut out = Vec::new();
        for (i, c, v) in prod.triplets() {
            match rel[i] {
                Some(ri) if num_integer::Integer::is_multiple_of(v, &dst.moduli()[i]) => {
                    out.push((ri, c, v / &dst.moduli()[i]))
                }
                _ => return Err(Error::NonzeroComposite { degree: n + 1 }),
            }
        }
        Ok(out)
    }

    /// Total differential `D^n : T^n → T^{n+1}` for `n ≥ -1` (passed as `n + 1`).
    fn total_differential(&self, n_plus_1: usize) -> Result<SparseIntMatrix> {
        let a = |m: isize| if m < 0 { 0 } else { self.term(m as usize).gens() };
        let r = |m: isize| if m < 0 { 0 } else { self.term(m as usize).relation_count() };
        let n = n_plus_1 as isize - 1;
        let (a0, r1, a1, r2) = (a(n), r(n + 1), a(n + 1), r(n + 2));
        let mut t: Vec<(usize, usize, Int)> = Vec::new();
        if n >= 0 {
            let d = self.delta_or_zero(n as usize);
            t.extend(d.triplets().map(|(i, j, v)| (i, j, v.clone())));
            t.extend(self.k(n as usize)?.into_iter().map(|(i, j, v)| (a1 + i, j, -v)));
        }
        let dst = self.term((n + 1) as usize);
        for (j, g) in dst.relation_generators().into_iter().enumerate() {
            t.push((g, a0 + j, dst.moduli()[g].clone()));
        }
        t.extend(self.h((n + 1) as usize)?.into_iter().map(|(i, j, v)| (a1 + i, a0 + j, -v)));
        Ok(SparseMatrix::from_triplets(a1 + r2, a0 + r1, t))
    }

    /// `H^n` for `n` in `degrees`.
    pub fn cohomology(&self, degrees: std::ops::RangeInclusive<usize>) -> Result<Vec<AbGroupNF>> {
        let (lo, hi) = (*degrees.start(), *degrees.end());
        if hi < lo {
            return Ok(Vec::new());
        }
        if let Some(groups) = self.uniform_torsion_cohomology(lo, hi) {
            return Ok(groups);
        }
        // D^{lo-1} ..= D^{hi}, indexed by n + 1
        let mats: Vec<SparseIntMatrix> = (lo..=hi + 1).map(|m| self.total_differential(m)).collect::<Result<_>>()?;
        let factors: Vec<InvariantFactors<Int>> = mats.par_iter().map(sparse_invariant_factors).collect();
        Ok((lo..=hi)
            .map(|n| {
                let into = &factors[n - lo];
                let out = &factors[n - lo + 1];
                let size = mats[n - lo + 1].ncols();
                AbGroupNF::from_invariant_factors(size - out.rank - into.rank, into)
            })
            .collect())
    }
}

impl PresentedCochainComplex {
    /// Shortcut for `C ⊗ Z/m` with `C` an honest free complex: every term
    /// involved is `(Z/m)^a` for one `m` and the lifts compose to zero over
    /// `Z`, so the universal coefficient theorem applies to the invariant
    /// factors of the lifts.
    fn uniform_torsion_cohomology(&self, lo: usize, hi: usize) -> Option<Vec<AbGroupNF>> {
        let first = lo.saturating_sub(1);
        let m = self.term(lo).moduli().first()?.clone();
        if m.is_zero() {
            return None;
        }
        for n in first..=hi + 1 {
            if self.term(n).moduli().iter().any(|x| *x != m) {
                return None;
            }
        }
        for n in first..=hi {
            if let (Some(d0), Some(d1)) = (self.deltas.get(n), self.deltas.get(n + 1)) {
                if !d1.mul(d0).is_zero() {
                    return None;
                }
            }
        }
        // factors[n - first] belongs to δ_n : C^n → C^{n+1}; δ_{-1} = 0
        let factors: Vec<InvariantFactors<Int>> =
            (first..=hi).into_par_iter().map(|n| sparse_invariant_factors(&self.delta_or_zero(n))).collect();
        let none = InvariantFactors { rank: 0, nontrivial: Vec::new() };
        let reduce = |f: &InvariantFactors<Int>| -> Vec<Int> {
            f.nontrivial.iter().map(|d| num_integer::Integer::gcd(d, &m)).filter(|g| !g.is_one()).collect()
        };
        Some(
            (lo..=hi)
                .map(|n| {
                    let into = if n == 0 { &none } else { &factors[n - 1 - first] };
                    let out = &factors[n - first];
                    let free = self.term(n).gens() - into.rank - out.rank;
                    let parts = std::iter::repeat_n(m.clone(), free).chain(reduce(into)).chain(reduce(out));
                    AbGroupNF::from_factors(0, parts)
                })
                .collect(),
        )
    }
}

fn relation_index(p: &Presentation) -> Vec<Option<usize>> {
    let mut idx = vec![None; p.gens()];
    for (j, g) in p.relation_generators().into_iter().enumerate() {
        idx[g] = Some(j);
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeGroup {
    pub degree: usize,
    #[serde(flatten)]
    pub group: AbGroupNF,
    pub trusted: bool,
}

/// Cohomology in a range of degrees, with the degrees where the model is
/// known to compute the intended groups marked `trusted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub degrees: Vec<DegreeGroup>,
    pub trusted_max: Option<usize>,
    pub note: String,
}

impl CohomologyResult {
    pub fn new(start: usize, groups: Vec<AbGroupNF>, trusted_max: Option<usize>, note: impl Into<String>) -> Self {
        let degrees = groups
            .into_iter()
            .enumerate()
            .map(|(i, group)| {
                let degree = start + i;
                DegreeGroup { degree, group, trusted: trusted_max.is_some_and(|t| degree <= t) }
            })
            .collect();
        CohomologyResult { degrees, trusted_max, note: note.into() }
    }

    pub fn get(&self, degree: usize) -> Option<&AbGroupNF> {
        self.degrees.iter().find(|d| d.degree == degree).map(|d| &d.group)
    }

    pub fn groups(&self) -> Vec<AbGroupNF> {
        self.degrees.iter().map(|d| d.group.clone()).collect()
    }
}

/// Cohomology of a free cochain complex given by its coboundary matrices
/// (`deltas[n] : Z^{c_n} → Z^{c_{n+1}}`), for degrees `0..=max_degree`.
pub fn cohomology_from_cochains(
    deltas: &[SparseIntMatrix],
    max_degree: usize,
    trusted_max: Option<usize>,
) -> Result<CohomologyResult> {
    for n in 1..deltas.len() {
        if !deltas[n].mul(&deltas[n - 1]).is_zero() {
            return Err(Error::NonzeroComposite { degree: n });
        }
    }
    let cx = PresentedCochainComplex::free(deltas.to_vec())?;
    let top = deltas.len();
    let hi = max_degree.min(top);
    let groups = cx.cohomology(0..=hi)?;
    Ok(CohomologyResult::new(0, groups, trusted_max.map(|t| t.min(hi)), "free cochain complex"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn sp(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseMatrix::from_dense(&Matrix::from_i64_rows(rows))
    }

    // circle: two vertices, two edges
    fn circle_delta() -> SparseIntMatrix {
        sp(&[vec![-1, 1], vec![-1, 1]])
    }

    #[test]
    fn circle_integer() {
        let r = cohomology_from_cochains(&[circle_delta()], 1, Some(1)).unwrap();
        assert_eq!(r.groups(), vec![AbGroupNF::free(1), AbGroupNF::free(1)]);
    }

    #[test]
    fn circle_mod_coefficients() {
        for m in [2u64, 5, 6] {
            let terms = vec![Presentation::from_moduli(vec![Int::from(m); 2]); 2];
            let cx = PresentedCochainComplex::new(terms, vec![circle_delta()]).unwrap();
            assert_eq!(cx.cohomology(0..=1).unwrap(), vec![AbGroupNF::cyclic(m), AbGroupNF::cyclic(m)]);
        }
    }

    #[test]
    fn rp2_mod_two_and_three() {
        // minimal cell structure of RP^2: Z -0-> Z -2-> Z
        let deltas = vec![sp(&[vec![0]]), sp(&[vec![2]])];
        let r = cohomology_from_cochains(&deltas, 2, None).unwrap();
        assert_eq!(r.groups(), vec![AbGroupNF::free(1), AbGroupNF::zero(), AbGroupNF::cyclic(2)]);
        for (m, expect) in [(2u64, [2u64, 2, 2]), (3, [3, 1, 1]), (4, [4, 2, 2])] {
            let terms = vec![Presentation::cyclic(m); 3];
            let cx = PresentedCochainComplex::new(terms, deltas.clone()).unwrap();
            let got = cx.cohomology(0..=2).unwrap();
            assert_eq!(got, expect.map(AbGroupNF::cyclic).to_vec(), "Z/{m}");
        }
    }

    #[test]
    fn composites_only_need_to_vanish_mod_relations() {
        // Z/4 --2--> Z/4 --2--> Z/4: δδ = 4 ≡ 0
        let terms = vec![Presentation::cyclic(4); 3];
        let cx = PresentedCochainComplex::new(terms, vec![sp(&[vec![2]]), sp(&[vec![2]])]).unwrap();
        assert_eq!(cx.cohomology(0..=2).unwrap(), vec![AbGroupNF::cyclic(2), AbGroupNF::zero(), AbGroupNF::cyclic(2)]);
        let bad = PresentedCochainComplex::new(vec![Presentation::cyclic(4); 3], vec![sp(&[vec![1]]), sp(&[vec![2]])]);
        assert!(matches!(bad.unwrap().cohomology(0..=2), Err(Error::NonzeroComposite { .. })));
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let cx = PresentedCochainComplex::new(vec![Presentation::cyclic(2), Presentation::cyclic(4)], vec![sp(&[vec![1]])]).unwrap();
        assert!(matches!(cx.cohomology(0..=1), Err(Error::IllDefined(_))));
    }

    #[test]
    fn zero_coefficients() {
        let terms = vec![Presentation::zero(); 2];
        let cx = PresentedCochainComplex::new(terms, vec![SparseMatrix::zeros(0, 0)]).unwrap();
        assert!(cx.cohomology(0..=1).unwrap().iter().all(AbGroupNF::is_zero));
    }
}
