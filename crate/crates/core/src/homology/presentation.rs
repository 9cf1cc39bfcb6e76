use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::AbGroupNF;
use crate::linalg::{smith_normal_form, Matrix};
use crate::{Int, IntMatrix};

/// A finitely generated abelian group `⊕ Z/m_i` with one generator per
/// modulus; `m_i = 0` marks a free generator and every other `m_i ≥ 2`.
///
/// The relation matrix is the diagonal of the nonzero moduli, so it is
/// injective by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Presentation {
    moduli: Vec<Int>,
}

/// A presentation produced from arbitrary relations, with the maps to and
/// from the original generators.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub presentation: Presentation,
    /// Original coordinates to normalized ones (`new × old`).
    pub project: IntMatrix,
    /// Normalized generators in original coordinates (`old × new`).
    pub lift: IntMatrix,
}

impl Presentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Presentation { moduli: vec![Int::zero(); rank] }
    }

    /// `Z/m` (`m = 0` gives `Z`, `m = 1` the zero group).
    pub fn cyclic(m: u64) -> Self {
        Self::from_moduli([Int::from(m)])
    }

    /// `⊕ Z/m_i`; unit moduli are dropped.
    pub fn from_moduli(moduli: impl IntoIterator<Item = Int>) -> Self {
        Presentation { moduli: moduli.into_iter().map(|m| m.abs()).filter(|m| !m.is_one()).collect() }
    }

    /// Normal form of `Z^gens / (column span of relations)`.
    pub fn from_relations(gens: usize, relations: &IntMatrix) -> Result<Normalized> {
        if relations.nrows() != gens {
            return Err(Error::IllDefined(format!(
                "relation matrix has {} rows for {gens} generators",
                relations.nrows()
            )));
        }
        let snf = smith_normal_form(relations, true);
        let t = snf.transforms.expect("requested transforms");
        let mut keep = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..gens {
            let d = snf.factors.get(i).cloned().unwrap_or_else(Int::zero);
            if !d.is_one() {
                keep.push(i);
                moduli.push(d);
            }
        }
        let project = Matrix::from_fn(keep.len(), gens, |r, c| t.left[(keep[r], c)].clone());
        let lift = Matrix::from_fn(gens, keep.len(), |r, c| t.left_inv[(r, keep[c])].clone());
        Ok(Normalized { presentation: Presentation { moduli }, project, lift })
    }

    pub fn gens(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn is_free(&self) -> bool {
        self.moduli.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Number of relations (torsion generators).
    pub fn relation_count(&self) -> usize {
        self.moduli.iter().filter(|m| !m.is_zero()).count()
    }

    /// Generator index of each relation column.
    pub fn relation_generators(&self) -> Vec<usize> {
        (0..self.gens()).filter(|&i| !self.moduli[i].is_zero()).collect()
    }

    pub fn relations(&self) -> IntMatrix {
        let cols = self.relation_generators();
        Matrix::from_fn(self.gens(), cols.len(), |i, j| if cols[j] == i { self.moduli[i].clone() } else { Int::zero() })
    }

    pub fn group(&self) -> AbGroupNF {
        AbGroupNF::from_factors(0, self.moduli.iter().cloned())
    }

    pub fn direct_sum(parts: &[Presentation]) -> Presentation {
        Presentation { moduli: parts.iter().flat_map(|p| p.moduli.iter().cloned()).collect() }
    }

    /// Canonical representative of a vector: coordinates reduced into
    /// `0..m_i` on torsion generators.
    pub fn reduce(&self, v: &mut [Int]) {
        for (x, m) in v.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = num_integer::Integer::mod_floor(&*x, m);
            }
        }
    }

    /// Reduce every row of a matrix whose rows are coordinates in `self`.
    pub fn reduce_rows(&self, a: &IntMatrix) -> IntMatrix {
        Matrix::from_fn(a.nrows(), a.ncols(), |i, j| {
            let m = &self.moduli[i];
            if m.is_zero() {
                a[(i, j)].clone()
            } else {
                num_integer::Integer::mod_floor(&a[(i, j)], m)
            }
        })
    }

    /// Whether `a: src → self` (matrix `self.gens × src.gens`) is a
    /// well-defined homomorphism out of `src`.
    pub fn accepts_map_from(&self, src: &Presentation, a: &IntMatrix) -> bool {
        (0..src.gens()).filter(|&j| !src.moduli[j].is_zero()).all(|j| {
            (0..self.gens()).all(|i| {
                let v = &a[(i, j)] * &src.moduli[j];
                if self.moduli[i].is_zero() {
                    v.is_zero()
                } else {
                    v.is_multiple_of(&self.moduli[i])
                }
            })
        })
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_relations() {
        // Z^2 / <(2, 0), (0, 4), (2, 2)> = Z^2 / 2Z^2
        let r = Matrix::from_i64_rows(&[vec![2, 0, 2], vec![0, 4, 2]]);
        let n = Presentation::from_relations(2, &r).unwrap();
        assert_eq!(n.presentation.group(), AbGroupNF::from_factors(0, [2, 2].map(Int::from)));
        // projecting the lift is the identity
        let id = n.project.mul(&n.lift);
        assert_eq!(id, Matrix::identity(n.presentation.gens()));
    }

    #[test]
    fn units_vanish() {
        let p = Presentation::from_moduli([1, 0, 6].map(Int::from));
        assert_eq!(p.gens(), 2);
        assert_eq!(p.relation_count(), 1);
        assert_eq!(p.group(), AbGroupNF::from_factors(1, [Int::from(6)]));
        assert!(Presentation::cyclic(1).is_zero());
    }

    #[test]
    fn well_definedness() {
        let z4 = Presentation::cyclic(4);
        let z2 = Presentation::cyclic(2);
        assert!(z2.accepts_map_from(&z4, &Matrix::from_i64_rows(&[vec![1]])));
        assert!(!z4.accepts_map_from(&z2, &Matrix::from_i64_rows(&[vec![1]])));
        assert!(z4.accepts_map_from(&z2, &Matrix::from_i64_rows(&[vec![2]])));
        assert!(!Presentation::free(1).accepts_map_from(&z2, &Matrix::from_i64_rows(&[vec![1]])));
    }
}
