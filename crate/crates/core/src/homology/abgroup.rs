use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::InvariantFactors;
use crate::Int;

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m` with
/// `1 < t_1 | t_2 | … | t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbGroupNF {
    pub rank: usize,
    torsion: Vec<Int>,
}

impl AbGroupNF {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroupNF { rank, torsion: Vec::new() }
    }

    /// `Z/m`, with `Z/0 = Z`.
    pub fn cyclic(m: u64) -> Self {
        Self::from_factors(0, [Int::from(m)])
    }

    /// Normal form of `Z^rank ⊕ ⊕ Z/a_i` for arbitrary `a_i` (zeros add to
    /// the rank, units vanish).
    pub fn from_factors(rank: usize, factors: impl IntoIterator<Item = Int>) -> Self {
        let mut rank = rank;
        let mut finite = Vec::new();
        for a in factors {
            let a = a.abs();
            if a.is_zero() {
                rank += 1;
            } else if !a.is_one() {
                finite.push(a);
            }
        }
        let torsion = if finite.len() <= 1 { finite } else { chain_from_diagonal(&finite) };
        AbGroupNF { rank, torsion }
    }

    /// The cokernel-style contribution of a matrix's invariant factors.
    pub fn from_invariant_factors(rank: usize, f: &InvariantFactors<Int>) -> Self {
        AbGroupNF { rank, torsion: f.nontrivial.iter().map(|x| x.abs()).collect() }
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, if finite.
    pub fn order(&self) -> Option<Int> {
        (self.rank == 0).then(|| self.torsion.iter().fold(Int::one(), |a, b| a * b))
    }

    pub fn direct_sum(&self, other: &AbGroupNF) -> AbGroupNF {
        Self::from_factors(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }
}

/// Pairwise coprime numbers whose products give every input.
fn coprime_base(values: &[Int]) -> Vec<Int> {
    let mut base: Vec<Int> = Vec::new();
    for v in values {
        let mut pending = vec![v.clone()];
        while let Some(mut x) = pending.pop() {
            if x.is_one() {
                continue;
            }
            let mut i = 0;
            while i < base.len() {
                let g = x.gcd(&base[i]);
                if g.is_one() {
                    i += 1;
                    continue;
                }
                let b = base.swap_remove(i);
                pending.push(&b / &g);
                pending.push(g.clone());
                x = &x / &g;
                i = 0;
                if x.is_one() {
                    break;
                }
            }
            if !x.is_one() {
                base.push(x);
            }
        }
    }
    base
}

/// Invariant factors (greater than one, ascending) of `diag(values)`,
/// all entries at least two.
fn chain_from_diagonal(values: &[Int]) -> Vec<Int> {
    let mut counts: BTreeMap<&Int, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    let distinct: Vec<Int> = counts.keys().map(|v| (*v).clone()).collect();
    let base = coprime_base(&distinct);
    let mut out = vec![Int::one(); values.len()];
    for b in &base {
        let mut exps: Vec<u32> = Vec::with_capacity(values.len());
        for (v, &c) in &counts {
            let mut e = 0;
            let mut r = (*v).clone();
            while (&r % b).is_zero() {
                r = r / b;
                e += 1;
            }
            exps.extend(std::iter::repeat_n(e, c));
        }
        // largest exponents go to the last factors
        exps.sort_unstable();
        for (slot, e) in out.iter_mut().zip(exps) {
            if e > 0 {
                *slot = &*slot * num_traits::pow(b.clone(), e as usize);
            }
        }
    }
    out.retain(|f| !f.is_one());
    out
}

impl fmt::Display for AbGroupNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct Wire {
    rank: usize,
    torsion: Vec<WireInt>,
}

impl Serialize for AbGroupNF {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let torsion =
            self.torsion.iter().map(|t| t.to_u64().map_or_else(|| WireInt::Big(t.to_string()), WireInt::Small)).collect();
        Wire { rank: self.rank, torsion }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbGroupNF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let mut factors = Vec::new();
        for t in w.torsion {
            factors.push(match t {
                WireInt::Small(v) => Int::from(v),
                WireInt::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            });
        }
        Ok(AbGroupNF::from_factors(w.rank, factors))
    }
}
