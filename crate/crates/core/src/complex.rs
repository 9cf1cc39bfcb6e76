//! Finite simplicial complexes with simplicial group actions: joins of
//! `G`-sets, fixed subcomplexes, chain complexes and orbit data.

use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet, Subgroup};
use crate::homology::AbGroupNF;
use crate::linalg::{sparse_invariant_factors, SparseMatrix};
use crate::{Int, SparseIntMatrix};

/// Default bound on the total number of simplices of a constructed complex.
pub const DEFAULT_CELL_BUDGET: u128 = 1_000_000;

pub type Simplex = Vec<u32>;

/// A finite abstract simplicial complex. Simplices are sorted vertex
/// tuples; each dimension is kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Build from simplices of any dimensions; checked to be closed under
    /// taking faces.
    pub fn new(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for mut s in simplices {
            if s.is_empty() {
                continue;
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("repeated vertex in simplex {s:?}")));
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for dim in &mut by_dim {
            dim.sort_unstable();
            dim.dedup();
        }
        let c = SimplicialComplex { simplices: by_dim };
        for d in 1..c.simplices.len() {
            for s in &c.simplices[d] {
                for i in 0..s.len() {
                    let f = face(s, i);
                    if c.simplices[d - 1].binary_search(&f).is_err() {
                        return Err(Error::InvalidArgument(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        Ok(c)
    }

    /// All faces of the given simplices.
    pub fn from_facets(facets: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut all = std::collections::BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            let n = f.len();
            if n > 24 {
                return Err(Error::BudgetExceeded(format!("facet with {n} vertices")));
            }
            for mask in 1u32..(1 << n) {
                all.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect::<Vec<_>>());
            }
        }
        Self::new(all)
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.simplices.get(s.len().checked_sub(1)?)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    /// Simplicial chain complex with `∂[v_0..v_j] = Σ (-1)^i [.. v̂_i ..]`.
    pub fn chain_complex(&self) -> ChainComplexZ {
        let counts = self.counts();
        let boundaries = (1..self.simplices.len())
            .into_par_iter()
            .map(|d| {
                let triplets = self.simplices[d].iter().enumerate().flat_map(|(j, s)| {
                    (0..s.len()).map(move |i| {
                        let row = self.index_of(&face(s, i)).expect("closed under faces");
                        (row, j, if i % 2 == 0 { Int::one() } else { -Int::one() })
                    })
                });
                SparseMatrix::from_triplets(counts[d - 1], counts[d], triplets.collect::<Vec<_>>())
            })
            .collect();
        ChainComplexZ { counts, boundaries }
    }
}

fn face(s: &[u32], i: usize) -> Simplex {
    let mut f = Vec::with_capacity(s.len() - 1);
    f.extend_from_slice(&s[..i]);
    f.extend_from_slice(&s[i + 1..]);
    f
}

/// A free chain complex `… → Z^{c_1} → Z^{c_0}`. `boundary(d)` maps
/// degree `d` to degree `d-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    counts: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexZ {
    pub fn new(counts: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != counts.len().max(1) {
            return Err(Error::InvalidArgument("need one boundary matrix per positive degree".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if (b.nrows(), b.ncols()) != (counts[i], counts[i + 1]) {
                return Err(Error::InvalidArgument(format!("boundary {} has the wrong shape", i + 1)));
            }
        }
        let c = ChainComplexZ { counts, boundaries };
        c.check()?;
        Ok(c)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `∂_d : C_d → C_{d-1}` for `d ≥ 1`.
    pub fn boundary(&self, d: usize) -> Option<&SparseIntMatrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Verifies `∂_d ∘ ∂_{d+1} = 0`.
    pub fn check(&self) -> Result<()> {
        for d in 1..self.boundaries.len() {
            if !self.boundaries[d - 1].mul(&self.boundaries[d]).is_zero() {
                return Err(Error::NonzeroComposite { degree: d + 1 });
            }
        }
        Ok(())
    }

    /// Integral homology `H_0..H_top`; with `reduced`, the augmentation
    /// `C_0 → Z` is appended (an empty complex then has `H̃_{-1} = Z`,
    /// which is not reported).
    pub fn homology(&self, reduced: bool) -> Vec<AbGroupNF> {
        let n = self.counts.len();
        let mut maps: Vec<Option<crate::linalg::InvariantFactors<Int>>> =
            self.boundaries.par_iter().map(|b| Some(sparse_invariant_factors(b))).collect();
        maps.insert(0, None);
        let aug_rank = usize::from(reduced && self.counts.first().is_some_and(|&c| c > 0));
        (0..n)
            .map(|d| {
                let out_rank = if d == 0 { aug_rank } else { maps[d].as_ref().map_or(0, |f| f.rank) };
                match maps.get(d + 1) {
                    Some(Some(f)) => AbGroupNF::from_invariant_factors(self.counts[d] - out_rank - f.rank, f),
                    _ => AbGroupNF::free(self.counts[d] - out_rank),
                }
            })
            .collect()
    }
}

/// One orbit of simplices in a fixed dimension.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Index of the representative (the smallest simplex of the orbit).
    pub representative: usize,
    pub isotropy: Subgroup,
    pub size: usize,
}

/// A simplicial complex with a simplicial action of a finite group that
/// preserves the vertex order of every simplex.
#[derive(Clone, Debug)]
pub struct GSimplicialComplex {
    vertices: GSet,
    complex: SimplicialComplex,
    orbit_of: Vec<Vec<u32>>,
    translator: Vec<Vec<u32>>,
    orbits: Vec<Vec<Orbit>>,
}

impl GSimplicialComplex {
    /// `vertices` acts on the vertex ids used by `complex`. The action must
    /// map simplices to simplices with the sorted vertex order preserved,
    /// so setwise and pointwise stabilizers agree and every translate has
    /// orientation sign +1.
    pub fn new(vertices: GSet, complex: SimplicialComplex) -> Result<Self> {
        let group = vertices.group().clone();
        if complex.simplices(0).iter().any(|v| v[0] as usize >= vertices.size()) {
            return Err(Error::InvalidArgument("complex uses vertices outside the G-set".into()));
        }
        let dims = complex.simplices.len();
        let mut orbit_of = Vec::with_capacity(dims);
        let mut translator = Vec::with_capacity(dims);
        let mut orbits = Vec::with_capacity(dims);
        for d in 0..dims {
            let cells = complex.simplices(d);
            let mut oid = vec![u32::MAX; cells.len()];
            let mut tr = vec![0u32; cells.len()];
            let mut list = Vec::new();
            let mut image = Vec::with_capacity(d + 1);
            for (idx, s) in cells.iter().enumerate() {
                if oid[idx] != u32::MAX {
                    continue;
                }
                let o = list.len() as u32;
                let mut stab = Vec::new();
                let mut size = 0;
                for g in group.elements() {
                    image.clear();
                    image.extend(s.iter().map(|&v| vertices.act(g, v as usize) as u32));
                    if image.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(Error::InvalidArgument(format!(
                            "element {} does not preserve the vertex order of {s:?}",
                            group.element_label(g)
                        )));
                    }
                    let j = complex.index_of(&image).ok_or_else(|| {
                        Error::InvalidArgument(format!("complex not closed under the action: {image:?} missing"))
                    })?;
                    if j == idx {
                        stab.push(g);
                    }
                    if oid[j] == u32::MAX {
                        oid[j] = o;
                        tr[j] = g as u32;
                        size += 1;
                    }
                }
                let isotropy = Subgroup::new(&group, stab).expect("stabilizers are subgroups");
                debug_assert_eq!(size * isotropy.order(), group.order());
                list.push(Orbit { representative: idx, isotropy, size });
            }
            orbit_of.push(oid);
            translator.push(tr);
            orbits.push(list);
        }
        Ok(GSimplicialComplex { vertices, complex, orbit_of, translator, orbits })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.vertices.group()
    }

    pub fn vertices(&self) -> &GSet {
        &self.vertices
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orbits(&self, d: usize) -> &[Orbit] {
        self.orbits.get(d).map_or(&[], Vec::as_slice)
    }

    /// Orbit id of simplex `idx` in dimension `d`.
    pub fn orbit_of(&self, d: usize, idx: usize) -> usize {
        self.orbit_of[d][idx] as usize
    }

    /// An element `g` with `g · representative = simplex`.
    pub fn translator(&self, d: usize, idx: usize) -> usize {
        self.translator[d][idx] as usize
    }

    /// Isotropy of an arbitrary simplex.
    pub fn isotropy(&self, d: usize, idx: usize) -> Subgroup {
        let s = &self.complex.simplices(d)[idx];
        let g = self.group();
        let elems = g.elements().filter(|&x| s.iter().all(|&v| self.vertices.act(x, v as usize) == v as usize)).collect();
        Subgroup::new(g, elems).expect("stabilizers are subgroups")
    }

    /// The subcomplex of simplices fixed by every element of `k`.
    pub fn fixed_subcomplex(&self, k: &Subgroup) -> SimplicialComplex {
        let fixed = |v: u32| k.elements().iter().all(|&g| self.vertices.act(g, v as usize) == v as usize);
        let simplices = self
            .complex
            .simplices
            .iter()
            .map(|dim| dim.iter().filter(|s| s.iter().all(|&v| fixed(v))).cloned().collect::<Vec<_>>())
            .take_while(|dim| !dim.is_empty())
            .collect();
        SimplicialComplex { simplices }
    }

    /// Boundary incidences of every orbit representative, expressed
    /// through representatives of the face orbits.
    pub fn orbit_chain_data(&self) -> Vec<Vec<OrbitCell>> {
        (0..self.orbits.len())
            .map(|d| {
                self.orbits[d]
                    .iter()
                    .map(|o| {
                        let s = &self.complex.simplices(d)[o.representative];
                        let faces = if d == 0 {
                            Vec::new()
                        } else {
                            (0..s.len())
                                .map(|i| {
                                    let f = self.complex.index_of(&face(s, i)).expect("closed under faces");
                                    FaceIncidence {
                                        orbit: self.orbit_of(d - 1, f),
                                        element: self.translator(d - 1, f),
                                        sign: if i % 2 == 0 { 1 } else { -1 },
                                    }
                                })
                                .collect()
                        };
                        OrbitCell { representative: s.clone(), isotropy: o.isotropy.clone(), faces }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            group: self.group().name(),
            vertices: self.vertices.size(),
            simplices: self.complex.simplices.clone(),
            orbits: self
                .orbits
                .iter()
                .map(|dim| {
                    dim.iter()
                        .map(|o| OrbitJson {
                            representative: o.representative,
                            size: o.size,
                            isotropy: o.isotropy.elements().to_vec(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Face `i` of a representative equals `element · rep(orbit)` and enters
/// the boundary with `sign`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIncidence {
    pub orbit: usize,
    pub element: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct OrbitCell {
    pub representative: Simplex,
    pub isotropy: Subgroup,
    pub faces: Vec<FaceIncidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub group: String,
    pub vertices: usize,
    pub simplices: Vec<Vec<Simplex>>,
    pub orbits: Vec<Vec<OrbitJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub representative: usize,
    pub size: usize,
    pub isotropy: Vec<usize>,
}

/// Number of simplices of `X^{*k}` for `|X| = m`: `(m+1)^k - 1`.
pub fn join_cell_count(m: usize, k: usize) -> Option<u128> {
    (m as u128 + 1).checked_pow(k as u32).map(|c| c - 1)
}

/// The `k`-fold join `X * … * X`. Vertex `c·|X| + p` is point `p` in copy
/// `c`; a simplex picks distinct copies, one point from each.
pub fn orbit_join(x: &GSet, k: usize, budget: u128) -> Result<GSimplicialComplex> {
    let m = x.size();
    let too_big = |cells| Error::CellBudgetExceeded { set_size: m, copies: k, cells, budget };
    if k == 0 {
        return Err(Error::InvalidArgument("a join needs at least one factor".into()));
    }
    let cells = join_cell_count(m, k).ok_or_else(|| too_big(u128::MAX))?;
    if cells > budget {
        return Err(too_big(cells));
    }
    if m * k > u32::MAX as usize {
        return Err(too_big(cells));
    }
    let group = x.group().clone();
    let table: Vec<Vec<usize>> =
        group.elements().map(|g| (0..m * k).map(|v| (v / m) * m + x.act(g, v % m)).collect()).collect();
    let vertices = GSet::new(group, table)?;

    let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); k];
    // each copy contributes nothing (digit 0) or point p (digit p+1)
    let mut digits = vec![0usize; k];
    loop {
        let mut i = 0;
        while i < k {
            digits[i] += 1;
            if digits[i] <= m {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        let s: Simplex =
            digits.iter().enumerate().filter(|(_, &dg)| dg > 0).map(|(c, &dg)| (c * m + dg - 1) as u32).collect();
        simplices[s.len() - 1].push(s);
    }
    for dim in &mut simplices {
        dim.sort_unstable();
    }
    GSimplicialComplex::new(vertices, SimplicialComplex { simplices })
}
