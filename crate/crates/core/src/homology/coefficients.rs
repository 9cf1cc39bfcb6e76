//! Coefficient systems: contravariant functors on the orbit category.
//!
//! A morphism `G/K → G/H` is written `eK ↦ gH` and exists iff
//! `g⁻¹ K g ⊆ H`. Its structure matrix maps coordinates of `M(G/H)` to
//! coordinates of `M(G/K)`, so composition reads
//! `M(K, L, g g') = M(K, H, g) · M(H, L, g')`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::GSimplicialComplex;
use crate::error::{Error, Result};
use crate::group::{is_subconjugate, FiniteGroup, Subgroup};
use crate::homology::{GModule, Presentation};
use crate::linalg::Matrix;
use crate::{Int, IntMatrix};

pub trait CoefficientSystem: Send + Sync {
    fn group(&self) -> &Arc<FiniteGroup>;

    /// `M(G/K)`.
    fn value(&self, k: &Subgroup) -> Result<Presentation>;

    /// `M(eK ↦ gH) : M(G/H) → M(G/K)`.
    fn morphism(&self, k: &Subgroup, h: &Subgroup, g: usize) -> Result<IntMatrix>;

    fn describe(&self) -> String;

    /// `M(G/e)` as a `G`-module, `g` acting by the automorphism `e ↦ g`.
    fn underlying_module(&self) -> Result<GModule> {
        let g = self.group().clone();
        let e = Subgroup::trivial(&g);
        let p = self.value(&e)?;
        let gens = g
            .generators()
            .iter()
            .map(|(_, x)| Ok((*x, self.morphism(&e, &e, *x)?)))
            .collect::<Result<Vec<_>>>()?;
        GModule::from_generators(g, p, &gens)
    }
}

fn check_morphism(g: &FiniteGroup, k: &Subgroup, h: &Subgroup, x: usize) -> Result<()> {
    let gi = g.inv(x);
    if k.elements().iter().all(|&a| h.contains(g.mul(g.mul(gi, a), x))) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "no orbit map G/K -> G/H sending eK to {}H",
            g.element_label(x)
        )))
    }
}

fn subgroup_label(g: &FiniteGroup, h: &Subgroup) -> String {
    let elems: Vec<String> = h.elements().iter().map(|&a| g.element_label(a)).collect();
    format!("{{{}}}", elems.join(", "))
}

/// The same group at every orbit, identities as structure maps.
#[derive(Clone, Debug)]
pub struct ConstantSystem {
    group: Arc<FiniteGroup>,
    value: Presentation,
}

impl ConstantSystem {
    pub fn new(group: Arc<FiniteGroup>, value: Presentation) -> Self {
        ConstantSystem { group, value }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::new(group, Presentation::zero())
    }
}

impl CoefficientSystem for ConstantSystem {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn value(&self, _: &Subgroup) -> Result<Presentation> {
        Ok(self.value.clone())
    }

    fn morphism(&self, k: &Subgroup, h: &Subgroup, g: usize) -> Result<IntMatrix> {
        check_morphism(&self.group, k, h, g)?;
        Ok(Matrix::identity(self.value.gens()))
    }

    fn describe(&self) -> String {
        format!("constant {}", self.value.group())
    }
}

/// `Z` on orbits whose isotropy is subconjugate to `H`, zero elsewhere.
#[derive(Clone, Debug)]
pub struct SubconjugateIndicator {
    group: Arc<FiniteGroup>,
    h: Subgroup,
}

impl SubconjugateIndicator {
    pub fn new(group: Arc<FiniteGroup>, h: Subgroup) -> Self {
        SubconjugateIndicator { group, h }
    }

    fn on(&self, k: &Subgroup) -> bool {
        is_subconjugate(&self.group, k, &self.h)
    }
}

impl CoefficientSystem for SubconjugateIndicator {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn value(&self, k: &Subgroup) -> Result<Presentation> {
        Ok(Presentation::free(usize::from(self.on(k))))
    }

    fn morphism(&self, k: &Subgroup, h: &Subgroup, g: usize) -> Result<IntMatrix> {
        check_morphism(&self.group, k, h, g)?;
        let (a, b) = (usize::from(self.on(k)), usize::from(self.on(h)));
        Ok(if a == 1 && b == 1 { Matrix::identity(1) } else { Matrix::zeros(a, b) })
    }

    fn describe(&self) -> String {
        format!("Z on subconjugates of {}", subgroup_label(&self.group, &self.h))
    }
}

/// A `G`-module placed on the free orbit; only free complexes can use it.
#[derive(Clone, Debug)]
pub struct FreeOrbitSystem {
    module: GModule,
}

impl FreeOrbitSystem {
    pub fn new(module: GModule) -> Self {
        FreeOrbitSystem { module }
    }
}

impl CoefficientSystem for FreeOrbitSystem {
    fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    fn value(&self, k: &Subgroup) -> Result<Presentation> {
        if !k.is_trivial() {
            return Err(Error::MissingOrbitType(subgroup_label(self.group(), k)));
        }
        Ok(self.module.presentation().clone())
    }

    fn morphism(&self, k: &Subgroup, h: &Subgroup, g: usize) -> Result<IntMatrix> {
        if !k.is_trivial() || !h.is_trivial() {
            return Err(Error::MissingOrbitType(subgroup_label(self.group(), if k.is_trivial() { h } else { k })));
        }
        Ok(self.module.act(g).clone())
    }

    fn describe(&self) -> String {
        format!("G-module {} on the free orbit", self.module.presentation().group())
    }

    fn underlying_module(&self) -> Result<GModule> {
        Ok(self.module.clone())
    }
}

type MorphismKey = (Vec<usize>, Vec<usize>, usize);

/// Explicitly listed values and structure maps, as loaded from JSON.
#[derive(Clone, Debug)]
pub struct TabulatedSystem {
    group: Arc<FiniteGroup>,
    values: BTreeMap<Vec<usize>, Presentation>,
    morphisms: BTreeMap<MorphismKey, IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulatedJson {
    pub group: String,
    pub values: Vec<ValueJson>,
    pub morphisms: Vec<MorphismJson>,
}

/// `M(G/K) = Z^generators / (columns of relations)`; `relations` may be
/// omitted for a free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub subgroup: Vec<usize>,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

fn int_rows(rows: &[Vec<i64>], nrows: usize, ncols: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::IllDefined(format!("{what}: expected a {nrows}x{ncols} matrix")));
    }
    Ok(Matrix::from_fn(nrows, ncols, |i, j| Int::from(rows[i][j])))
}

impl TabulatedSystem {
    pub fn from_json(group: Arc<FiniteGroup>, j: &TabulatedJson) -> Result<Self> {
        if j.group != group.name() {
            return Err(Error::IllDefined(format!("coefficient system is for {}, not {}", j.group, group.name())));
        }
        let mut normalized = BTreeMap::new();
        for v in &j.values {
            let sub = Subgroup::new(&group, v.subgroup.clone())?;
            let nrel = v.relations.first().map_or(0, Vec::len);
            let rel = if v.relations.is_empty() {
                Matrix::zeros(v.generators, 0)
            } else {
                int_rows(&v.relations, v.generators, nrel, "relations")?
            };
            let n = Presentation::from_relations(v.generators, &rel)?;
            if normalized.insert(sub.elements().to_vec(), n).is_some() {
                return Err(Error::IllDefined("subgroup listed twice".into()));
            }
        }
        let mut morphisms = BTreeMap::new();
        for m in &j.morphisms {
            let k = Subgroup::new(&group, m.source.clone())?;
            let h = Subgroup::new(&group, m.target.clone())?;
            if m.element >= group.order() {
                return Err(Error::IllDefined(format!("element {} out of range", m.element)));
            }
            check_morphism(&group, &k, &h, m.element).map_err(|e| Error::IllDefined(e.to_string()))?;
            let missing = |s: &Subgroup| Error::MissingOrbitType(subgroup_label(&group, s));
            let nk = normalized.get(k.elements()).ok_or_else(|| missing(&k))?;
            let nh = normalized.get(h.elements()).ok_or_else(|| missing(&h))?;
            let raw = int_rows(&m.matrix, nk.lift.nrows(), nh.lift.nrows(), "structure matrix")?;
            let a = nk.presentation.reduce_rows(&nk.project.mul(&raw).mul(&nh.lift));
            if !nk.presentation.accepts_map_from(&nh.presentation, &a) {
                return Err(Error::IllDefined("structure matrix does not respect relations".into()));
            }
            morphisms.insert((k.elements().to_vec(), h.elements().to_vec(), m.element), a);
        }
        let values = normalized.into_iter().map(|(k, n)| (k, n.presentation)).collect();
        Ok(TabulatedSystem { group, values, morphisms })
    }

    /// Everything a Bredon computation on `x` asks of `system`.
    pub fn tabulate(system: &dyn CoefficientSystem, x: &GSimplicialComplex) -> Result<Self> {
        let group = system.group().clone();
        let mut values = BTreeMap::new();
        let mut morphisms = BTreeMap::new();
        let data = x.orbit_chain_data();
        for (d, cells) in data.iter().enumerate() {
            for cell in cells {
                let k = &cell.isotropy;
                values.insert(k.elements().to_vec(), system.value(k)?);
                for f in &cell.faces {
                    let mid = &data[d - 1][f.orbit];
                    let mut put = |h: &Subgroup, g: usize| -> Result<()> {
                        let key = (k.elements().to_vec(), h.elements().to_vec(), g);
                        if !morphisms.contains_key(&key) {
                            morphisms.insert(key, system.morphism(k, h, g)?);
                        }
                        Ok(())
                    };
                    put(&mid.isotropy, f.element)?;
                    // composites with the next faces down, for functoriality checks
                    for f2 in &mid.faces {
                        put(&data[d - 2][f2.orbit].isotropy, group.mul(f.element, f2.element))?;
                    }
                }
            }
        }
        Ok(TabulatedSystem { group, values, morphisms })
    }

    pub fn to_json(&self) -> TabulatedJson {
        let small = |a: &Int| -> i64 { i64::try_from(a).expect("coefficient data fits in i64") };
        TabulatedJson {
            group: self.group.name(),
            values: self
                .values
                .iter()
                .map(|(k, p)| ValueJson {
                    subgroup: k.clone(),
                    generators: p.gens(),
                    relations: p.relations().to_rows().iter().map(|r| r.iter().map(small).collect()).collect(),
                })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|((k, h, g), a)| MorphismJson {
                    source: k.clone(),
                    target: h.clone(),
                    element: *g,
                    matrix: a.to_rows().iter().map(|r| r.iter().map(small).collect()).collect(),
                })
                .collect(),
        }
    }
}

impl CoefficientSystem for TabulatedSystem {
    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn value(&self, k: &Subgroup) -> Result<Presentation> {
        self.values.get(k.elements()).cloned().ok_or_else(|| Error::MissingOrbitType(subgroup_label(&self.group, k)))
    }

    fn morphism(&self, k: &Subgroup, h: &Subgroup, g: usize) -> Result<IntMatrix> {
        self.morphisms.get(&(k.elements().to_vec(), h.elements().to_vec(), g)).cloned().ok_or_else(|| {
            Error::MissingMorphism(format!(
                "{} -> {} via {}",
                subgroup_label(&self.group, k),
                subgroup_label(&self.group, h),
                self.group.element_label(g)
            ))
        })
    }

    fn describe(&self) -> String {
        format!("tabulated system on {} orbit types", self.values.len())
    }
}

/// Checks that structure maps are well defined and compose correctly on
/// every pair of face relations `σ ⊃ τ ⊃ υ` of `x`.
pub fn check_functoriality(system: &dyn CoefficientSystem, x: &GSimplicialComplex) -> Result<()> {
    let g = system.group();
    let data = x.orbit_chain_data();
    for d in 1..data.len() {
        for cell in &data[d] {
            let k = &cell.isotropy;
            let mk = system.value(k)?;
            for f in &cell.faces {
                let mid = &data[d - 1][f.orbit];
                let h = &mid.isotropy;
                let a = system.morphism(k, h, f.element)?;
                if !mk.accepts_map_from(&system.value(h)?, &a) {
                    return Err(Error::IllDefined(format!("structure map into {} ignores relations", subgroup_label(g, k))));
                }
                for f2 in &mid.faces {
                    let l = &data[d - 2][f2.orbit].isotropy;
                    let b = system.morphism(h, l, f2.element)?;
                    let c = system.morphism(k, l, g.mul(f.element, f2.element))?;
                    if mk.reduce_rows(&a.mul(&b)) != mk.reduce_rows(&c) {
                        return Err(Error::IllDefined("structure maps do not compose".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Parses `Z`, `Z/m` or `0` as a constant system.
pub fn parse_constant(group: Arc<FiniteGroup>, s: &str) -> Result<ConstantSystem> {
    let s = s.trim();
    let p = match s {
        "0" => Presentation::zero(),
        "Z" => Presentation::free(1),
        _ => {
            let m = s
                .strip_prefix("Z/")
                .and_then(|m| m.trim().parse::<u64>().ok())
                .filter(|m| !m.is_zero())
                .ok_or_else(|| Error::Parse(format!("coefficients `{s}`: expected Z, Z/m or 0")))?;
            Presentation::cyclic(m)
        }
    };
    Ok(ConstantSystem::new(group, p))
}
