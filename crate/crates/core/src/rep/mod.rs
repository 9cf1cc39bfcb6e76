//! Real representations of `C_n`, `D_n` (n odd) and `L_n`: irreducible
//! tables, fixed subspaces, restriction and Euler classes.

mod euler;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{coset_gset, cyclic_group, dihedral_group, elem_ab_product, left_regular_gset, FiniteGroup, Subgroup};
use crate::numtheory::factorize;

pub use euler::{euler_class, EulerClass, EulerClassValue};
pub use parse::parse_rep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepFamily {
    Cyclic,
    Dihedral,
    ElemAb,
}

impl RepFamily {
    pub fn letter(&self) -> char {
        match self {
            RepFamily::Cyclic => 'C',
            RepFamily::Dihedral => 'D',
            RepFamily::ElemAb => 'L',
        }
    }

    /// The concrete group the labels refer to.
    pub fn group(&self, n: u64) -> Result<FiniteGroup> {
        let n = n as usize;
        match self {
            RepFamily::Cyclic => Ok(cyclic_group(n)),
            RepFamily::Dihedral => Ok(dihedral_group(n)),
            RepFamily::ElemAb => elem_ab_product(n),
        }
    }
}

/// A real irreducible representation.
///
/// `Rot(r)` is the rotation plane `ξ^r` of `C_n`, `RotHat(r)` the dihedral
/// plane restricting to `ξ^r`, `Sign` the sign of `C_n` (n even) or of
/// `D_n/C_n`. `ExtChar` is a nontrivial character of `L_n` given by one
/// exponent per cyclic factor, stored as the lexicographically smaller of
/// `χ` and `χ̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrredLabel {
    Triv,
    Sign,
    Rot(u64),
    RotHat(u64),
    ExtChar(Vec<u64>),
}

impl fmt::Display for IrredLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrredLabel::Triv => write!(f, "triv"),
            IrredLabel::Sign => write!(f, "sigma"),
            IrredLabel::Rot(r) => write!(f, "xi^{r}"),
            IrredLabel::RotHat(r) => write!(f, "xihat^{r}"),
            IrredLabel::ExtChar(c) => {
                let parts: Vec<String> = c.iter().map(u64::to_string).collect();
                write!(f, "chi({})", parts.join(","))
            }
        }
    }
}

/// Cyclic factor orders of `L_n`, first factor least significant.
fn elem_ab_radices(n: u64) -> Vec<u64> {
    factorize(n).into_iter().flat_map(|(p, a)| std::iter::repeat_n(p, a as usize)).collect()
}

fn negate_char(c: &[u64], radices: &[u64]) -> Vec<u64> {
    c.iter().zip(radices).map(|(a, p)| (p - a) % p).collect()
}

fn canonical_char(c: Vec<u64>, radices: &[u64]) -> Vec<u64> {
    let neg = negate_char(&c, radices);
    c.min(neg)
}

fn check_family_n(family: RepFamily, n: u64) -> Result<()> {
    match family {
        RepFamily::Cyclic if n >= 1 => Ok(()),
        RepFamily::Dihedral if n % 2 == 1 => Ok(()),
        RepFamily::Dihedral => Err(Error::Unsupported(format!("dihedral representations need n odd, got {n}"))),
        RepFamily::ElemAb if n >= 2 => Ok(()),
        _ => Err(Error::InvalidArgument(format!("no representations for {}{n}", family.letter()))),
    }
}

impl IrredLabel {
    /// Real dimension.
    pub fn dim(&self, n: u64) -> u64 {
        match self {
            IrredLabel::Triv | IrredLabel::Sign => 1,
            IrredLabel::Rot(_) | IrredLabel::RotHat(_) => 2,
            IrredLabel::ExtChar(c) => {
                let radices = elem_ab_radices(n);
                if negate_char(c, &radices) == *c {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// Dimension of the real endomorphism algebra (2 for labels of complex
    /// type, 1 for real type).
    pub fn endomorphism_dim(&self, n: u64) -> u64 {
        match self {
            IrredLabel::Rot(_) => 2,
            IrredLabel::ExtChar(_) => self.dim(n),
            _ => 1,
        }
    }

    pub fn validate(&self, family: RepFamily, n: u64) -> Result<()> {
        check_family_n(family, n)?;
        let bad = || Error::InvalidArgument(format!("{self} is not an irreducible of {}{n}", family.letter()));
        match (self, family) {
            (IrredLabel::Triv, _) => Ok(()),
            (IrredLabel::Sign, RepFamily::Cyclic) if n % 2 == 0 => Ok(()),
            (IrredLabel::Sign, RepFamily::Dihedral) => Ok(()),
            (IrredLabel::Rot(r), RepFamily::Cyclic) if *r >= 1 && *r <= (n - 1) / 2 => Ok(()),
            (IrredLabel::RotHat(r), RepFamily::Dihedral) if *r >= 1 && *r <= (n - 1) / 2 => Ok(()),
            (IrredLabel::ExtChar(c), RepFamily::ElemAb) => {
                let radices = elem_ab_radices(n);
                if c.len() != radices.len() || c.iter().zip(&radices).any(|(a, p)| a >= p) || c.iter().all(|&a| a == 0) {
                    return Err(bad());
                }
                if canonical_char(c.clone(), &radices) != *c {
                    return Err(bad());
                }
                Ok(())
            }
            _ => Err(bad()),
        }
    }
}

/// The real irreducibles of `C_n`, `D_n` (n odd) or `L_n`.
pub fn irreducibles(family: RepFamily, n: u64) -> Result<Vec<IrredLabel>> {
    check_family_n(family, n)?;
    let mut out = vec![IrredLabel::Triv];
    match family {
        RepFamily::Cyclic => {
            if n % 2 == 0 {
                out.push(IrredLabel::Sign);
            }
            out.extend((1..=(n - 1) / 2).map(IrredLabel::Rot));
        }
        RepFamily::Dihedral => {
            out.push(IrredLabel::Sign);
            out.extend((1..=(n - 1) / 2).map(IrredLabel::RotHat));
        }
        RepFamily::ElemAb => {
            let radices = elem_ab_radices(n);
            let mut seen = std::collections::BTreeSet::new();
            let mut c = vec![0u64; radices.len()];
            loop {
                // odometer over all characters
                let mut i = 0;
                while i < c.len() {
                    c[i] += 1;
                    if c[i] < radices[i] {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
                if i == c.len() {
                    break;
                }
                seen.insert(canonical_char(c.clone(), &radices));
            }
            out.extend(seen.into_iter().map(IrredLabel::ExtChar));
        }
    }
    Ok(out)
}

/// A real representation as a multiset of irreducible labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRep {
    family: RepFamily,
    n: u64,
    mult: BTreeMap<IrredLabel, u64>,
}

impl RealRep {
    pub fn zero(family: RepFamily, n: u64) -> Result<Self> {
        check_family_n(family, n)?;
        Ok(RealRep { family, n, mult: BTreeMap::new() })
    }

    pub fn from_terms(family: RepFamily, n: u64, terms: impl IntoIterator<Item = (IrredLabel, u64)>) -> Result<Self> {
        let mut v = Self::zero(family, n)?;
        for (label, m) in terms {
            v.add(label, m)?;
        }
        Ok(v)
    }

    pub fn family(&self) -> RepFamily {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn add(&mut self, label: IrredLabel, m: u64) -> Result<()> {
        label.validate(self.family, self.n)?;
        if m > 0 {
            *self.mult.entry(label).or_insert(0) += m;
        }
        Ok(())
    }

    /// Adds `m` copies of `ξ^r` of `C_n` for any integer `r`, rewriting it
    /// in terms of the irreducible list: `ξ^0` is two trivial lines,
    /// `ξ^{n/2}` is `σ ⊕ σ`, and `ξ^r ≅ ξ^{n-r}`.
    pub fn add_xi(&mut self, r: i64, m: u64) -> Result<()> {
        if self.family != RepFamily::Cyclic {
            return Err(Error::InvalidArgument("xi^r terms need a cyclic group".into()));
        }
        let n = self.n as i64;
        let r = r.rem_euclid(n) as u64;
        let r = r.min(self.n - r);
        if r == 0 {
            self.add(IrredLabel::Triv, 2 * m)
        } else if 2 * r == self.n {
            self.add(IrredLabel::Sign, 2 * m)
        } else {
            self.add(IrredLabel::Rot(r), m)
        }
    }

    /// Adds `m` copies of `ξ̂^r` of `D_n`, with `ξ̂^r ≅ ξ̂^{n-r}`.
    pub fn add_xihat(&mut self, r: i64, m: u64) -> Result<()> {
        if self.family != RepFamily::Dihedral {
            return Err(Error::InvalidArgument("xihat^r terms need a dihedral group".into()));
        }
        let r = r.rem_euclid(self.n as i64) as u64;
        let r = r.min(self.n - r);
        if r == 0 {
            return Err(Error::InvalidArgument("xihat^0 is not a well-defined irreducible".into()));
        }
        self.add(IrredLabel::RotHat(r), m)
    }

    pub fn multiplicity(&self, label: &IrredLabel) -> u64 {
        self.mult.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IrredLabel, u64)> {
        self.mult.iter().map(|(l, m)| (l, *m))
    }

    pub fn dim(&self) -> u64 {
        self.terms().map(|(l, m)| m * l.dim(self.n)).sum()
    }

    pub fn direct_sum(&self, other: &RealRep) -> Result<RealRep> {
        if (self.family, self.n) != (other.family, other.n) {
            return Err(Error::InvalidArgument("direct sum of representations of different groups".into()));
        }
        let mut out = self.clone();
        for (l, m) in other.terms() {
            *out.mult.entry(l.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.multiplicity(&IrredLabel::Triv) == 0
    }

    pub fn group(&self) -> Result<FiniteGroup> {
        self.family.group(self.n)
    }
}

impl fmt::Display for RealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(l, m)| if m == 1 { l.to_string() } else { format!("{m}*{l}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Wire form `{family, n, terms: [{label, r?, chars?, mult}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRepJson {
    pub family: RepFamily,
    pub n: u64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chars: Option<Vec<u64>>,
    pub mult: u64,
}

impl From<&RealRep> for RealRepJson {
    fn from(v: &RealRep) -> Self {
        let terms = v
            .terms()
            .map(|(l, mult)| {
                let (label, r, chars) = match l {
                    IrredLabel::Triv => ("triv", None, None),
                    IrredLabel::Sign => ("sigma", None, None),
                    IrredLabel::Rot(r) => ("xi", Some(*r), None),
                    IrredLabel::RotHat(r) => ("xihat", Some(*r), None),
                    IrredLabel::ExtChar(c) => ("chi", None, Some(c.clone())),
                };
                TermJson { label: label.into(), r, chars, mult }
            })
            .collect();
        RealRepJson { family: v.family, n: v.n, terms }
    }
}

impl TryFrom<&RealRepJson> for RealRep {
    type Error = Error;

    fn try_from(j: &RealRepJson) -> Result<Self> {
        let mut v = RealRep::zero(j.family, j.n)?;
        for t in &j.terms {
            let label = match (t.label.as_str(), t.r, &t.chars) {
                ("triv", None, None) => IrredLabel::Triv,
                ("sigma", None, None) => IrredLabel::Sign,
                ("xi", Some(r), None) => IrredLabel::Rot(r),
                ("xihat", Some(r), None) => IrredLabel::RotHat(r),
                ("chi", None, Some(c)) => IrredLabel::ExtChar(c.clone()),
                _ => return Err(Error::Parse(format!("malformed representation term {t:?}"))),
            };
            v.add(label, t.mult)?;
        }
        Ok(v)
    }
}

impl Serialize for RealRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RealRepJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RealRepJson::deserialize(d)?;
        RealRep::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// Sum of all nontrivial irreducibles: `ρ̄` for `C_n` and `L_n`, and for
/// `D_n` the sum `ρ̂` of the planes `ξ̂^r` (σ excluded).
pub fn reduced_regular(family: RepFamily, n: u64) -> Result<RealRep> {
    let labels = irreducibles(family, n)?;
    let keep = |l: &IrredLabel| match family {
        RepFamily::Dihedral => matches!(l, IrredLabel::RotHat(_)),
        _ => *l != IrredLabel::Triv,
    };
    RealRep::from_terms(family, n, labels.into_iter().filter(keep).map(|l| (l, 1)))
}

/// How a subgroup sits inside the canonical group of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupShape {
    /// `C_d = <g^{n/d}>` in `C_n`, or `C_d ⊆ <x>` in `D_n`.
    Cyclic(u64),
    /// A subgroup of order `2d` of `D_n` containing reflections.
    Dihedral(u64),
    /// Elements of `L_n` as digit tuples.
    ElemAb(Vec<Vec<u64>>),
}

pub fn subgroup_shape(family: RepFamily, n: u64, k: &Subgroup) -> Result<SubgroupShape> {
    let order = match family {
        RepFamily::Cyclic | RepFamily::ElemAb => n,
        RepFamily::Dihedral => 2 * n,
    } as usize;
    if k.elements().iter().any(|&a| a >= order) {
        return Err(Error::NotASubgroup(format!("element out of range for {}{n}", family.letter())));
    }
    let d = k.order() as u64;
    Ok(match family {
        RepFamily::Cyclic => SubgroupShape::Cyclic(d),
        RepFamily::Dihedral => {
            if k.elements().iter().all(|&a| (a as u64) < n) {
                SubgroupShape::Cyclic(d)
            } else {
                SubgroupShape::Dihedral(d / 2)
            }
        }
        RepFamily::ElemAb => {
            let radices = elem_ab_radices(n);
            let digits = |mut a: u64| -> Vec<u64> {
                radices
                    .iter()
                    .map(|p| {
                        let r = a % p;
                        a /= p;
                        r
                    })
                    .collect()
            };
            SubgroupShape::ElemAb(k.elements().iter().map(|&a| digits(a as u64)).collect())
        }
    })
}

fn char_trivial_on(c: &[u64], radices: &[u64], elements: &[Vec<u64>]) -> bool {
    elements.iter().all(|x| {
        let mut by_prime: BTreeMap<u64, u64> = BTreeMap::new();
        for ((a, e), p) in c.iter().zip(x).zip(radices) {
            *by_prime.entry(*p).or_insert(0) += a * e;
        }
        by_prime.iter().all(|(p, s)| s % p == 0)
    })
}

/// `dim L^K` for a single irreducible.
pub fn irred_fixed_dim(label: &IrredLabel, family: RepFamily, n: u64, shape: &SubgroupShape) -> u64 {
    match (label, shape) {
        (IrredLabel::Triv, _) => 1,
        (IrredLabel::Sign, SubgroupShape::Cyclic(d)) => match family {
            RepFamily::Cyclic => u64::from((n / d) % 2 == 0),
            _ => 1,
        },
        (IrredLabel::Sign, SubgroupShape::Dihedral(_)) => 0,
        (IrredLabel::Rot(r) | IrredLabel::RotHat(r), SubgroupShape::Cyclic(d)) => {
            if r % d == 0 {
                2
            } else {
                0
            }
        }
        (IrredLabel::RotHat(r), SubgroupShape::Dihedral(d)) => u64::from(r % d == 0),
        (IrredLabel::ExtChar(c), SubgroupShape::ElemAb(elems)) => {
            if char_trivial_on(c, &elem_ab_radices(n), elems) {
                label.dim(n)
            } else {
                0
            }
        }
        _ => unreachable!("label/subgroup family mismatch"),
    }
}

/// Dimension of the `K`-fixed subspace `V^K`, for `K` a subgroup of the
/// canonical group of `V`'s family (element indices as in
/// [`cyclic_group`], [`dihedral_group`], [`elem_ab_product`]).
pub fn fixed_dim(v: &RealRep, k: &Subgroup) -> Result<u64> {
    let shape = subgroup_shape(v.family, v.n, k)?;
    Ok(v.terms().map(|(l, m)| m * irred_fixed_dim(l, v.family, v.n, &shape)).sum())
}

/// `dim V^{C_d}` for the cyclic subgroup of order `d` (inside `<x>` for `D_n`).
pub fn fixed_dim_cyclic(v: &RealRep, d: u64) -> Result<u64> {
    if v.family == RepFamily::ElemAb || v.n % d != 0 {
        return Err(Error::InvalidArgument(format!("no cyclic subgroup of order {d} in {}{}", v.family.letter(), v.n)));
    }
    let shape = SubgroupShape::Cyclic(d);
    Ok(v.terms().map(|(l, m)| m * irred_fixed_dim(l, v.family, v.n, &shape)).sum())
}

/// Restriction of a `D_n` representation to the rotation subgroup `C_n`.
pub fn restrict_to_cyclic(v: &RealRep) -> Result<RealRep> {
    if v.family != RepFamily::Dihedral {
        return Err(Error::InvalidArgument("restriction to C_n needs a dihedral representation".into()));
    }
    let mut out = RealRep::zero(RepFamily::Cyclic, v.n)?;
    for (l, m) in v.terms() {
        match l {
            IrredLabel::Triv | IrredLabel::Sign => out.add(IrredLabel::Triv, m)?,
            IrredLabel::RotHat(r) => out.add(IrredLabel::Rot(*r), m)?,
            _ => unreachable!(),
        }
    }
    Ok(out)
}

/// Restriction of the standard `(n-1)`-dimensional representation of the
/// symmetric group along the regular embedding (`C_n`, `L_n`) or the action
/// on `D_n/<y>`, decomposed by Frobenius reciprocity on the point stabilizer.
pub fn std_rep_restriction(family: RepFamily, n: u64) -> Result<RealRep> {
    check_family_n(family, n)?;
    let group = Arc::new(family.group(n)?);
    let set = match family {
        RepFamily::Dihedral => {
            let y = group.generator("y").expect("dihedral generator y");
            coset_gset(group.clone(), &Subgroup::generated(&group, &[y]))?
        }
        _ => left_regular_gset(group.clone()),
    };
    debug_assert_eq!(set.size() as u64, n);
    let stab = set.stabilizer(0);
    let shape = subgroup_shape(family, n, &stab)?;
    let mut out = RealRep::zero(family, n)?;
    for label in irreducibles(family, n)? {
        let fixed = irred_fixed_dim(&label, family, n, &shape);
        let mut m = fixed / label.endomorphism_dim(n);
        if label == IrredLabel::Triv {
            m -= 1;
        }
        out.add(label, m)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(family: RepFamily, n: u64, terms: &[(IrredLabel, u64)]) -> RealRep {
        RealRep::from_terms(family, n, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn irreducible_lists() {
        use IrredLabel::*;
        assert_eq!(irreducibles(RepFamily::Cyclic, 5).unwrap(), vec![Triv, Rot(1), Rot(2)]);
        assert_eq!(irreducibles(RepFamily::Cyclic, 6).unwrap(), vec![Triv, Sign, Rot(1), Rot(2)]);
        let d15 = irreducibles(RepFamily::Dihedral, 15).unwrap();
        assert_eq!(d15[..2], [Triv, Sign]);
        assert_eq!(d15[2..], (1..=7).map(RotHat).collect::<Vec<_>>());
        assert!(irreducibles(RepFamily::Dihedral, 4).is_err());
    }

    #[test]
    fn reduced_regular_dims() {
        use IrredLabel::*;
        let c6 = reduced_regular(RepFamily::Cyclic, 6).unwrap();
        assert_eq!(c6, rep(RepFamily::Cyclic, 6, &[(Sign, 1), (Rot(1), 1), (Rot(2), 1)]));
        assert_eq!(c6.dim(), 5);
        assert_eq!(reduced_regular(RepFamily::Cyclic, 5).unwrap().dim(), 4);
        assert_eq!(reduced_regular(RepFamily::Dihedral, 3).unwrap(), rep(RepFamily::Dihedral, 3, &[(RotHat(1), 1)]));
        for n in 1..=30 {
            assert_eq!(reduced_regular(RepFamily::Cyclic, n).unwrap().dim(), n - 1);
            if n % 2 == 1 {
                assert_eq!(reduced_regular(RepFamily::Dihedral, n).unwrap().dim(), n - 1);
            }
        }
        assert_eq!(reduced_regular(RepFamily::ElemAb, 12).unwrap().dim(), 11);
    }

    #[test]
    fn fixed_dims() {
        use IrredLabel::*;
        let c6 = cyclic_group(6);
        let c2 = Subgroup::generated(&c6, &[3]);
        let c3 = Subgroup::generated(&c6, &[2]);
        let v = rep(RepFamily::Cyclic, 6, &[(Rot(2), 1)]);
        assert_eq!(fixed_dim(&v, &c2).unwrap(), 2);
        assert_eq!(fixed_dim(&v, &c3).unwrap(), 0);

        let d3 = dihedral_group(3);
        let h = Subgroup::generated(&d3, &[d3.generator("y").unwrap()]);
        assert_eq!(fixed_dim(&rep(RepFamily::Dihedral, 3, &[(RotHat(1), 1)]), &h).unwrap(), 1);

        let c9 = cyclic_group(9);
        let v = rep(RepFamily::Cyclic, 9, &[(Rot(3), 2)]);
        assert_eq!(fixed_dim(&v, &Subgroup::whole(&c9)).unwrap(), 0);
    }

    #[test]
    fn fixed_point_freeness() {
        use IrredLabel::*;
        assert!(reduced_regular(RepFamily::Cyclic, 6).unwrap().is_fixed_point_free());
        assert!(!rep(RepFamily::Cyclic, 5, &[(Triv, 1), (Rot(1), 1)]).is_fixed_point_free());
        assert!(rep(RepFamily::Cyclic, 6, &[(Sign, 1)]).is_fixed_point_free());
    }

    #[test]
    fn xi_normalization() {
        let mut v = RealRep::zero(RepFamily::Cyclic, 6).unwrap();
        v.add_xi(3, 1).unwrap();
        v.add_xi(5, 1).unwrap();
        v.add_xi(6, 1).unwrap();
        assert_eq!(v.multiplicity(&IrredLabel::Sign), 2);
        assert_eq!(v.multiplicity(&IrredLabel::Rot(1)), 1);
        assert_eq!(v.multiplicity(&IrredLabel::Triv), 2);
        assert_eq!(v.dim(), 6);
    }

    #[test]
    fn restriction_and_standard_rep() {
        use IrredLabel::*;
        let v = rep(RepFamily::Dihedral, 15, &[(RotHat(3), 1)]);
        assert_eq!(restrict_to_cyclic(&v).unwrap(), rep(RepFamily::Cyclic, 15, &[(Rot(3), 1)]));
        let s = rep(RepFamily::Dihedral, 3, &[(Sign, 1)]);
        assert_eq!(restrict_to_cyclic(&s).unwrap(), rep(RepFamily::Cyclic, 3, &[(Triv, 1)]));
        let rho_hat = reduced_regular(RepFamily::Dihedral, 3).unwrap();
        assert_eq!(restrict_to_cyclic(&rho_hat).unwrap(), reduced_regular(RepFamily::Cyclic, 3).unwrap());

        assert_eq!(std_rep_restriction(RepFamily::Cyclic, 6).unwrap(), reduced_regular(RepFamily::Cyclic, 6).unwrap());
        let l12 = std_rep_restriction(RepFamily::ElemAb, 12).unwrap();
        assert_eq!(l12, reduced_regular(RepFamily::ElemAb, 12).unwrap());
        assert_eq!(l12.dim(), 11);
        assert_eq!(std_rep_restriction(RepFamily::Dihedral, 3).unwrap(), rep(RepFamily::Dihedral, 3, &[(RotHat(1), 1)]));
        for n in (1..=21).step_by(2) {
            assert_eq!(std_rep_restriction(RepFamily::Dihedral, n).unwrap(), reduced_regular(RepFamily::Dihedral, n).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let v = reduced_regular(RepFamily::ElemAb, 12).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        let back: RealRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let bad = r#"{"family":"cyclic","n":6,"terms":[{"label":"xi","r":4,"mult":1}]}"#;
        assert!(serde_json::from_str::<RealRep>(bad).is_err());
    }

    #[test]
    fn label_validation() {
        assert!(IrredLabel::Sign.validate(RepFamily::Cyclic, 5).is_err());
        assert!(IrredLabel::Rot(3).validate(RepFamily::Cyclic, 6).is_err());
        assert!(IrredLabel::RotHat(1).validate(RepFamily::Cyclic, 5).is_err());
        assert!(IrredLabel::ExtChar(vec![0, 0, 0]).validate(RepFamily::ElemAb, 12).is_err());
    }
}
