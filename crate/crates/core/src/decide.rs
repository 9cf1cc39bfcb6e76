//! Borsuk-Ulam / anti-Borsuk-Ulam classification of representations and
//! existence reports for Tverberg-type equivariant maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, is_square_free, prime_power, prime_power_divisors};
use crate::rep::{euler_class, EulerClass};
use crate::rep::{fixed_dim_cyclic, restrict_to_cyclic, IrredLabel, RealRep, RepFamily};

/// The result that justifies a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Citation {
    /// Nonzero Euler class obstructs maps from high-dimensional joins.
    EulerClassObstruction,
    /// Square-free cyclic dichotomy: Euler class zero gives a map `EC_n -> S(V)`.
    SquareFreeCyclicDichotomy,
    /// Cyclic groups, general order: every prime-power fixed space nonzero.
    CyclicPrimePowerFixedPoints,
    /// Dihedral groups, square-free odd order, no sign summand.
    SquareFreeDihedralDichotomy,
    /// Dihedral groups, general odd order: prime-power fixed spaces nonzero.
    DihedralPrimePowerFixedPoints,
    /// Dihedral groups of prime order: restriction to the rotations.
    DihedralPrimeRestriction,
    /// Empty homotopy fixed points for some `C_{p^k}`.
    EmptyHomotopyFixedPoints,
    /// Cyclic Tverberg maps for orders that are not prime powers.
    CyclicTverbergMaps,
    /// Dihedral Tverberg maps for odd orders that are not prime powers.
    DihedralTverbergMaps,
    /// Elementary abelian product maps out of `L_n^{*N}`.
    ElemAbTverbergMaps,
    /// Prime-power orders: classical topological Tverberg results apply.
    PrimePowerLiterature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerFixedDim {
    pub prime_power: u64,
    pub fixed_dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum DichotomyVerdict {
    BorsukUlam {
        euler: EulerClass,
        citation: Citation,
    },
    AntiBorsukUlam {
        citation: Citation,
        fixed_dims: Vec<PrimePowerFixedDim>,
        #[serde(skip_serializing_if = "Option::is_none")]
        provenance: Option<String>,
    },
    SullivanObstructed {
        prime_power: u64,
        citation: Citation,
        caveat: String,
    },
    OutOfPaperScope {
        reason: String,
    },
}

impl DichotomyVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            DichotomyVerdict::BorsukUlam { .. } => "BorsukUlam",
            DichotomyVerdict::AntiBorsukUlam { .. } => "AntiBorsukUlam",
            DichotomyVerdict::SullivanObstructed { .. } => "SullivanObstructed",
            DichotomyVerdict::OutOfPaperScope { .. } => "OutOfPaperScope",
        }
    }
}

const SULLIVAN_CAVEAT: &str = "no equivariant map from EC_n to S(V) exists since the homotopy fixed points \
     of S(V) under this subgroup are empty; the Borsuk-Ulam property itself is not decided by this argument";

const PARITY_NOTE: &str = "the fixed-point argument is stated for all prime powers; its proof assumes p odd, \
     and the 2-primary case is taken from the statement as written";

fn prime_power_fixed_dims(v: &RealRep) -> Result<Vec<PrimePowerFixedDim>> {
    prime_power_divisors(v.n())
        .into_iter()
        .map(|q| Ok(PrimePowerFixedDim { prime_power: q, fixed_dim: fixed_dim_cyclic(v, q)? }))
        .collect()
}

/// Smallest prime power `p^k | n` with `V^{C_{p^k}} = 0`, if any.
pub fn sullivan_flag(v: &RealRep) -> Result<Option<u64>> {
    if v.family() == RepFamily::ElemAb {
        return Err(Error::InvalidArgument("prime-power fixed spaces are defined for C and D families".into()));
    }
    Ok(prime_power_fixed_dims(v)?.into_iter().find(|f| f.fixed_dim == 0).map(|f| f.prime_power))
}

fn require_fixed_point_free(v: &RealRep) -> Result<()> {
    match v.multiplicity(&IrredLabel::Triv) {
        0 => Ok(()),
        m => Err(Error::NotFixedPointFree(m)),
    }
}

fn fixed_point_verdict(v: &RealRep, anti: Citation, note: Option<String>) -> Result<DichotomyVerdict> {
    let fixed_dims = prime_power_fixed_dims(v)?;
    if let Some(f) = fixed_dims.iter().find(|f| f.fixed_dim == 0) {
        return Ok(DichotomyVerdict::SullivanObstructed {
            prime_power: f.prime_power,
            citation: Citation::EmptyHomotopyFixedPoints,
            caveat: SULLIVAN_CAVEAT.into(),
        });
    }
    Ok(DichotomyVerdict::AntiBorsukUlam { citation: anti, fixed_dims, provenance: note })
}

fn parity_note(n: u64) -> Option<String> {
    (n % 2 == 0 && !is_square_free(n)).then(|| PARITY_NOTE.to_string())
}

pub fn classify_cn(v: &RealRep) -> Result<DichotomyVerdict> {
    if v.family() != RepFamily::Cyclic {
        return Err(Error::InvalidArgument("classify_cn needs a cyclic representation".into()));
    }
    require_fixed_point_free(v)?;
    let e = euler_class(v)?;
    if e.is_nonzero() {
        return Ok(DichotomyVerdict::BorsukUlam { euler: e, citation: Citation::EulerClassObstruction });
    }
    let n = v.n();
    let anti = if is_square_free(n) { Citation::SquareFreeCyclicDichotomy } else { Citation::CyclicPrimePowerFixedPoints };
    fixed_point_verdict(v, anti, parity_note(n))
}

pub fn classify_dn(v: &RealRep) -> Result<DichotomyVerdict> {
    if v.family() != RepFamily::Dihedral {
        return Err(Error::InvalidArgument("classify_dn needs a dihedral representation".into()));
    }
    let n = v.n();
    if n % 2 == 0 {
        return Ok(DichotomyVerdict::OutOfPaperScope { reason: format!("D_{n} has even order rotation subgroup") });
    }
    if v.multiplicity(&IrredLabel::Sign) > 0 {
        return Ok(DichotomyVerdict::OutOfPaperScope { reason: "V contains the sign representation".into() });
    }
    require_fixed_point_free(v)?;
    let w = restrict_to_cyclic(v)?;
    let e = euler_class(&w)?;
    if is_prime(n) {
        debug_assert!(e.is_nonzero());
        return Ok(DichotomyVerdict::BorsukUlam { euler: e, citation: Citation::DihedralPrimeRestriction });
    }
    if e.is_nonzero() {
        return Ok(DichotomyVerdict::BorsukUlam { euler: e, citation: Citation::EulerClassObstruction });
    }
    let anti =
        if is_square_free(n) { Citation::SquareFreeDihedralDichotomy } else { Citation::DihedralPrimePowerFixedPoints };
    fixed_point_verdict(v, anti, None)
}

/// Dispatch on the representation's family.
pub fn classify(v: &RealRep) -> Result<DichotomyVerdict> {
    match v.family() {
        RepFamily::Cyclic => classify_cn(v),
        RepFamily::Dihedral => classify_dn(v),
        RepFamily::ElemAb => {
            Ok(DichotomyVerdict::OutOfPaperScope { reason: "no dichotomy is available for elementary abelian products".into() })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TverbergVerdict {
    MapExists,
    PrimePowerRegime,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TverbergReport {
    pub family: RepFamily,
    pub n: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub d: u64,
    pub threshold: u128,
    pub verdict: TverbergVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<Citation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Existence of the equivariant map from the `(N+1)`-fold deleted join of
/// `n` points to the sphere of `d` copies of the reduced representation.
pub fn tverberg_report(family: RepFamily, n: u64, big_n: u64, d: u64) -> Result<TverbergReport> {
    if n == 0 || big_n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n, N and d must be positive".into()));
    }
    if family == RepFamily::Dihedral && n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("the dihedral report needs n odd, got {n}")));
    }
    let threshold = (d as u128 + 1) * (n as u128 - 1);
    let (verdict, citation, note) = if n == 1 {
        (TverbergVerdict::Unsupported, None, Some("trivial group".to_string()))
    } else if prime_power(n).is_some() {
        (
            TverbergVerdict::PrimePowerRegime,
            Some(Citation::PrimePowerLiterature),
            Some(format!(
                "n is a prime power; no map exists at N = {threshold} since topological Tverberg holds for prime powers \
                 and the join construction does not apply"
            )),
        )
    } else {
        let c = match family {
            RepFamily::Cyclic => Citation::CyclicTverbergMaps,
            RepFamily::Dihedral => Citation::DihedralTverbergMaps,
            RepFamily::ElemAb => Citation::ElemAbTverbergMaps,
        };
        (TverbergVerdict::MapExists, Some(c), None)
    };
    Ok(TverbergReport { family, n, big_n, d, threshold, verdict, citation, note })
}
