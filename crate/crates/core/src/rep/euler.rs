use serde::{Deserialize, Serialize};

use super::{IrredLabel, RealRep, RepFamily};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerClassValue {
    /// The residue of the product of rotation weights, in `0..n`.
    ModN(u64),
    ZeroByParity,
    NonZeroByParity,
}

/// Euler class of a fixed point free `C_n`-representation.
///
/// `folded_sign_pairs` counts the pairs `σ ⊕ σ` rewritten as the
/// rotation-by-π plane (weight `n/2`) before evaluating; it is nonzero only
/// when the input has two or more sign summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerClass {
    pub value: EulerClassValue,
    pub folded_sign_pairs: u64,
}

impl EulerClass {
    pub fn is_nonzero(&self) -> bool {
        match self.value {
            EulerClassValue::ModN(v) => v != 0,
            EulerClassValue::ZeroByParity => false,
            EulerClassValue::NonZeroByParity => true,
        }
    }
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

pub fn euler_class(v: &RealRep) -> Result<EulerClass> {
    if v.family() != RepFamily::Cyclic {
        return Err(Error::InvalidArgument("Euler classes are computed for cyclic groups only".into()));
    }
    if !v.is_fixed_point_free() {
        return Err(Error::NotFixedPointFree(v.multiplicity(&IrredLabel::Triv)));
    }
    let n = v.n();
    let a = v.multiplicity(&IrredLabel::Sign);
    let pairs = a / 2;
    let mut p = pow_mod(n / 2, pairs, n);
    for (label, m) in v.terms() {
        if let IrredLabel::Rot(r) = label {
            p = ((p as u128 * pow_mod(*r, m, n) as u128) % n as u128) as u64;
        }
    }
    let value = if a % 2 == 0 {
        EulerClassValue::ModN(p)
    } else if p % 2 == 0 {
        // n is even here, so the parity of the residue is that of the product
        EulerClassValue::ZeroByParity
    } else {
        EulerClassValue::NonZeroByParity
    };
    Ok(EulerClass { value, folded_sign_pairs: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::parse_rep;

    fn e(n: u64, s: &str) -> EulerClass {
        euler_class(&parse_rep(RepFamily::Cyclic, n, s).unwrap()).unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(e(6, "xi + xi^2").value, EulerClassValue::ModN(2));
        let folded = e(6, "xi^2 + 2*sigma");
        assert_eq!(folded.value, EulerClassValue::ModN(0));
        assert_eq!(folded.folded_sign_pairs, 1);
        assert_eq!(e(6, "sigma + xi^2").value, EulerClassValue::ZeroByParity);
        assert_eq!(e(6, "sigma + xi").value, EulerClassValue::NonZeroByParity);
        assert!(e(6, "sigma + xi").is_nonzero());
    }

    #[test]
    fn trivial_summand_rejected() {
        let v = parse_rep(RepFamily::Cyclic, 5, "triv + xi").unwrap();
        assert!(matches!(euler_class(&v), Err(Error::NotFixedPointFree(1))));
    }
}
