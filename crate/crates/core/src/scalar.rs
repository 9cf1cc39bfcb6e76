//! The exact integer scalar abstraction shared by all linear algebra.
//!
//! Everything in [`crate::linalg`] is written against [`IntScalar`], so the
//! same Smith normal form and lattice code runs over `i64`, `i128` or
//! [`num_bigint::BigInt`]. The homological engine always instantiates it with
//! [`crate::Int`] (arbitrary precision); fixed-width instantiations are for
//! callers that can bound their entries.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub trait IntScalar:
    Clone + Debug + Display + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn lit(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar out of range")
    }

    fn is_unit(&self) -> bool {
        self.is_one() || (-self.clone()).is_one()
    }

    /// Quotient rounded towards zero, so `a - q*b` keeps the sign of `a`
    /// and has absolute value below `|b|`.
    fn trunc_div(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
}

impl<T> IntScalar for T where
    T: Clone + Debug + Display + Hash + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Compare two scalars by absolute value.
pub fn abs_cmp<T: IntScalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
