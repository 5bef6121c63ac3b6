//! Integer scalar abstraction for the exact linear algebra layer.
//!
//! Matrices and the Smith normal form are generic over any signed machine
//! integer with checked arithmetic. Group residues are always `i64`; the
//! wider `i128` instantiation is used where unimodular transforms can grow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedNeg, NumCast, PrimInt, Signed};

use crate::error::{Error, Result};

pub trait IntScalar:
    PrimInt + Signed + CheckedNeg + Debug + Display + Hash + Send + Sync + 'static
{
    fn checked_from_i64(v: i64) -> Result<Self> {
        <Self as NumCast>::from(v).ok_or(Error::Overflow)
    }

    fn checked_to_i64(self) -> Result<i64> {
        <i64 as NumCast>::from(self).ok_or(Error::Overflow)
    }

    fn add_c(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow)
    }

    fn sub_c(self, rhs: Self) -> Result<Self> {
        self.checked_sub(&rhs).ok_or(Error::Overflow)
    }

    fn mul_c(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow)
    }

    fn neg_c(self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }
}

impl<T> IntScalar for T where
    T: PrimInt + Signed + CheckedNeg + Debug + Display + Hash + Send + Sync + 'static
{
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd<T: IntScalar>(a: T, b: T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r / r;
        let next_r = old_r.sub_c(q.mul_c(r)?)?;
        old_r = r;
        r = next_r;
        let next_s = old_s.sub_c(q.mul_c(s)?)?;
        old_s = s;
        s = next_s;
        let next_t = old_t.sub_c(q.mul_c(t)?)?;
        old_t = t;
        t = next_t;
    }
    if old_r < T::zero() {
        Ok((old_r.neg_c()?, old_s.neg_c()?, old_t.neg_c()?))
    } else {
        Ok((old_r, old_s, old_t))
    }
}
