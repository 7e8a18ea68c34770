//! Scalar abstraction shared by the solvers.
//!
//! The closed forms only need field arithmetic and a total order on finite values, so every
//! algorithm in this crate is written once against [`Scalar`] and runs on `f64`, `f32` or exact
//! rationals. Tolerances come from the scalar type: floating types carry a small absolute slack,
//! exact types carry none.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num
    + Signed
    + Clone
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// False for NaN and infinities. Exact types are always finite.
    fn is_finite_value(&self) -> bool;

    /// Absolute slack for feasibility and characterization checks.
    fn feasibility_tolerance() -> Self;

    fn floor_value(&self) -> Self;

    /// Round half away from zero.
    fn round_value(&self) -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Total comparison for values already known to be finite.
    fn cmp_finite(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("comparison of finite scalars")
    }
}

impl Scalar for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn feasibility_tolerance() -> Self {
        1e-9
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn round_value(&self) -> Self {
        self.round()
    }
}

impl Scalar for f32 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    // 1e-9 is below f32 resolution for any realistic budget.
    fn feasibility_tolerance() -> Self {
        1e-4
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn round_value(&self) -> Self {
        self.round()
    }
}

impl Scalar for BigRational {
    fn is_finite_value(&self) -> bool {
        true
    }

    fn feasibility_tolerance() -> Self {
        BigRational::zero()
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn round_value(&self) -> Self {
        self.round()
    }
}

/// `max(z, 0)`.
pub fn positive_part<S: Scalar>(z: S) -> S {
    if z > S::zero() {
        z
    } else {
        S::zero()
    }
}

/// Budget-conservation slack: `τ_feas · max(1, |budget|)`.
pub fn sum_tolerance<S: Scalar>(budget: &S) -> S {
    let scale = budget.abs();
    let scale = if scale > S::one() { scale } else { S::one() };
    S::feasibility_tolerance() * scale
}

/// Exact rational from a ratio of integers, mostly for tests and examples.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
