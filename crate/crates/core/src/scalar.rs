//! Floating-point scalar abstraction shared by every approximate path.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Euler–Mascheroni constant at full double precision.
pub const EULER_GAMMA_F64: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_f64;

/// Real scalar used by the approximate (non-exact) evaluation paths.
///
/// Implemented for `f32` and `f64`. Exact quantities are carried as
/// [`BigRational`] and converted with a single correctly rounded step
/// through `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    /// Converts an unsigned integer (exact for values below 2^53 in `f64`).
    #[inline]
    fn from_count(k: u64) -> Self {
        Self::from_u64(k).expect("integer must be representable")
    }

    /// Correctly rounded conversion of `numer / denom`; the fraction need
    /// not be reduced.
    fn from_ratio_parts(numer: &BigInt, denom: &BigInt) -> Self {
        let r = BigRational::new_raw(numer.clone(), denom.clone());
        Self::lit(r.to_f64().unwrap_or(f64::NAN))
    }

    /// Correctly rounded conversion of an exact rational.
    #[inline]
    fn from_rational(r: &BigRational) -> Self {
        Self::from_ratio_parts(r.numer(), r.denom())
    }

    /// Euler–Mascheroni constant γ.
    #[inline]
    fn euler_gamma() -> Self {
        Self::lit(EULER_GAMMA_F64)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
