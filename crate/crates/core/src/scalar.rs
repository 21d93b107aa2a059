use std::fmt;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the whole library is generic over.
///
/// `f32` and `f64` implement it. The default tolerances baked into the
/// library (`1e-12`, `1e-10`, ...) are calibrated for `f64`; with `f32`
/// pass explicit tolerances where an operation accepts one.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + fmt::Debug
    + fmt::Display
    + fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// 2π.
    fn two_pi() -> Self {
        Self::TAU()
    }

    /// (2π)², the cone-angle parameter at the smooth endpoint t = α².
    fn two_pi_sq() -> Self {
        Self::TAU() * Self::TAU()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Smallest normalized meridian length squared accepted by the filling
/// estimates: 8(2π)² ≈ 315.827.
pub fn l_sq_floor<T: Real>() -> T {
    T::of(8.0) * T::two_pi_sq()
}

/// Lower bound on |z| in the shape-proximity hypotheses: 80(2π)².
pub fn proximity_norm_floor<T: Real>() -> T {
    T::of(80.0) * T::two_pi_sq()
}
