use crate::scalar::Real;

/// A real quantity that may be infinite, kept as a distinct variant so
/// that reciprocals of infinity are exactly zero downstream.
///
/// Used for the reciprocal normalized twist A² of an untwisted cusp and
/// for tube-radius lower bounds h⁻¹(0) = ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> ExtendedReal<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            ExtendedReal::Finite(x) => Some(*x),
            ExtendedReal::Infinite => None,
        }
    }

    /// 1/x, with 1/∞ = 0 exactly.
    pub fn recip_or_zero(&self) -> T {
        match self {
            ExtendedReal::Finite(x) => T::one() / *x,
            ExtendedReal::Infinite => T::zero(),
        }
    }

    /// |x| ≥ bound, treating ∞ as larger than everything.
    pub fn abs_at_least(&self, bound: T) -> bool {
        match self {
            ExtendedReal::Finite(x) => x.abs() >= bound,
            ExtendedReal::Infinite => true,
        }
    }

    /// Collapses to a plain float, mapping ∞ to `T::infinity()`.
    pub fn to_float(&self) -> T {
        match self {
            ExtendedReal::Finite(x) => *x,
            ExtendedReal::Infinite => T::infinity(),
        }
    }
}

impl<T: Real> std::fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinite => write!(f, "inf"),
        }
    }
}
