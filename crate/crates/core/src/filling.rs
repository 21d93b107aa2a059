//! The computable face of the filling theorem: guaranteed complex-length
//! intervals for the filled core curve, drilling-side normalized length,
//! tube-boundary area, and the multi-cusp filling schedule.

use crate::cusp::CuspShape;
use crate::error::{Error, Result};
use crate::ext::ExtendedReal;
use crate::interval::Interval;
use crate::scalar::{l_sq_floor, Real};

/// Asymmetric enclosure for the real length of the filled core curve,
/// [2π/(L² + 4(2π)²), 2π/(L² − 4(2π)²)], valid for L² ≥ 8(2π)².
pub fn fill_length_interval<T: Real>(l_sq: T) -> Result<Interval<T>> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    let tau = T::two_pi();
    let four_tsq = T::of(4.0) * T::two_pi_sq();
    Ok(Interval::new(
        tau / (l_sq + four_tsq),
        tau / (l_sq - four_tsq),
    ))
}

/// Symmetric enclosure: center 2π/L² with radius 8(2π)³/(L⁴ − 16(2π)⁴).
/// The asymmetric interval is tighter; this form is reported alongside it.
pub fn fill_length_center_error<T: Real>(l_sq: T) -> Result<(T, T)> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    let tau = T::two_pi();
    let tau_sq = T::two_pi_sq();
    let center = tau / l_sq;
    let radius = T::of(8.0) * tau * tau_sq / (l_sq * l_sq - T::of(16.0) * tau_sq * tau_sq);
    Ok((center, radius))
}

/// Enclosure for the rotation angle of the filled core curve:
/// 2π/A² ± 5(2π)³/(L² − 4(2π)²)². Needs L² ≥ 8(2π)² and |A²| ≥ 3
/// (A² = ∞ is the untwisted case, center 0). The result always lies in
/// (−π, π]: 5/(16·2π) + 2π/3 < π.
pub fn fill_theta_interval<T: Real>(l_sq: T, a_sq: ExtendedReal<T>) -> Result<Interval<T>> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    if !a_sq.abs_at_least(T::of(3.0)) {
        return Err(Error::TwistTooLarge);
    }
    let tau = T::two_pi();
    let center = tau * a_sq.recip_or_zero();
    let radius = theta_radius(l_sq);
    Ok(Interval::new(center - radius, center + radius))
}

fn theta_radius<T: Real>(l_sq: T) -> T {
    let tau = T::two_pi();
    let tau_sq = T::two_pi_sq();
    let denom = l_sq - T::of(4.0) * tau_sq;
    T::of(5.0) * tau * tau_sq / (denom * denom)
}

/// All filling-theorem output for one cusp: validity flags and, when the
/// uniform bounds hold, the length and angle enclosures.
#[derive(Debug, Clone, PartialEq)]
pub struct FillingEstimate<T: Real> {
    pub l_sq: T,
    pub a_sq: ExtendedReal<T>,
    /// L² ≥ 8(2π)²: existence of the filling plus length bounds apply.
    pub valid_fill: bool,
    /// valid_fill and |A²| ≥ 3: the angle bound applies.
    pub valid_theta: bool,
    pub l_interval: Option<Interval<T>>,
    pub l_center_error: Option<(T, T)>,
    pub theta_interval: Option<Interval<T>>,
}

/// Evaluates the filling theorem's uniform-bound fragment on a cusp shape.
/// Invalidity is reported in the flags, never as an error.
pub fn estimate_filling<T: Real>(shape: &CuspShape<T>) -> FillingEstimate<T> {
    let l_sq = shape.l_sq();
    let a_sq = shape.a_sq();
    let valid_fill = l_sq >= l_sq_floor();
    let valid_theta = valid_fill && a_sq.abs_at_least(T::of(3.0));
    FillingEstimate {
        l_sq,
        a_sq,
        valid_fill,
        valid_theta,
        l_interval: valid_fill.then(|| fill_length_interval(l_sq).expect("validated")),
        l_center_error: valid_fill.then(|| fill_length_center_error(l_sq).expect("validated")),
        theta_interval: valid_theta.then(|| fill_theta_interval(l_sq, a_sq).expect("validated")),
    }
}

/// Normalized meridian length measured on the tube boundary after drilling
/// a core geodesic of length l(γ) with tube radius R: √(2π·tanh R / l(γ)).
pub fn drilled_normalized_length<T: Real>(l_gamma: T, radius: T) -> Result<T> {
    if !(l_gamma > T::zero()) || !(radius > T::zero()) {
        return Err(Error::NonPositiveInput);
    }
    Ok((T::two_pi() * radius.tanh() / l_gamma).sqrt())
}

/// Area of the tube boundary, α·l·sinh(R)·cosh(R). A degenerate cone angle
/// α = 0 gives area 0.
pub fn tube_boundary_area<T: Real>(alpha: T, l: T, radius: T) -> Result<T> {
    if alpha < T::zero() || !(l > T::zero()) || !(radius > T::zero()) {
        return Err(Error::NonPositiveInput);
    }
    Ok(alpha * l * radius.sinh() * radius.cosh())
}

/// One cusp's bookkeeping inside a multi-cusp filling schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspFillRecord<T: Real> {
    /// Position in filling order, 1-based.
    pub index: usize,
    pub l_sq_initial: T,
    /// Worst-case normalized length squared right before this cusp is
    /// filled: each earlier filling shrinks L by at most a factor of 4.
    pub l_sq_guaranteed_floor: T,
    /// Final core-curve length bound (ℓ/n)·2^{n−i}/2ⁿ: the i-th filling
    /// leaves l(γᵢ) < ℓ/(n2ⁿ) and each later filling at most doubles it.
    pub l_bound_final: T,
}

/// Feasibility verdict and per-cusp bounds for filling n cusps in order.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiFillPlan<T: Real> {
    pub cusps: Vec<CuspFillRecord<T>>,
    pub total_length_bound: T,
    /// Every initial normalized length satisfies L ≥ 4ⁿ·K′.
    pub feasible: bool,
}

impl<T: Real> MultiFillPlan<T> {
    /// Builds the schedule from normalized lengths squared, a per-fill
    /// threshold K′, and a total length budget ℓ. Cusps fill in input
    /// order; the bound depends on position.
    pub fn from_l_sq(l_sq: &[T], k_prime: T, l_budget: T) -> Result<Self> {
        if l_sq.is_empty() {
            return Err(Error::EmptyCuspList);
        }
        if !(k_prime > T::zero()) || !(l_budget > T::zero()) {
            return Err(Error::NonPositiveInput);
        }
        let n = l_sq.len();
        let nf = T::from_usize(n).expect("cusp count fits the scalar");
        let four = T::of(4.0);
        let two = T::of(2.0);
        let schedule = four.powi(n as i32) * k_prime;
        let mut feasible = true;
        let mut cusps = Vec::with_capacity(n);
        for (i0, &ls) in l_sq.iter().enumerate() {
            let i = i0 + 1;
            let length = ls.sqrt();
            if length < schedule {
                feasible = false;
            }
            let degrade = four.powi(2 * i0 as i32);
            cusps.push(CuspFillRecord {
                index: i,
                l_sq_initial: ls,
                l_sq_guaranteed_floor: ls / degrade,
                l_bound_final: l_budget / nf * two.powi((n - i) as i32) / two.powi(n as i32),
            });
        }
        Ok(MultiFillPlan {
            cusps,
            total_length_bound: l_budget,
            feasible,
        })
    }
}

/// Multi-cusp schedule from cusp shapes (in filling order).
pub fn multi_fill_plan<T: Real>(
    shapes: &[CuspShape<T>],
    k_prime: T,
    l_budget: T,
) -> Result<MultiFillPlan<T>> {
    let l_sq: Vec<T> = shapes.iter().map(|s| s.l_sq()).collect();
    MultiFillPlan::from_l_sq(&l_sq, k_prime, l_budget)
}
