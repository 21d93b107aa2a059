//! Separation and proximity estimates used to keep deformation-space
//! components apart: the box/translate separation check, the cusp-shape
//! proximity implication, the q₁/r₁ dichotomy, and the component-count
//! threshold in n.

use num_complex::Complex;

use super::Rect;
use crate::error::{Error, Result};
use crate::scalar::{proximity_norm_floor, Real};

/// A base rectangle of width < 2 together with its horizontal translates
/// R + 2n used to isolate components.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDecomposition<T: Real> {
    pub rect: Rect<T>,
    pub delta: T,
    pub translates: Vec<i64>,
}

impl<T: Real> BoxDecomposition<T> {
    pub fn new(rect: Rect<T>, delta: T, translates: Vec<i64>) -> Result<Self> {
        if !(rect.width() > T::zero()) || !(rect.height() > T::zero()) {
            return Err(Error::NonPositiveInput);
        }
        if rect.width() >= T::of(2.0) {
            return Err(Error::BoxTooWide);
        }
        if !(delta > T::zero()) {
            return Err(Error::NonPositiveInput);
        }
        Ok(Self {
            rect,
            delta,
            translates,
        })
    }

    /// The rectangle R + 2n.
    pub fn translate(&self, n: i64) -> Rect<T> {
        self.rect
            .translate_re(T::of(2.0) * T::from_i64(n).expect("translate index fits"))
    }
}

/// Outcome of the sampled separation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoxSeparation<T: Real> {
    Separated {
        min_distance: T,
    },
    Violated {
        translate: i64,
        inside: Complex<T>,
        outside: Complex<T>,
        distance: T,
    },
}

/// For each translate, takes the minimum |w − w′| over sampled w inside
/// that translate and w′ outside; Separated exactly when every minimum
/// exceeds `boxes.delta`.
pub fn box_separation_check<T: Real>(
    boxes: &BoxDecomposition<T>,
    samples_in: &[Vec<Complex<T>>],
    samples_out: &[Complex<T>],
) -> Result<BoxSeparation<T>> {
    if samples_in.len() != boxes.translates.len() {
        return Err(Error::SampleCountMismatch);
    }
    if samples_in.is_empty() || samples_out.is_empty() || samples_in.iter().any(Vec::is_empty) {
        return Err(Error::EmptySamples);
    }

    let mut global_min: Option<(T, i64, Complex<T>, Complex<T>)> = None;
    for (n, inside) in boxes.translates.iter().zip(samples_in) {
        for &w in inside {
            for &w_out in samples_out {
                let d = (w - w_out).norm();
                let better = match &global_min {
                    Some((best, ..)) => d < *best,
                    None => true,
                };
                if better {
                    global_min = Some((d, *n, w, w_out));
                }
            }
        }
    }
    let (distance, translate, inside, outside) = global_min.expect("nonempty samples");
    if distance > boxes.delta {
        Ok(BoxSeparation::Separated {
            min_distance: distance,
        })
    } else {
        Ok(BoxSeparation::Violated {
            translate,
            inside,
            outside,
            distance,
        })
    }
}

/// Outcome of the shape-proximity implication on a pair (z₁, z₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProximityOutcome {
    HypothesesFail,
    ConclusionHolds,
    ConclusionFails,
}

/// Checks the proximity implication: if |z_i| ≥ 80(2π)², both z_i are in
/// the upper half-plane, and the reciprocal shape invariants
/// 1/L_i² = 2 Im(z_i)/|z_i|², 1/A_i² = 2 Re(z_i)/|z_i|² satisfy
///
///   |2π/L₁² − 2π/L₂²| ≤ 16(2π)³(1/L₁⁴ + 1/L₂⁴)
///   |2π/A₁² − 2π/A₂²| ≤ 20(2π)³(1/L₁⁴ + 1/L₂⁴),
///
/// then |z₁ − z₂| < 560(2π)²·Im(z₁)/|z₁|.
pub fn shape_proximity_check<T: Real>(z1: Complex<T>, z2: Complex<T>) -> ProximityOutcome {
    // Tiny relative slack so |z| = 80(2π)² itself passes despite rounding.
    let floor = proximity_norm_floor::<T>() * (T::one() - T::epsilon() * T::of(16.0));
    if z1.norm() < floor || z2.norm() < floor {
        return ProximityOutcome::HypothesesFail;
    }
    if !(z1.im > T::zero()) || !(z2.im > T::zero()) {
        return ProximityOutcome::HypothesesFail;
    }

    let two = T::of(2.0);
    let tau = T::two_pi();
    let tau_cubed = tau * T::two_pi_sq();
    let recip_l1 = two * z1.im / z1.norm_sqr();
    let recip_l2 = two * z2.im / z2.norm_sqr();
    let recip_a1 = two * z1.re / z1.norm_sqr();
    let recip_a2 = two * z2.re / z2.norm_sqr();
    let quartic_sum = recip_l1 * recip_l1 + recip_l2 * recip_l2;

    if tau * (recip_l1 - recip_l2).abs() > T::of(16.0) * tau_cubed * quartic_sum {
        return ProximityOutcome::HypothesesFail;
    }
    if tau * (recip_a1 - recip_a2).abs() > T::of(20.0) * tau_cubed * quartic_sum {
        return ProximityOutcome::HypothesesFail;
    }

    let bound = T::of(560.0) * T::two_pi_sq() * z1.im / z1.norm();
    if (z1 - z2).norm() < bound {
        ProximityOutcome::ConclusionHolds
    } else {
        ProximityOutcome::ConclusionFails
    }
}

/// The first n past which δ/2 < 560(2π)²κ/(2n − 3) turns false:
/// 560(2π)²κ/δ + 3/2. Requires δ > 0 and κ > 80(2π)².
pub fn component_separation_threshold<T: Real>(delta: T, kappa: T) -> Result<T> {
    if !(delta > T::zero()) {
        return Err(Error::NonPositiveInput);
    }
    if kappa <= proximity_norm_floor() {
        return Err(Error::KappaTooSmall);
    }
    Ok(T::of(560.0) * T::two_pi_sq() * kappa / delta + T::of(1.5))
}

/// The q₁/r₁ dichotomy: true when min(Im q₁, Im r₁) ≥ κ or
/// |q₁ − r₁| < δ/4. The dichotomy is only checked, never derived.
pub fn q1_r1_proximity_predicate<T: Real>(
    q1: Complex<T>,
    r1: Complex<T>,
    delta: T,
    kappa: T,
) -> bool {
    q1.im.min(r1.im) >= kappa || (q1 - r1).norm() < delta / T::of(4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn unit_box(delta: f64, translates: Vec<i64>) -> BoxDecomposition<f64> {
        BoxDecomposition::new(
            Rect {
                re_min: 0.0,
                re_max: 1.5,
                im_min: 2.0,
                im_max: 5.0,
            },
            delta,
            translates,
        )
        .unwrap()
    }

    #[test]
    fn box_constructor_invariants() {
        assert_eq!(
            BoxDecomposition::new(
                Rect {
                    re_min: 0.0,
                    re_max: 2.0,
                    im_min: 0.0,
                    im_max: 1.0
                },
                0.1,
                vec![0]
            ),
            Err(Error::BoxTooWide)
        );
        assert_eq!(
            BoxDecomposition::new(
                Rect {
                    re_min: 0.0,
                    re_max: 1.0,
                    im_min: 0.0,
                    im_max: 1.0
                },
                0.0,
                vec![0]
            ),
            Err(Error::NonPositiveInput)
        );
        let b = unit_box(0.1, vec![3]);
        let t = b.translate(3);
        assert_eq!(t.re_min, 6.0);
        assert_eq!(t.re_max, 7.5);
    }

    #[test]
    fn separated_by_construction() {
        let delta = 0.2;
        let boxes = unit_box(delta, vec![0]);
        let inside = vec![vec![c(2.0, 3.0)]];
        let outside = vec![c(2.0 + 2.0 * delta, 3.0)];
        match box_separation_check(&boxes, &inside, &outside).unwrap() {
            BoxSeparation::Separated { min_distance } => {
                assert!((min_distance - 2.0 * delta).abs() < 1e-15)
            }
            other => panic!("expected separation, got {other:?}"),
        }
    }

    #[test]
    fn violated_by_construction() {
        let delta = 0.2;
        let boxes = unit_box(delta, vec![0]);
        let inside = vec![vec![c(2.0, 3.0)]];
        let outside = vec![c(2.0 + delta / 2.0, 3.0)];
        match box_separation_check(&boxes, &inside, &outside).unwrap() {
            BoxSeparation::Violated {
                distance, inside, ..
            } => {
                assert!((distance - delta / 2.0).abs() < 1e-15);
                assert_eq!(inside, c(2.0, 3.0));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn strip_fixture_separates() {
        // Two horizontal strips with a gap g > delta, sampled densely.
        let delta = 0.3;
        let gap = 0.5;
        let boxes = unit_box(delta, vec![0, 1]);
        let mut inside0 = Vec::new();
        let mut inside1 = Vec::new();
        let mut outside = Vec::new();
        for i in 0..50 {
            let x = i as f64 / 49.0;
            inside0.push(c(x, 3.0));
            inside1.push(c(2.0 + x, 3.0));
            outside.push(c(x * 10.0 - 4.0, 3.0 + gap + (x - 0.5).abs()));
        }
        // Brute-force oracle for the minimum pair distance.
        let mut brute = f64::INFINITY;
        for w in inside0.iter().chain(&inside1) {
            for w2 in &outside {
                brute = brute.min((w - w2).norm());
            }
        }
        assert!(brute > delta);
        match box_separation_check(&boxes, &[inside0, inside1], &outside).unwrap() {
            BoxSeparation::Separated { min_distance } => {
                assert!((min_distance - brute).abs() < 1e-15)
            }
            other => panic!("expected separation, got {other:?}"),
        }
    }

    #[test]
    fn sample_shape_errors() {
        let boxes = unit_box(0.1, vec![0, 1]);
        assert_eq!(
            box_separation_check(&boxes, &[vec![c(0.5, 3.0)]], &[c(9.0, 9.0)]),
            Err(Error::SampleCountMismatch)
        );
        assert_eq!(
            box_separation_check(&boxes, &[vec![c(0.5, 3.0)], vec![]], &[c(9.0, 9.0)]),
            Err(Error::EmptySamples)
        );
        assert_eq!(
            box_separation_check(&boxes, &[vec![c(0.5, 3.0)], vec![c(2.5, 3.0)]], &[]),
            Err(Error::EmptySamples)
        );
    }

    #[test]
    fn proximity_diagonal_case() {
        let z = c(0.0, 80.0 * (2.0 * PI) * (2.0 * PI));
        assert_eq!(
            shape_proximity_check(z, z),
            ProximityOutcome::ConclusionHolds
        );
    }

    #[test]
    fn proximity_small_perturbation_holds() {
        let z1 = c(1e4, 1e3);
        let z2 = z1 * c(1.0 + 1e-6, 0.0);
        assert_eq!(
            shape_proximity_check(z1, z2),
            ProximityOutcome::ConclusionHolds
        );
    }

    #[test]
    fn proximity_large_gap_fails_hypotheses() {
        let base = 80.0 * (2.0 * PI) * (2.0 * PI);
        let z1 = c(0.0, base);
        let z2 = c(0.0, 3.0 * base);
        // Direct evaluation of both sides: the L² gap exceeds the budget.
        let recip = |z: C| 2.0 * z.im / z.norm_sqr();
        let tau = 2.0 * PI;
        let lhs = tau * (recip(z1) - recip(z2)).abs();
        let rhs = 16.0 * tau.powi(3) * (recip(z1).powi(2) + recip(z2).powi(2));
        assert!(lhs > rhs);
        assert_eq!(
            shape_proximity_check(z1, z2),
            ProximityOutcome::HypothesesFail
        );
    }

    #[test]
    fn proximity_rejects_small_norm_and_lower_half() {
        assert_eq!(
            shape_proximity_check(c(10.0, 10.0), c(10.0, 10.0)),
            ProximityOutcome::HypothesesFail
        );
        let base = 80.0 * (2.0 * PI) * (2.0 * PI);
        assert_eq!(
            shape_proximity_check(c(base, -1.0), c(0.0, base)),
            ProximityOutcome::HypothesesFail
        );
    }

    #[test]
    fn threshold_direct_value() {
        let tau_sq = (2.0 * PI) * (2.0 * PI);
        let t = component_separation_threshold(0.5, 3200.0).unwrap();
        assert!((t - (560.0 * tau_sq * 3200.0 / 0.5 + 1.5)).abs() < 1e-6);
        assert!((t - 1.4149065e8).abs() < 1e2);
    }

    #[test]
    fn threshold_contradiction_check() {
        let tau_sq = (2.0 * PI) * (2.0 * PI);
        for (delta, kappa) in [(0.5f64, 3200.0f64), (0.01, 4000.0), (0.9, 1e5)] {
            let t = component_separation_threshold(delta, kappa).unwrap();
            let n = t.ceil() + 1.0;
            // Past the threshold the strict inequality flips.
            assert!(delta / 2.0 >= 560.0 * tau_sq * kappa / (2.0 * n - 3.0));
            let below = (t - 10.0).max(2.0).floor();
            assert!(delta / 2.0 < 560.0 * tau_sq * kappa / (2.0 * below - 3.0));
        }
    }

    #[test]
    fn threshold_monotonicity_and_errors() {
        let t1 = component_separation_threshold(0.5, 3200.0).unwrap();
        let t2 = component_separation_threshold(0.5, 6400.0).unwrap();
        let t3 = component_separation_threshold(1.0, 3200.0).unwrap();
        assert!(t2 > t1 && t3 < t1);
        assert_eq!(
            component_separation_threshold(0.0, 3200.0),
            Err(Error::NonPositiveInput)
        );
        assert_eq!(
            component_separation_threshold(0.5, 3000.0),
            Err(Error::KappaTooSmall)
        );
    }

    #[test]
    fn q1_r1_dichotomy() {
        let q = c(1.0, 2.0);
        assert!(q1_r1_proximity_predicate(q, q, 0.4, 10.0));
        // Gap 0.4 ≥ δ/4 = 0.1 and both imaginary parts below κ.
        assert!(!q1_r1_proximity_predicate(q, q + c(0.4, 0.0), 0.4, 10.0));
        // Both imaginary parts at or above κ.
        assert!(q1_r1_proximity_predicate(
            c(1.0, 20.0),
            c(5.0, 30.0),
            0.4,
            10.0
        ));
    }
}
