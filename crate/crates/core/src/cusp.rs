//! Flat-torus geometry of rank-2 cusps: normalized length L², reciprocal
//! normalized twist A², twist, and the shortest-longitude lattice search.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::ext::ExtendedReal;
use crate::scalar::Real;

/// Relative tolerance under which two longitude lengths count as tied.
pub const TIE_TOL: f64 = 1e-9;

/// A normalized rank-2 cusp with Teichmüller parameter w: the cusp group is
/// generated by z ↦ z + 2 (shortest longitude) and z ↦ z + w (meridian).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspShape<T: Real> {
    w: Complex<T>,
    l_sq: T,
    a_sq: ExtendedReal<T>,
    twist: T,
}

impl<T: Real> CuspShape<T> {
    pub fn w(&self) -> Complex<T> {
        self.w
    }

    /// Normalized meridian length squared, |w|²/(2 Im w).
    pub fn l_sq(&self) -> T {
        self.l_sq
    }

    /// Reciprocal normalized twist, |w|²/(2 Re w); infinite when Re w = 0.
    pub fn a_sq(&self) -> ExtendedReal<T> {
        self.a_sq
    }

    /// 1/A² = 2 Re(w)/|w|²; exactly 0 for the untwisted cusp.
    pub fn twist(&self) -> T {
        self.twist
    }
}

/// Builds the cusp shape from its Teichmüller parameter.
pub fn shape_from_w<T: Real>(w: Complex<T>) -> Result<CuspShape<T>> {
    if !(w.im > T::zero()) {
        return Err(Error::LowerHalfPlane);
    }
    let norm_sq = w.norm_sqr();
    let two = T::of(2.0);
    let l_sq = norm_sq / (two * w.im);
    let a_sq = if w.re == T::zero() {
        ExtendedReal::Infinite
    } else {
        ExtendedReal::Finite(norm_sq / (two * w.re))
    };
    let twist = two * w.re / norm_sq;
    Ok(CuspShape {
        w,
        l_sq,
        a_sq,
        twist,
    })
}

/// Finds the n minimizing |2 + n·w| over the integers — the shortest
/// longitude class in the lattice ⟨2, w⟩ with meridian class w — with
/// default tie tolerance.
///
/// A tie (two longitude classes of equal length, within relative
/// tolerance) returns the positively oriented candidate and marks the
/// result non-unique.
pub fn shortest_longitude<T: Real>(w: Complex<T>) -> Result<(i64, bool)> {
    shortest_longitude_with_tol(w, T::of(TIE_TOL))
}

/// `shortest_longitude` with an explicit relative tie tolerance.
///
/// |2 + n·w|² is a quadratic in n with real minimizer x* = −2Re(w)/|w|²,
/// so the integer minimizer lies in {⌊x*⌋, ⌈x*⌉}; a ±2 neighborhood is
/// scanned to settle ties. (Ties can only involve integers bracketing x*:
/// the sublevel set of a quadratic is an interval, and the coarse bound
/// |2 + n·w| ≥ |n|·Im(w) keeps distant n out.)
pub fn shortest_longitude_with_tol<T: Real>(w: Complex<T>, tie_tol: T) -> Result<(i64, bool)> {
    if !(w.im > T::zero()) {
        return Err(Error::LowerHalfPlane);
    }
    let two = Complex::new(T::of(2.0), T::zero());
    let x_star = -T::of(2.0) * w.re / w.norm_sqr();
    let center = if x_star >= T::of(9e18) {
        i64::MAX / 2
    } else if x_star <= T::of(-9e18) {
        i64::MIN / 2
    } else {
        x_star.round().to_i64().unwrap_or(0)
    };

    let len = |n: i64| -> T {
        let nf = T::from_i64(n).expect("candidate fits the scalar");
        (two + w * Complex::new(nf, T::zero())).norm()
    };

    let candidates: Vec<i64> = (-2..=2).map(|d| center.saturating_add(d)).collect();
    let mut best_n = candidates[0];
    let mut best = len(best_n);
    for &n in &candidates[1..] {
        let l = len(n);
        if l < best {
            best = l;
            best_n = n;
        }
    }

    // Collect near-minimal candidates for the tie decision.
    let mut tied = Vec::new();
    for &n in &candidates {
        if (len(n) - best) <= tie_tol * best {
            tied.push(n);
        }
    }

    if tied.len() <= 1 {
        return Ok((best_n, true));
    }

    // Positive-orientation convention: among tied candidates pick the one
    // whose component along the meridian direction is positive (b = +m/2).
    let oriented = tied
        .iter()
        .copied()
        .max_by(|&p, &q| {
            let comp = |n: i64| {
                let nf = T::from_i64(n).unwrap();
                ((two + w * Complex::new(nf, T::zero())) * w.conj()).re
            };
            comp(p).partial_cmp(&comp(q)).unwrap()
        })
        .unwrap();
    Ok((oriented, false))
}

/// Normalized twist b/m of a marked flat torus, b ∈ (−m/2, m/2].
pub fn twist_from_marking<T: Real>(m: T, b: T) -> Result<T> {
    if !(m > T::zero()) {
        return Err(Error::NonPositiveInput);
    }
    let half = m / T::of(2.0);
    if b <= -half || b > half {
        return Err(Error::OutOfFundamentalDomain);
    }
    Ok(b / m)
}

/// A flat-metric marking of a torus cross-section: meridian length m, twist
/// offset b ∈ (−m/2, m/2], and area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatTorusMarking<T: Real> {
    pub m: T,
    pub b: T,
    pub area: T,
}

impl<T: Real> FlatTorusMarking<T> {
    pub fn new(m: T, b: T, area: T) -> Result<Self> {
        if !(m > T::zero()) || !(area > T::zero()) {
            return Err(Error::NonPositiveInput);
        }
        let half = m / T::of(2.0);
        if b <= -half || b > half {
            return Err(Error::OutOfFundamentalDomain);
        }
        Ok(Self { m, b, area })
    }

    /// Normalized length L = m/√area.
    pub fn normalized_length(&self) -> T {
        self.m / self.area.sqrt()
    }

    pub fn normalized_twist(&self) -> T {
        self.b / self.m
    }

    /// Reciprocal normalized twist m/b; infinite for b = 0.
    pub fn reciprocal_twist(&self) -> ExtendedReal<T> {
        if self.b == T::zero() {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(self.m / self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn shape_untwisted() {
        let s = shape_from_w(c(0.0, 2.0)).unwrap();
        assert!((s.l_sq() - 1.0).abs() < 1e-15);
        assert!(s.a_sq().is_infinite());
        assert_eq!(s.twist(), 0.0);
    }

    #[test]
    fn shape_square_torus() {
        let s = shape_from_w(c(2.0, 2.0)).unwrap();
        assert!((s.l_sq() - 2.0).abs() < 1e-15);
        assert!((s.a_sq().finite().unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn shape_mirror() {
        let s = shape_from_w(c(-2.0, 2.0)).unwrap();
        assert!((s.l_sq() - 2.0).abs() < 1e-15);
        assert!((s.a_sq().finite().unwrap() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn shape_rejects_lower_half_plane() {
        assert_eq!(shape_from_w(c(1.0, -2.0)), Err(Error::LowerHalfPlane));
        assert_eq!(shape_from_w(c(1.0, 0.0)), Err(Error::LowerHalfPlane));
    }

    /// Brute-force oracle over a wide window, with the same tie rule.
    fn brute_force(w: C, tol: f64) -> (i64, bool) {
        let len = |n: i64| (c(2.0, 0.0) + w * c(n as f64, 0.0)).norm();
        let best = (-100..=100).map(len).fold(f64::INFINITY, f64::min);
        let tied: Vec<i64> = (-100..=100)
            .filter(|&n| len(n) - best <= tol * best)
            .collect();
        if tied.len() == 1 {
            (tied[0], true)
        } else {
            let pick = tied
                .iter()
                .copied()
                .max_by(|&p, &q| {
                    let comp = |n: i64| ((c(2.0, 0.0) + w * c(n as f64, 0.0)) * w.conj()).re;
                    comp(p).partial_cmp(&comp(q)).unwrap()
                })
                .unwrap();
            (pick, false)
        }
    }

    #[test]
    fn shortest_longitude_wide_cusp() {
        let w = c(10.0, 4.0);
        assert_eq!(brute_force(w, TIE_TOL), (0, true));
        assert_eq!(shortest_longitude(w).unwrap(), (0, true));
    }

    #[test]
    fn shortest_longitude_large_reciprocal_twist() {
        // |A²| = 3 > 2 keeps the n = 0 longitude shortest.
        let w = c(3.0, 3.0);
        assert_eq!(brute_force(w, TIE_TOL), (0, true));
        assert_eq!(shortest_longitude(w).unwrap(), (0, true));
    }

    #[test]
    fn shortest_longitude_exact_tie() {
        // |2 + 0·w| = |2 + (-1)·w| exactly: w on the circle |2 - w| = 2.
        let w = c(3.9, 0.39f64.sqrt());
        let (n, unique) = shortest_longitude(w).unwrap();
        assert_eq!(brute_force(w, TIE_TOL), (n, unique));
        assert!(!unique);
        // Positive-orientation pick: the candidate with positive meridian
        // component, which is n = 0 here.
        assert_eq!(n, 0);
    }

    #[test]
    fn shortest_longitude_near_tie_resolves_unique() {
        // 0.5% gap is a genuine non-tie at relative tolerance 1e-9.
        let w = c(4.0, 0.2);
        assert_eq!(brute_force(w, TIE_TOL), (0, true));
        assert_eq!(shortest_longitude(w).unwrap(), (0, true));
    }

    #[test]
    fn shortest_longitude_far_offset_cusp() {
        // A short near-real meridian pushes the minimizer away from n = 0.
        let w = c(0.5, 0.05);
        let expected = brute_force(w, TIE_TOL);
        assert_eq!(expected.0, -4);
        assert_eq!(shortest_longitude(w).unwrap(), expected);
        // Degenerate near-real w must return promptly, not loop.
        let w = c(1.0, 1e-12);
        let (n, _) = shortest_longitude(w).unwrap();
        assert!((c(2.0, 0.0) + w * c(n as f64, 0.0)).norm() <= 2.0 + 1e-9);
    }

    #[test]
    fn zero_longitude_whenever_reciprocal_twist_exceeds_two() {
        // Grid sweep of the |A²| > 2 normalization-validity claim.
        let mut checked = 0;
        for re10 in -80..=80 {
            for im10 in 1..=60 {
                let w = c(re10 as f64 / 10.0, im10 as f64 / 4.0);
                let s = match shape_from_w(w) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                if !s.a_sq().abs_at_least(2.0 + 1e-9) {
                    continue;
                }
                let (n, unique) = shortest_longitude(w).unwrap();
                assert_eq!((n, unique), (0, true), "w = {w}");
                assert_eq!(brute_force(w, TIE_TOL), (0, true), "w = {w}");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn lattice_unchanged_by_even_horizontal_translation() {
        // ⟨2, w⟩ and ⟨2, w + 2k⟩ are the same lattice: the multisets of
        // vector lengths inside a ball agree.
        let lengths = |w: C| -> Vec<f64> {
            // Coefficient windows covering every lattice point of norm
            // ≤ 25 for this basis: |b|·Im(w) ≤ 25, then |2a| ≤ 25 + |b·w|.
            let b_max = (25.0 / w.im).ceil() as i64 + 1;
            let a_max = ((25.0 + b_max as f64 * w.norm()) / 2.0).ceil() as i64 + 1;
            let mut v = Vec::new();
            for a in -a_max..=a_max {
                for b in -b_max..=b_max {
                    let p = c(2.0 * a as f64, 0.0) + w * c(b as f64, 0.0);
                    let n = p.norm();
                    if n <= 25.0 {
                        v.push(n);
                    }
                }
            }
            v.sort_by(|x, y| x.partial_cmp(y).unwrap());
            v
        };
        let w = c(0.7, 1.3);
        for k in [-2i64, 1, 3] {
            let shifted = w + c(2.0 * k as f64, 0.0);
            let a = lengths(w);
            let b = lengths(shifted);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn twist_from_marking_cases() {
        assert_eq!(twist_from_marking(4.0, 1.0).unwrap(), 0.25);
        assert_eq!(twist_from_marking(4.0, 2.0).unwrap(), 0.5);
        assert_eq!(twist_from_marking(4.0, 0.0).unwrap(), 0.0);
        assert_eq!(
            twist_from_marking(4.0, -2.0),
            Err(Error::OutOfFundamentalDomain)
        );
        assert_eq!(
            twist_from_marking(4.0, 2.5),
            Err(Error::OutOfFundamentalDomain)
        );
    }

    #[test]
    fn flat_torus_marking() {
        let mk = FlatTorusMarking::new(4.0, 1.0, 16.0).unwrap();
        assert_eq!(mk.normalized_length(), 1.0);
        assert_eq!(mk.normalized_twist(), 0.25);
        assert_eq!(mk.reciprocal_twist().finite().unwrap(), 4.0);
        assert!(FlatTorusMarking::new(4.0, 0.0, 1.0)
            .unwrap()
            .reciprocal_twist()
            .is_infinite());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn argmin_matches_brute_force(re in -40.0f64..40.0, im in 0.05f64..20.0) {
                // Minimizers satisfy |n| <= 2/Im(w) <= 40, inside the
                // oracle's window.
                let w = c(re, im);
                let got = shortest_longitude(w).unwrap();
                prop_assert_eq!(got, brute_force(w, TIE_TOL));
            }

            #[test]
            fn mirror_symmetry(re in -50.0f64..50.0, im in 0.01f64..50.0) {
                let s = shape_from_w(c(re, im)).unwrap();
                let m = shape_from_w(c(-re, im)).unwrap();
                prop_assert!((s.l_sq() - m.l_sq()).abs() < 1e-12 * s.l_sq().max(1.0));
                match (s.a_sq(), m.a_sq()) {
                    (ExtendedReal::Infinite, ExtendedReal::Infinite) => {}
                    (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => {
                        prop_assert!((x + y).abs() < 1e-9 * x.abs().max(1.0));
                    }
                    _ => prop_assert!(false, "mismatched infinities"),
                }
            }
        }
    }
}
