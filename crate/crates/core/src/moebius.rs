//! PSL(2,ℂ) arithmetic: determinant-normalized 2×2 complex matrices up to
//! sign, traces, complex translation length, isometry classification, and
//! rank-2 cusp normalization.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default determinant tolerance for class construction.
pub const DET_TOL: f64 = 1e-12;

/// Tolerance deciding parabolicity (|tr² − 4| below it) and proximity to ±I.
pub const PARABOLIC_TOL: f64 = 1e-10;

/// A PSL(2,ℂ) element: a 2×2 complex matrix of determinant 1, identified
/// with its negative. Construction renormalizes the determinant; equality
/// is up to global sign.
#[derive(Debug, Clone, Copy)]
pub struct MoebiusClass<T: Real> {
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
}

impl<T: Real> PartialEq for MoebiusClass<T> {
    /// Exact entrywise equality up to the global sign.
    fn eq(&self, other: &Self) -> bool {
        (self.a == other.a && self.b == other.b && self.c == other.c && self.d == other.d)
            || (self.a == -other.a
                && self.b == -other.b
                && self.c == -other.c
                && self.d == -other.d)
    }
}

impl<T: Real> MoebiusClass<T> {
    /// Builds the class of [[a, b], [c, d]], rescaling by 1/√det
    /// (principal branch) so the determinant is 1.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < T::of(DET_TOL) || !det.norm().is_finite() {
            return Err(Error::SingularMatrix);
        }
        let s = det.sqrt();
        Ok(Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    /// Convenience constructor from f64 entry pairs (re, im).
    pub fn from_f64_entries(e: [[(f64, f64); 2]; 2]) -> Result<Self> {
        let c = |p: (f64, f64)| Complex::new(T::of(p.0), T::of(p.1));
        Self::new(c(e[0][0]), c(e[0][1]), c(e[1][0]), c(e[1][1]))
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
            c: Complex::new(T::zero(), T::zero()),
            d: Complex::new(T::one(), T::zero()),
        }
    }

    /// The parabolic z ↦ z + t.
    pub fn translation(t: Complex<T>) -> Self {
        Self {
            a: Complex::new(T::one(), T::zero()),
            b: t,
            c: Complex::new(T::zero(), T::zero()),
            d: Complex::new(T::one(), T::zero()),
        }
    }

    /// diag(λ, 1/λ); λ = e^{ℒ/2} realizes complex length ℒ.
    pub fn diagonal(lambda: Complex<T>) -> Result<Self> {
        if lambda.norm() < T::of(DET_TOL) {
            return Err(Error::SingularMatrix);
        }
        let zero = Complex::new(T::zero(), T::zero());
        Ok(Self {
            a: lambda,
            b: zero,
            c: zero,
            d: lambda.inv(),
        })
    }

    pub fn a(&self) -> Complex<T> {
        self.a
    }
    pub fn b(&self) -> Complex<T> {
        self.b
    }
    pub fn c(&self) -> Complex<T> {
        self.c
    }
    pub fn d(&self) -> Complex<T> {
        self.d
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    /// Trace of the stored SL(2,ℂ) lift. Only defined up to sign as a class
    /// invariant; use `trace_sq` for sign-free quantities. For words whose
    /// lift is canonical (e.g. commutators) it is the usual trace.
    pub fn trace(&self) -> Complex<T> {
        self.a + self.d
    }

    /// tr², which is well defined on the sign quotient.
    pub fn trace_sq(&self) -> Complex<T> {
        let t = self.trace();
        t * t
    }

    /// Matrix product followed by determinant renormalization.
    pub fn compose(&self, rhs: &Self) -> Self {
        let a = self.a * rhs.a + self.b * rhs.c;
        let b = self.a * rhs.b + self.b * rhs.d;
        let c = self.c * rhs.a + self.d * rhs.c;
        let d = self.c * rhs.b + self.d * rhs.d;
        // The product determinant is ≈ 1, so the principal square root
        // cannot flip the sign of the word.
        let s = (a * d - b * c).sqrt();
        Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    /// Sup-norm of the entry matrix.
    pub fn sup_norm(&self) -> T {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    /// Entrywise sup distance between the classes, minimized over the sign.
    pub fn class_distance(&self, other: &Self) -> T {
        let plus = (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm());
        let minus = (self.a + other.a)
            .norm()
            .max((self.b + other.b).norm())
            .max((self.c + other.c).norm())
            .max((self.d + other.d).norm());
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.class_distance(other) <= tol
    }

    pub fn is_identity_class(&self, tol: T) -> bool {
        self.approx_eq(&Self::identity(), tol)
    }

    fn is_parabolic(&self, tol: T) -> bool {
        let four = Complex::new(T::of(4.0), T::zero());
        (self.trace_sq() - four).norm() < tol && !self.is_identity_class(tol)
    }

    /// The SL(2,ℂ) lift with trace ≈ +2 of a parabolic class.
    fn parabolic_lift(&self) -> Self {
        if self.trace().re < T::zero() {
            Self {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            *self
        }
    }
}

impl<T: Real> std::ops::Mul for MoebiusClass<T> {
    type Output = MoebiusClass<T>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.compose(&rhs)
    }
}

/// Isometry type read off from the trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryKind {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// Complex translation length ℒ = l + iθ with tr² = 4cosh²(ℒ/2),
/// l ≥ 0 and θ ∈ (−π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLength<T> {
    pub l: T,
    pub theta: T,
    pub kind: IsometryKind,
}

/// Folds an angle into (−π, π]; a tie at −π maps to +π.
pub fn fold_angle<T: Real>(mut theta: T) -> T {
    let pi = T::PI();
    let tau = T::TAU();
    while theta > pi {
        theta -= tau;
    }
    while theta <= -pi {
        theta += tau;
    }
    theta
}

/// Complex length of a class, with the branch fixed as follows: take the
/// principal square root of tr² (Re ≥ 0, and Im ≥ 0 on the cut), apply the
/// principal arccosh so that Re(ℒ/2) ≥ 0, then fold θ into (−π, π]. For
/// elliptics this yields θ ∈ (0, π].
pub fn complex_length<T: Real>(m: &MoebiusClass<T>) -> ComplexLength<T> {
    let tol = T::of(PARABOLIC_TOL);
    let zero = T::zero();

    if m.is_identity_class(tol) {
        return ComplexLength {
            l: zero,
            theta: zero,
            kind: IsometryKind::Identity,
        };
    }

    let tr2 = m.trace_sq();
    let four = Complex::new(T::of(4.0), T::zero());
    if (tr2 - four).norm() < tol {
        return ComplexLength {
            l: zero,
            theta: zero,
            kind: IsometryKind::Parabolic,
        };
    }

    let elliptic = tr2.im.abs() < tol && tr2.re >= -tol && tr2.re < T::of(4.0);
    if elliptic {
        // tr² real in [0, 4): θ = 2·arccos(|tr|/2) ∈ (0, π], computed on
        // the real axis so the rounding residue of Im(tr²) cannot flip
        // the branch.
        let c = (tr2.re.max(zero).sqrt() / T::of(2.0)).min(T::one());
        return ComplexLength {
            l: zero,
            theta: T::of(2.0) * c.acos(),
            kind: IsometryKind::Elliptic,
        };
    }

    // Snap a near-real trace square onto the +0 side of the axis so the
    // branch cut of the square root is approached consistently.
    let tr2 = if tr2.im.abs() < tol {
        Complex::new(tr2.re, zero)
    } else {
        tr2
    };
    // Canonical half-trace: principal sqrt lands in Re ≥ 0 (Im ≥ 0 on the
    // negative real axis); θ shifts by full turns under the sign choice,
    // which the fold removes.
    let half_trace = tr2.sqrt() / Complex::new(T::of(2.0), T::zero());
    let half_length = half_trace.acosh();
    ComplexLength {
        l: (half_length.re * T::of(2.0)).max(zero),
        theta: fold_angle(half_length.im * T::of(2.0)),
        kind: IsometryKind::Loxodromic,
    }
}

/// Normalizes a rank-2 cusp: given independent commuting parabolics sharing
/// a fixed point, returns the unique w such that some conjugation sends
/// `lambda` to [[1, 2], [0, 1]] and `beta` to [[1, w], [0, 1]].
///
/// Writing the trace-+2 lifts as I + N with N nilpotent, the two nilpotent
/// parts are proportional exactly when the parabolics share their fixed
/// point, and the proportionality factor is conjugation invariant; w is
/// twice that factor.
pub fn normalize_cusp<T: Real>(
    lambda: &MoebiusClass<T>,
    beta: &MoebiusClass<T>,
) -> Result<Complex<T>> {
    let ptol = T::of(PARABOLIC_TOL);
    if !lambda.is_parabolic(ptol) || !beta.is_parabolic(ptol) {
        return Err(Error::NonParabolic);
    }

    let scale = T::one() + lambda.sup_norm() * beta.sup_norm();
    let tol = T::of(1e-9) * scale;
    let lb = lambda.compose(beta);
    let bl = beta.compose(lambda);
    if lb.class_distance(&bl) > tol {
        return Err(Error::NonCommuting);
    }

    let lam = lambda.parabolic_lift();
    let bet = beta.parabolic_lift();
    let one = Complex::new(T::one(), T::zero());
    // Nilpotent parts of the trace-+2 lifts.
    let nl = [lam.a - one, lam.b, lam.c, lam.d - one];
    let nb = [bet.a - one, bet.b, bet.c, bet.d - one];

    // Largest entry of N_lambda anchors the proportionality factor.
    let (imax, _) =
        nl.iter()
            .enumerate()
            .map(|(i, e)| (i, e.norm()))
            .fold(
                (0, T::zero()),
                |acc, cur| if cur.1 > acc.1 { cur } else { acc },
            );
    let factor = nb[imax] / nl[imax];
    for i in 0..4 {
        if (nb[i] - factor * nl[i]).norm() > tol {
            // Non-proportional nilpotents: distinct fixed points.
            return Err(Error::NonCommuting);
        }
    }

    let w = factor * Complex::new(T::of(2.0), T::zero());

    // beta ∈ ⟨lambda⟩ up to sign exactly when w is an even integer.
    let half = w / Complex::new(T::of(2.0), T::zero());
    let k = half.re.round();
    if half.im.abs() <= tol && (half.re - k).abs() <= tol {
        return Err(Error::DependentGenerators);
    }

    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = MoebiusClass<f64>;
    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn m(a: C, b: C, cc: C, d: C) -> M {
        M::new(a, b, cc, d).unwrap()
    }

    fn real_m(a: f64, b: f64, cc: f64, d: f64) -> M {
        m(c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(d, 0.0))
    }

    #[test]
    fn upper_triangular_composition() {
        let w = c(3.0, 5.0);
        let lhs = M::translation(c(2.0, 0.0)).compose(&M::translation(w));
        let expected = M::translation(c(2.0, 0.0) + w);
        assert!(lhs.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn sphere_generator_product_is_standard_parabolic() {
        // [[-3, 2], [-2, 1]] * [[1, 0], [2, 1]] = [[1, 2], [0, 1]]
        let a = real_m(-3.0, 2.0, -2.0, 1.0);
        let b = real_m(1.0, 0.0, 2.0, 1.0);
        let expected = M::translation(c(2.0, 0.0));
        assert!(a.compose(&b).approx_eq(&expected, 1e-14));
    }

    #[test]
    fn inverse_law() {
        let g = m(c(1.1, 0.3), c(-0.2, 0.7), c(0.5, -0.4), c(0.9, 0.1));
        assert!(g.compose(&g.inverse()).is_identity_class(1e-12));
    }

    #[test]
    fn determinant_renormalized() {
        let g = m(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0));
        assert!((g.det() - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn equality_is_sign_blind() {
        let g = m(c(1.1, 0.3), c(-0.2, 0.7), c(0.5, -0.4), c(0.9, 0.1));
        let neg = M::new(-g.a(), -g.b(), -g.c(), -g.d()).unwrap();
        // The renormalizing sqrt may land either lift, so compare both ways.
        assert_eq!(g, neg);
        assert_ne!(g, M::identity());
    }

    #[test]
    fn classify_parabolic_translation() {
        let len = complex_length(&M::translation(c(2.0, 0.0)));
        assert_eq!(len.kind, IsometryKind::Parabolic);
        assert_eq!((len.l, len.theta), (0.0, 0.0));
    }

    #[test]
    fn classify_parabolic_negative_trace() {
        let g = real_m(-3.0, -2.0, 2.0, 1.0);
        let len = complex_length(&g);
        assert_eq!(len.kind, IsometryKind::Parabolic);
        assert_eq!((len.l, len.theta), (0.0, 0.0));
    }

    #[test]
    fn classify_loxodromic_diagonal() {
        let half = c(1.0, 0.6) / c(2.0, 0.0);
        let g = M::diagonal(half.exp()).unwrap();
        let len = complex_length(&g);
        assert_eq!(len.kind, IsometryKind::Loxodromic);
        assert!((len.l - 1.0).abs() < 1e-10);
        assert!((len.theta - 0.6).abs() < 1e-10);
    }

    #[test]
    fn classify_elliptic_rotation() {
        let g = M::diagonal(c(0.0, std::f64::consts::FRAC_PI_6).exp()).unwrap();
        let len = complex_length(&g);
        assert_eq!(len.kind, IsometryKind::Elliptic);
        assert_eq!(len.l, 0.0);
        assert!((len.theta - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn identity_class_reported() {
        let len = complex_length(&M::identity());
        assert_eq!(len.kind, IsometryKind::Identity);
        let minus_id = m(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
        assert_eq!(complex_length(&minus_id).kind, IsometryKind::Identity);
    }

    #[test]
    fn length_power_law() {
        let g = M::diagonal(c(0.35, 0.11).exp()).unwrap();
        let base = complex_length(&g).l;
        let mut p = g;
        for n in 2..=5 {
            p = p.compose(&g);
            let ln = complex_length(&p).l;
            assert!(
                (ln - n as f64 * base).abs() < 1e-8,
                "power {n}: {ln} vs {}",
                n as f64 * base
            );
        }
    }

    #[test]
    fn normalize_cusp_already_normalized() {
        let lambda = M::translation(c(2.0, 0.0));
        let beta = M::translation(c(3.0, 5.0));
        let w = normalize_cusp(&lambda, &beta).unwrap();
        assert!((w - c(3.0, 5.0)).norm() < 1e-12);
    }

    #[test]
    fn normalize_cusp_dependent_generators() {
        let lambda = M::translation(c(2.0, 0.0));
        assert_eq!(
            normalize_cusp(&lambda, &lambda),
            Err(Error::DependentGenerators)
        );
        let beta = M::translation(c(6.0, 0.0));
        assert_eq!(
            normalize_cusp(&lambda, &beta),
            Err(Error::DependentGenerators)
        );
    }

    #[test]
    fn normalize_cusp_rejects_non_parabolic() {
        let lambda = M::translation(c(2.0, 0.0));
        let lox = M::diagonal(c(0.4, 0.0).exp()).unwrap();
        assert_eq!(normalize_cusp(&lambda, &lox), Err(Error::NonParabolic));
    }

    #[test]
    fn normalize_cusp_rejects_distinct_fixed_points() {
        let lambda = M::translation(c(2.0, 0.0));
        let lower = real_m(1.0, 0.0, 1.0, 1.0); // parabolic fixing 0
        assert_eq!(normalize_cusp(&lambda, &lower), Err(Error::NonCommuting));
    }

    #[test]
    fn normalize_cusp_conjugation_oracle() {
        // Conjugation invariance over 100 pseudo-random conjugators.
        let w0 = c(3.0, 5.0);
        let lambda = M::translation(c(2.0, 0.0));
        let beta = M::translation(w0);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        let mut done = 0;
        while done < 100 {
            let g = M::new(
                c(next(), next()),
                c(next(), next()),
                c(next(), next()),
                c(next(), next()),
            );
            let g = match g {
                Ok(g) if g.sup_norm() < 50.0 => g,
                _ => continue,
            };
            let w = normalize_cusp(&lambda.conjugate_by(&g), &beta.conjugate_by(&g)).unwrap();
            assert!((w - w0).norm() < 1e-7, "conjugated w drifted: {w}");
            done += 1;
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small() -> impl Strategy<Value = f64> {
            -2.0f64..2.0
        }

        fn well_conditioned() -> impl Strategy<Value = M> {
            (
                small(),
                small(),
                small(),
                small(),
                small(),
                small(),
                small(),
                small(),
            )
                .prop_filter_map("invertible", |(ar, ai, br, bi, cr, ci, dr, di)| {
                    let a = c(ar, ai);
                    let b = c(br, bi);
                    let cc = c(cr, ci);
                    let d = c(dr, di);
                    if (a * d - b * cc).norm() < 0.1 {
                        return None;
                    }
                    MoebiusClass::new(a, b, cc, d).ok()
                })
        }

        proptest! {
            #[test]
            fn complex_length_is_conjugation_invariant(m in well_conditioned(), g in well_conditioned()) {
                let base = complex_length(&m);
                let conj = complex_length(&m.conjugate_by(&g));
                prop_assert!((base.l - conj.l).abs() < 1e-9);
                if base.kind == IsometryKind::Loxodromic {
                    let dtheta = fold_angle(base.theta - conj.theta).abs();
                    prop_assert!(dtheta < 1e-9 || (dtheta - std::f64::consts::TAU).abs() < 1e-9);
                }
            }

            #[test]
            fn sign_quotient_consistency(m in well_conditioned()) {
                let neg = MoebiusClass::new(-m.a(), -m.b(), -m.c(), -m.d()).unwrap();
                let l1 = complex_length(&m);
                let l2 = complex_length(&neg);
                prop_assert!((l1.l - l2.l).abs() < 1e-12);
                prop_assert!((l1.theta - l2.theta).abs() < 1e-12);
                prop_assert_eq!(l1.kind, l2.kind);
            }

            #[test]
            fn composition_preserves_determinant(m in well_conditioned(), n in well_conditioned()) {
                let p = m.compose(&n);
                prop_assert!((p.det() - c(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }
}
