//! Maskit-slice machinery: the explicit σ_z representation families for the
//! punctured torus and four-punctured sphere, three-valued slice
//! membership, the plumbing test, precise-invariance evidence, and the
//! separation/proximity estimates used to tell components apart.

mod invariance;
mod oracle;
mod plumbing;
mod separation;
mod words;

pub use invariance::{precise_invariance_evidence, InvarianceEvidence};
pub use oracle::{
    slice_membership, CertifiedRegion, Evidence, OracleConfig, SliceOracle, SliceVerdict, Verdict,
};
pub use plumbing::{plumbing_test, PlumbingOutcome};
pub use separation::{
    box_separation_check, component_separation_threshold, q1_r1_proximity_predicate,
    shape_proximity_check, BoxDecomposition, BoxSeparation, ProximityOutcome,
};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::moebius::MoebiusClass;
use crate::scalar::Real;

/// Which punctured surface a marked representation lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    PuncturedTorus,
    FourPuncturedSphere,
}

/// Axis-parallel closed rectangle in ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Real> Rect<T> {
    pub fn width(&self) -> T {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> T {
        self.im_max - self.im_min
    }

    /// Strict interior membership.
    pub fn contains_strict(&self, z: Complex<T>) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }

    pub fn translate_re(&self, dx: T) -> Self {
        Rect {
            re_min: self.re_min + dx,
            re_max: self.re_max + dx,
            im_min: self.im_min,
            im_max: self.im_max,
        }
    }
}

/// The extension generator image [[1, w], [0, 1]] attached to a marked
/// representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extension<T: Real> {
    pub w: Complex<T>,
    pub image: MoebiusClass<T>,
}

/// A marked representation from one of the two explicit slice families,
/// with an optional rank-2 extension.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedRepresentation<T: Real> {
    pub surface: SurfaceKind,
    pub z: Complex<T>,
    pub gen_a: MoebiusClass<T>,
    pub gen_b: MoebiusClass<T>,
    /// Third generator of the four-punctured sphere family.
    pub gen_c: Option<MoebiusClass<T>>,
    pub extension: Option<Extension<T>>,
}

/// The punctured-torus family: a ↦ [[iz, i], [i, 0]], b ↦ [[1, 2], [0, 1]].
/// The commutator b⁻¹a⁻¹ba equals ±[[−3, −2], [2, 1]] for every z.
pub fn sigma_z_torus<T: Real>(z: Complex<T>) -> MarkedRepresentation<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let gen_a = MoebiusClass::new(i * z, i, i, zero).expect("det(σ_z(a)) = 1");
    let gen_b = MoebiusClass::translation(Complex::new(T::of(2.0), T::zero()));
    MarkedRepresentation {
        surface: SurfaceKind::PuncturedTorus,
        z,
        gen_a,
        gen_b,
        gen_c: None,
        extension: None,
    }
}

/// The four-punctured-sphere family: a ↦ [[−3, 2], [−2, 1]],
/// b ↦ [[1, 0], [2, 1]], c ↦ [[−1+2z, −2z²], [2, −1−2z]]. The product ab
/// equals [[1, 2], [0, 1]] for every z.
pub fn sigma_z_sphere<T: Real>(z: Complex<T>) -> MarkedRepresentation<T> {
    let re = |x: f64| Complex::new(T::of(x), T::zero());
    let two = re(2.0);
    let gen_a = MoebiusClass::new(re(-3.0), re(2.0), re(-2.0), re(1.0)).expect("det 1");
    let gen_b = MoebiusClass::new(re(1.0), re(0.0), re(2.0), re(1.0)).expect("det 1");
    let gen_c = MoebiusClass::new(re(-1.0) + two * z, -two * z * z, two, re(-1.0) - two * z)
        .expect("det(σ_z(c)) = 1 identically");
    MarkedRepresentation {
        surface: SurfaceKind::FourPuncturedSphere,
        z,
        gen_a,
        gen_b,
        gen_c: Some(gen_c),
        extension: None,
    }
}

impl<T: Real> MarkedRepresentation<T> {
    /// The peripheral parabolic the extension must commute with:
    /// σ(b) on the torus, σ(ab) on the sphere. Both are exactly
    /// [[1, 2], [0, 1]] in these markings.
    pub fn peripheral(&self) -> MoebiusClass<T> {
        match self.surface {
            SurfaceKind::PuncturedTorus => self.gen_b,
            SurfaceKind::FourPuncturedSphere => self.gen_a.compose(&self.gen_b),
        }
    }

    /// The torus-family commutator b⁻¹a⁻¹ba.
    pub fn torus_commutator(&self) -> MoebiusClass<T> {
        self.gen_b
            .inverse()
            .compose(&self.gen_a.inverse())
            .compose(&self.gen_b)
            .compose(&self.gen_a)
    }

    /// Attaches the extension generator image [[1, w], [0, 1]] for a
    /// Teichmüller parameter w in the upper half-plane. The extension
    /// commutes with the peripheral parabolic exactly (both are
    /// upper-triangular unipotent).
    pub fn extend_with_w(mut self, w: Complex<T>) -> Result<Self> {
        if !(w.im > T::zero()) {
            return Err(Error::LowerHalfPlane);
        }
        self.extension = Some(Extension {
            w,
            image: MoebiusClass::translation(w),
        });
        Ok(self)
    }
}

/// Lower bound for Im(w) of any extension in the relative deformation
/// space: 2 for the punctured torus, 1 for the four-punctured sphere.
pub fn min_im_w_bound<T: Real>(kind: SurfaceKind) -> T {
    match kind {
        SurfaceKind::PuncturedTorus => T::of(2.0),
        SurfaceKind::FourPuncturedSphere => T::one(),
    }
}
