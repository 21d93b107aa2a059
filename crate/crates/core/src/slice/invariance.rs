//! Evidence checker for precise invariance of the half-plane B⁺ = {Im > R}
//! under the cyclic parabolic subgroup ⟨H⟩ inside a finitely generated
//! group: enumerates reduced words up to a budget, discards those in ⟨H⟩,
//! and tests g(B⁺) ∩ B⁺ = ∅ via the exact Möbius image of the half-plane.
//!
//! This reports evidence only; a clean run over a finite word ball is
//! never a proof of precise invariance.

use num_complex::Complex;

use super::words::{enumerate_reduced_words, word_string};
use crate::error::{Error, Result};
use crate::moebius::MoebiusClass;
use crate::scalar::Real;

/// Outcome of the finite word-ball scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvarianceEvidence {
    NoViolationFound,
    /// A word outside ⟨H⟩ whose image of B⁺ meets B⁺.
    Violation {
        word: String,
    },
}

/// Image of the open half-plane {Im z > r} under a Möbius map.
enum HalfPlaneImage<T> {
    /// Open disk.
    Disk { center: Complex<T>, radius: T },
    /// {w : Re(s·w) > −c} for the stored (s, c); a genuine half-plane.
    HalfPlane { s: Complex<T>, c: T },
    /// Exterior of a disk, or the whole plane: always meets {Im > r}.
    Unbounded,
}

/// Exact image of {Im z > r} under g = [[a, b], [c, d]], by rewriting
/// Im g⁻¹(w) > r as K|w|² + Re(S·w) + C > 0.
fn half_plane_image<T: Real>(g: &MoebiusClass<T>, r: T) -> HalfPlaneImage<T> {
    let (a, b, c, d) = (g.a(), g.b(), g.c(), g.d());
    let i = Complex::new(T::zero(), T::one());
    let two = T::of(2.0);

    let k = -((d * c.conj()).im + r * c.norm_sqr());
    let s = a.conj() * c * Complex::new(two * r, T::zero()) - i * (d * a.conj() - b.conj() * c);
    let cc = -(b * a.conj()).im - r * a.norm_sqr();

    let scale = T::one() + c.norm_sqr() + a.norm_sqr();
    if k.abs() <= T::epsilon() * T::of(64.0) * scale {
        return HalfPlaneImage::HalfPlane { s, c: cc };
    }
    if k > T::zero() {
        return HalfPlaneImage::Unbounded;
    }
    // K < 0: |w + conj(S/K)/2|² < |S/K|²/4 − C/K.
    let sk = s / Complex::new(k, T::zero());
    let center = -sk.conj() / Complex::new(two, T::zero());
    let radius_sq = sk.norm_sqr() / T::of(4.0) - cc / k;
    HalfPlaneImage::Disk {
        center,
        radius: radius_sq.max(T::zero()).sqrt(),
    }
}

/// Does the image region meet {Im > r}?
fn image_meets_upper<T: Real>(image: &HalfPlaneImage<T>, r: T) -> bool {
    match image {
        HalfPlaneImage::Disk { center, radius } => center.im + *radius > r,
        HalfPlaneImage::Unbounded => true,
        HalfPlaneImage::HalfPlane { s, c } => {
            // {Re(s·w) > −c} misses {Im w > r} only when it is the region
            // below a horizontal line at height ≤ r: s on the positive
            // imaginary axis with c/Im(s) ≤ r.
            if s.norm() == T::zero() {
                return *c > T::zero();
            }
            let tilt = s.re.abs() > T::epsilon() * T::of(64.0) * s.norm();
            if tilt || s.im <= T::zero() {
                true
            } else {
                *c / s.im > r
            }
        }
    }
}

/// Is g a power of the translation by `tau`, up to sign?
fn in_cyclic_translation_group<T: Real>(g: &MoebiusClass<T>, tau: Complex<T>, tol: T) -> bool {
    let mut a = g.a();
    let mut b = g.b();
    let c = g.c();
    let mut d = g.d();
    if c.norm() > tol {
        return false;
    }
    if (a + d).re < T::zero() {
        a = -a;
        b = -b;
        d = -d;
    }
    let one = Complex::new(T::one(), T::zero());
    if (a - one).norm() > tol || (d - one).norm() > tol {
        return false;
    }
    let ratio = b / tau;
    let k = ratio.re.round();
    ratio.im.abs() <= tol && (ratio.re - k).abs() <= tol
}

/// Scans reduced words up to `word_budget` over `generators`, discarding
/// words lying in ⟨h_generator⟩, and reports the first word whose image of
/// B⁺ = {Im > half_plane_height} meets B⁺. The subgroup generator must be
/// an upper-triangular parabolic z ↦ z + τ.
pub fn precise_invariance_evidence<T: Real>(
    generators: &[MoebiusClass<T>],
    h_generator: &MoebiusClass<T>,
    half_plane_height: T,
    word_budget: usize,
) -> Result<InvarianceEvidence> {
    let tol = T::of(1e-12);
    let mut ha = h_generator.a();
    let mut hb = h_generator.b();
    let hc = h_generator.c();
    let mut hd = h_generator.d();
    if (ha + hd).re < T::zero() {
        ha = -ha;
        hb = -hb;
        hd = -hd;
    }
    let one = Complex::new(T::one(), T::zero());
    if hc.norm() > tol || (ha - one).norm() > tol || (hd - one).norm() > tol || hb.norm() <= tol {
        return Err(Error::NotUpperTriangular);
    }
    if !(half_plane_height > T::zero()) {
        return Err(Error::NonPositiveInput);
    }

    let words = enumerate_reduced_words(generators, word_budget);
    let group_tol = T::of(1e-9);
    let names: Vec<String> = (0..generators.len()).map(|i| format!("g{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    for (idx, node) in words.iter().enumerate() {
        if in_cyclic_translation_group(&node.matrix, hb, group_tol) {
            continue;
        }
        let image = half_plane_image(&node.matrix, half_plane_height);
        if image_meets_upper(&image, half_plane_height) {
            return Ok(InvarianceEvidence::Violation {
                word: word_string(&words, idx, &name_refs),
            });
        }
    }
    Ok(InvarianceEvidence::NoViolationFound)
}
