//! The plumbing existence test: an extension (z, w) lies in the relative
//! deformation space exactly when some integer n has z − nw in the
//! positive slice and z − (n+1)w in the negative one.

use num_complex::Complex;

use super::oracle::{slice_membership, SliceOracle, Verdict};
use super::{min_im_w_bound, SurfaceKind};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Result of the plumbing search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlumbingOutcome {
    /// First n (in ascending order) with both probes In.
    Found { n: i64 },
    /// No n certified, but at least one probe was unresolved.
    Unknown,
    /// Every candidate was definitively rejected.
    Refuted,
}

/// Searches n ∈ [−n_range, n_range] for z − nw in the positive slice and
/// z − (n+1)w in the negative slice (probed through the mirror symmetry as
/// −(z − (n+1)w) in the positive slice). Returns the first success in
/// ascending n.
///
/// Im(w) at or below `min_im_w_bound(kind)` refutes immediately. With the
/// standard oracle the scan is clipped to the integers allowed by the
/// necessity bound Im > 1 on both probes (in torus-slice coordinates);
/// everything outside that window is definitively Out, so the clip never
/// converts a refutation into an unknown.
pub fn plumbing_test<T: Real>(
    z: Complex<T>,
    w: Complex<T>,
    kind: SurfaceKind,
    n_range: i64,
    oracle: &SliceOracle<T>,
) -> Result<PlumbingOutcome> {
    if !(w.im > T::zero()) {
        return Err(Error::LowerHalfPlane);
    }
    if w.im <= min_im_w_bound::<T>(kind) {
        return Ok(PlumbingOutcome::Refuted);
    }

    let (lo, hi) = match oracle {
        SliceOracle::Standard(_) => {
            // Torus-slice coordinates scale by 2 for the sphere.
            let scale = match kind {
                SurfaceKind::PuncturedTorus => T::one(),
                SurfaceKind::FourPuncturedSphere => T::of(2.0),
            };
            let im_z = z.im * scale;
            let im_w = w.im * scale;
            // Probe 1 needs im_z − n·im_w > 1; probe 2 (mirrored) needs
            // (n+1)·im_w − im_z > 1. Expand by one for rounding safety.
            let hi = ((im_z - T::one()) / im_w).floor();
            let lo = ((im_z + T::one()) / im_w - T::one()).ceil();
            let clamp = |x: T| {
                if x >= T::of(9e18) {
                    i64::MAX / 2
                } else if x <= T::of(-9e18) {
                    i64::MIN / 2
                } else {
                    x.to_i64().unwrap_or(0)
                }
            };
            (
                clamp(lo).saturating_sub(1).max(-n_range),
                clamp(hi).saturating_add(1).min(n_range),
            )
        }
        SliceOracle::MockStrip(_) => (-n_range, n_range),
    };

    let mut saw_unknown = false;
    let mut n = lo;
    while n <= hi {
        let nf = Complex::new(T::from_i64(n).expect("n fits the scalar"), T::zero());
        let plus = slice_membership(z - w * nf, kind, oracle);
        let minus_point = -(z - w * (nf + Complex::new(T::one(), T::zero())));
        let minus = slice_membership(minus_point, kind, oracle);
        match (plus.verdict, minus.verdict) {
            (Verdict::In, Verdict::In) => return Ok(PlumbingOutcome::Found { n }),
            (a, b) => {
                if a == Verdict::Unknown || b == Verdict::Unknown {
                    saw_unknown = true;
                }
            }
        }
        n += 1;
    }

    if saw_unknown {
        Ok(PlumbingOutcome::Unknown)
    } else {
        Ok(PlumbingOutcome::Refuted)
    }
}
