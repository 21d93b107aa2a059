//! Quantitative tooling for hyperbolic Dehn filling and the Maskit slice:
//! cusp shape invariants, rigorous complex-length enclosures for the
//! filled core curve, the cone-deformation bound envelopes those
//! enclosures come from, and the slice-coordinate machinery (explicit
//! representation families, three-valued membership, plumbing, separation
//! estimates).
//!
//! Everything is generic over the floating scalar through [`Real`];
//! concrete `f64` aliases live at the crate root. All values are
//! immutable and all operations are pure functions, so the API is safe to
//! share across threads.

// Preconditions are written as `!(x > 0)` so that NaN input lands on the
// error path; the positive comparison would silently accept it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cusp;
pub mod envelope;
pub mod error;
pub mod ext;
pub mod filling;
pub mod interval;
pub mod moebius;
pub mod scalar;
pub mod slice;

pub use cusp::{shape_from_w, shortest_longitude, twist_from_marking, CuspShape, FlatTorusMarking};
pub use envelope::{
    coefficient_bounds, du_dt_z_bounds, dv_dalpha_bound, envelope_trace, feasibility_disc, h,
    h_inverse, h_max, standard_form_matrices, CoefficientBounds, ConeEnvelope, FeasibilityDisc,
};
pub use error::{Error, Result};
pub use ext::ExtendedReal;
pub use filling::{
    drilled_normalized_length, estimate_filling, fill_length_center_error, fill_length_interval,
    fill_theta_interval, multi_fill_plan, tube_boundary_area, FillingEstimate, MultiFillPlan,
};
pub use interval::Interval;
pub use moebius::{complex_length, normalize_cusp, ComplexLength, IsometryKind, MoebiusClass};
pub use scalar::{l_sq_floor, proximity_norm_floor, Real};
pub use slice::{
    box_separation_check, component_separation_threshold, min_im_w_bound, plumbing_test,
    precise_invariance_evidence, q1_r1_proximity_predicate, shape_proximity_check, sigma_z_sphere,
    sigma_z_torus, slice_membership, BoxDecomposition, BoxSeparation, CertifiedRegion, Evidence,
    InvarianceEvidence, MarkedRepresentation, OracleConfig, PlumbingOutcome, ProximityOutcome,
    Rect, SliceOracle, SliceVerdict, SurfaceKind, Verdict,
};

/// `f64` aliases for the main domain types.
pub type Moebius64 = MoebiusClass<f64>;
pub type ComplexLength64 = ComplexLength<f64>;
pub type CuspShape64 = CuspShape<f64>;
pub type Interval64 = Interval<f64>;
pub type FillingEstimate64 = FillingEstimate<f64>;
pub type MultiFillPlan64 = MultiFillPlan<f64>;
pub type ConeEnvelope64 = ConeEnvelope<f64>;
pub type ExtendedReal64 = ExtendedReal<f64>;
pub type OracleConfig64 = OracleConfig<f64>;
pub type SliceOracle64 = SliceOracle<f64>;
pub type BoxDecomposition64 = BoxDecomposition<f64>;
