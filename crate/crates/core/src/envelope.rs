//! Cone-deformation bound machinery: the tube-area function h and its
//! inverse, derivative-coefficient bounds, the boundary-pairing feasibility
//! disc, guaranteed envelopes for u(t), l(t), R(t), v(t) over t = α² in
//! [0, (2π)²], and the standard-form frame matrices.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::ext::ExtendedReal;
use crate::interval::Interval;
use crate::scalar::{l_sq_floor, Real};

/// Coefficient of h(r) = H_COEFF · tanh(r)/cosh(2r). Approximates
/// 2√6·sinh⁻¹(1/(2√2)); the multi-cusp normalization is half of the
/// closed-manifold one, whose coefficient is `Z_COEFF`.
pub const H_COEFF: f64 = 1.69785;

/// Coefficient appearing in the z-substituted du/dt bounds (= 2·H_COEFF,
/// kept verbatim as displayed rather than derived).
pub const Z_COEFF: f64 = 3.3956;

/// h(r) = 1.69785·tanh(r)/cosh(2r): the lower bound for α·l at which a
/// tube of radius r can still be embedded.
pub fn h<T: Real>(r: T) -> Result<T> {
    if r < T::zero() {
        return Err(Error::NegativeRadius);
    }
    Ok(T::of(H_COEFF) * r.tanh() / (T::of(2.0) * r).cosh())
}

/// Location and value of the maximum of h: (r ≈ 0.531, h ≈ 0.5098),
/// computed by bisecting the sign change of h′.
pub fn h_max<T: Real>() -> (T, T) {
    // h' ∝ sech²(r)cosh(2r) − 2 tanh(r) sinh(2r); positive near 0,
    // negative past the maximum.
    let dh_sign = |r: T| -> T {
        let sech_sq = T::one() / (r.cosh() * r.cosh());
        sech_sq * (T::of(2.0) * r).cosh() - T::of(2.0) * r.tanh() * (T::of(2.0) * r).sinh()
    };
    let mut lo = T::of(0.1);
    let mut hi = T::of(1.5);
    for _ in 0..200 {
        let mid = (lo + hi) / T::of(2.0);
        if dh_sign(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::epsilon() * T::of(4.0) {
            break;
        }
    }
    let r = (lo + hi) / T::of(2.0);
    (r, h(r).expect("r > 0"))
}

/// Inverse of h on its decreasing branch: the unique r ≥ 0.531 with
/// h(r) = a, for 0 ≤ a ≤ h_max; h⁻¹(0) = ∞.
pub fn h_inverse<T: Real>(a: T) -> Result<ExtendedReal<T>> {
    let (r_peak, peak) = h_max::<T>();
    // Tiny slack so that h_inverse(h_max()) is in range despite rounding.
    if a < T::zero() || a > peak * (T::one() + T::of(16.0) * T::epsilon()) {
        return Err(Error::OutOfRange);
    }
    if a == T::zero() {
        return Ok(ExtendedReal::Infinite);
    }
    let a = a.min(peak);
    let mut lo = r_peak;
    let mut hi = r_peak + T::one();
    let mut guard = 0;
    while h(hi)? >= a {
        hi = hi + hi;
        guard += 1;
        assert!(
            guard < 64,
            "h decays exponentially; inverse search diverged"
        );
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::of(2.0);
        if h(mid)? > a {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::of(1e-12).max(T::epsilon() * hi) {
            break;
        }
    }
    Ok(ExtendedReal::Finite((lo + hi) / T::of(2.0)))
}

/// Bounds on the derivative coefficients at tube radius R:
/// 4α²x ∈ [−(2sinh²R+1)/(sinh²R(2sinh²R+3)), 1/sinh²R] and
/// |4α²y| ≤ 2cosh²R/(sinh²R(2cosh²R+1)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientBounds<T: Real> {
    pub radius: T,
    pub x_interval: Interval<T>,
    pub y_abs_upper: T,
}

pub fn coefficient_bounds<T: Real>(radius: T) -> Result<CoefficientBounds<T>> {
    if !(radius > T::zero()) {
        return Err(Error::NonPositiveRadius);
    }
    let sh2 = radius.sinh() * radius.sinh();
    let ch2 = radius.cosh() * radius.cosh();
    let one = T::one();
    let two = T::of(2.0);
    let three = T::of(3.0);
    let lo = -(two * sh2 + one) / (sh2 * (two * sh2 + three));
    let hi = one / sh2;
    let y = two * ch2 / (sh2 * (two * ch2 + one));
    Ok(CoefficientBounds {
        radius,
        x_interval: Interval::new(lo, hi),
        y_abs_upper: y,
    })
}

/// Boundary-pairing coefficients (a_R, b_R, c_R) of the quadratic
/// a_R(x² + y²) + b_R x + c_R ≥ 0 at tube radius R and cone angle α.
pub fn boundary_pairing_coefficients<T: Real>(radius: T, alpha: T) -> Result<(T, T, T)> {
    if !(radius > T::zero()) || !(alpha > T::zero()) {
        return Err(Error::NonPositiveInput);
    }
    let th = radius.tanh();
    let sh2 = radius.sinh() * radius.sinh();
    let ch2 = radius.cosh() * radius.cosh();
    let a2 = alpha * alpha;
    let one = T::one();
    let two = T::of(2.0);
    let a_r = -th * (two * ch2 + one) / ch2;
    let b_r = th / (two * a2 * ch2 * sh2);
    let c_r = (th + th * th * th) / (T::of(16.0) * a2 * a2 * sh2 * sh2);
    Ok((a_r, b_r, c_r))
}

/// The feasibility disc for (x, y): since a_R < 0, the nonnegativity of the
/// boundary pairing confines (x, y) to the disc
/// (x + b_R/(2a_R))² + y² ≤ (b_R² − 4a_R c_R)/(4a_R²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityDisc<T: Real> {
    pub center_x: T,
    pub radius: T,
}

pub fn feasibility_disc<T: Real>(radius: T, alpha: T) -> Result<FeasibilityDisc<T>> {
    let (a_r, b_r, c_r) = boundary_pairing_coefficients(radius, alpha)?;
    let center_x = -b_r / (T::of(2.0) * a_r);
    let disc_sq = (b_r * b_r - T::of(4.0) * a_r * c_r) / (T::of(4.0) * a_r * a_r);
    Ok(FeasibilityDisc {
        center_x,
        radius: disc_sq.max(T::zero()).sqrt(),
    })
}

/// The du/dt enclosure after the substitution z = tanh(h⁻¹(αl)):
/// −(1+z²)/(3.3956 z³) ≤ du/dt ≤ (1+z²)²/(3.3956 z³(3−z²)), 0.48 ≤ z ≤ 1.
pub fn du_dt_z_bounds<T: Real>(z: T) -> Result<Interval<T>> {
    if z < T::of(0.48) || z > T::one() {
        return Err(Error::OutOfRange);
    }
    let coeff = T::of(Z_COEFF);
    let z2 = z * z;
    let z3 = z2 * z;
    let one = T::one();
    let lo = -(one + z2) / (coeff * z3);
    let hi = (one + z2) * (one + z2) / (coeff * z3 * (T::of(3.0) - z2));
    Ok(Interval::new(lo, hi))
}

/// The z-dependent factor of the dv/dα estimate, with the common (1−z²)
/// terms cancelled: 2(1+z²)/(1.69785·z·(3z² − z⁴)). Decreasing on
/// [0.48, 1]; its value at 0.48 (≈ 4.73191) is rounded up to 5 in the
/// envelope bound.
pub fn dv_z_factor<T: Real>(z: T) -> Result<T> {
    if z < T::of(0.48) || z > T::one() {
        return Err(Error::OutOfRange);
    }
    let z2 = z * z;
    Ok(T::of(2.0) * (T::one() + z2) / (T::of(H_COEFF) * z * (T::of(3.0) * z2 - z2 * z2)))
}

/// Uniform bound on |dv/dα| for the normalized-twist drift:
/// 5(2π)/(L² − 4(2π)²)², valid for L² ≥ 8(2π)².
pub fn dv_dalpha_bound<T: Real>(l_sq: T) -> Result<T> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    let denom = l_sq - T::of(4.0) * T::two_pi_sq();
    Ok(T::of(5.0) * T::two_pi() / (denom * denom))
}

/// One sampled row of the cone-deformation envelope at parameter t = α².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeRow<T: Real> {
    pub t: T,
    pub alpha: T,
    /// u = α/l stays within [L² − 4t, L² + 4t] (|du/dt| ≤ 4, u → L²).
    pub u: Interval<T>,
    /// Core length: [α/(L² + 4t), α/(L² − 4t)].
    pub l: Interval<T>,
    /// αl ≤ t/(L² − 4t), below h_max throughout when L² ≥ 8(2π)².
    pub alpha_l_upper: T,
    /// Guaranteed tube radius h⁻¹(αl upper); ∞ at t = 0.
    pub r_lower: ExtendedReal<T>,
    /// Accumulated twist-rate drift bound 5(2π)t/(L² − 4(2π)²)².
    pub v_drift: T,
}

/// Guaranteed envelopes sampled on a uniform grid over t ∈ [0, (2π)²].
#[derive(Debug, Clone, PartialEq)]
pub struct ConeEnvelope<T: Real> {
    pub l_sq: T,
    pub steps: usize,
    pub rows: Vec<EnvelopeRow<T>>,
}

impl<T: Real> ConeEnvelope<T> {
    pub fn final_row(&self) -> &EnvelopeRow<T> {
        self.rows.last().expect("at least 3 rows")
    }

    /// CSV serialization: header plus one row per sample, 17 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,alpha,u_lo,u_hi,l_lo,l_hi,alpha_l_max,R_min,v_drift\n");
        for row in &self.rows {
            let r_min = row.r_lower.to_float();
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                row.t,
                row.alpha,
                row.u.lo(),
                row.u.hi(),
                row.l.lo(),
                row.l.hi(),
                row.alpha_l_upper,
                r_min,
                row.v_drift,
            ));
        }
        out
    }
}

fn envelope_row<T: Real>(l_sq: T, t: T, v_drift: T) -> EnvelopeRow<T> {
    let four = T::of(4.0);
    let alpha = t.sqrt();
    let u = Interval::new(l_sq - four * t, l_sq + four * t);
    let l = Interval::new(alpha / (l_sq + four * t), alpha / (l_sq - four * t));
    let alpha_l_upper = t / (l_sq - four * t);
    let r_lower = h_inverse(alpha_l_upper).expect("alpha*l stays below h_max");
    EnvelopeRow {
        t,
        alpha,
        u,
        l,
        alpha_l_upper,
        r_lower,
        v_drift,
    }
}

/// Closed-form envelope trace with `steps` uniform intervals (steps + 1
/// rows) over t ∈ [0, (2π)²]. The final row reproduces the filling
/// estimates: its l interval is `fill_length_interval(L²)` and its v-drift
/// equals the `fill_theta_interval` radius.
pub fn envelope_trace<T: Real>(l_sq: T, steps: usize) -> Result<ConeEnvelope<T>> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    if steps < 2 {
        return Err(Error::TooFewSteps);
    }
    let t_max = T::two_pi_sq();
    let dv = dv_dalpha_bound(l_sq)?;
    let nf = T::from_usize(steps).expect("step count fits the scalar");
    let rows = (0..=steps)
        .map(|i| {
            let frac = T::from_usize(i).unwrap() / nf;
            let t = t_max * frac;
            envelope_row(l_sq, t, dv * t)
        })
        .collect();
    Ok(ConeEnvelope { l_sq, steps, rows })
}

/// Independent re-derivation of the envelopes by stepping the constant
/// derivative bounds forward (u widens by 4Δt per step, the v-drift
/// accumulates linearly) instead of evaluating the integrated closed
/// forms. Must agree with `envelope_trace` to rounding.
pub fn envelope_trace_stepped<T: Real>(l_sq: T, steps: usize) -> Result<ConeEnvelope<T>> {
    if l_sq < l_sq_floor() {
        return Err(Error::NormalizedLengthTooShort);
    }
    if steps < 2 {
        return Err(Error::TooFewSteps);
    }
    let t_max = T::two_pi_sq();
    let dv = dv_dalpha_bound(l_sq)?;
    let nf = T::from_usize(steps).expect("step count fits the scalar");
    let dt = t_max / nf;
    let four = T::of(4.0);

    let mut rows = Vec::with_capacity(steps + 1);
    let mut u_lo = l_sq;
    let mut u_hi = l_sq;
    let mut v_drift = T::zero();
    let mut t = T::zero();
    for i in 0..=steps {
        if i > 0 {
            u_lo -= four * dt;
            u_hi += four * dt;
            v_drift += dv * dt;
            t += dt;
        }
        let alpha = t.sqrt();
        let l = Interval::new(alpha / u_hi, alpha / u_lo);
        let alpha_l_upper = t / u_lo;
        let r_lower = h_inverse(alpha_l_upper)?;
        rows.push(EnvelopeRow {
            t,
            alpha,
            u: Interval::new(u_lo, u_hi),
            l,
            alpha_l_upper,
            r_lower,
            v_drift,
        });
    }
    Ok(ConeEnvelope { l_sq, steps, rows })
}

/// 3×3 complex matrix in the orthonormal frame
/// (∂/∂r, sinh⁻¹(r)∂/∂θ, cosh⁻¹(r)∂/∂z) around the singular locus.
pub type Matrix3<T> = [[Complex<T>; 3]; 3];

pub fn matrix3_trace<T: Real>(m: &Matrix3<T>) -> Complex<T> {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn matrix3_is_symmetric<T: Real>(m: &Matrix3<T>, tol: T) -> bool {
    (0..3).all(|i| (0..3).all(|j| (m[i][j] - m[j][i]).norm() <= tol))
}

/// The standard-form frame matrices (ω_m, ω_l) at radius r from the
/// singular locus; both are symmetric and traceless.
pub fn standard_form_matrices<T: Real>(r: T) -> Result<(Matrix3<T>, Matrix3<T>)> {
    if !(r > T::zero()) {
        return Err(Error::NonPositiveRadius);
    }
    let zero = Complex::new(T::zero(), T::zero());
    let re = |x: T| Complex::new(x, T::zero());
    let im = |x: T| Complex::new(T::zero(), x);
    let ch = r.cosh();
    let sh = r.sinh();
    let one = T::one();

    let omega_m = [
        [re(-one / (ch * ch * sh * sh)), zero, zero],
        [zero, re(one / (sh * sh)), im(-one / (ch * sh))],
        [zero, im(-one / (ch * sh)), re(-one / (ch * ch))],
    ];
    let omega_l = [
        [re(-one / (ch * ch)), zero, zero],
        [zero, re(-one), im(-sh / ch)],
        [zero, im(-sh / ch), re((ch * ch + one) / (ch * ch))],
    ];
    Ok((omega_m, omega_l))
}
