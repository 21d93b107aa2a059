//! Three-valued Maskit-slice membership with explicit evidence.
//!
//! The true slice boundary is not computable from anything in this crate,
//! so the oracle never invents an answer: `Out` comes from the Im(z) ≤ 1
//! necessity bound or from a certified Jørgensen violation, `In` only from
//! user-supplied certified regions (or the clearly labeled heuristic
//! region), and everything else is `Unknown`.

use std::path::Path;

use num_complex::Complex;

use super::words::{enumerate_reduced_words, word_string};
use super::{sigma_z_torus, Rect, SurfaceKind};
use crate::error::{Error, Result};
use crate::moebius::MoebiusClass;
use crate::scalar::Real;

/// Membership answer for the positive slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    In,
    Out,
    Unknown,
}

/// What produced the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Im(z) ≤ 1 after symmetry reduction (torus-slice coordinates).
    NecessaryBoundViolated,
    /// A word pair certifies non-discreteness.
    JoergensenViolation {
        word_a: String,
        word_b: String,
    },
    /// Strict interior of a user-loaded certified rectangle.
    CertifiedRegion {
        index: usize,
    },
    /// The shipped non-rigorous region (only when explicitly enabled).
    HeuristicRegion,
    None,
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Evidence::NecessaryBoundViolated => write!(f, "necessary_bound_violated"),
            Evidence::JoergensenViolation { word_a, word_b } => {
                write!(f, "joergensen_violation({word_a};{word_b})")
            }
            Evidence::CertifiedRegion { index } => write!(f, "certified_region({index})"),
            Evidence::HeuristicRegion => write!(f, "heuristic_region"),
            Evidence::None => write!(f, "none"),
        }
    }
}

/// Verdict plus the evidence that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl SliceVerdict {
    fn out(evidence: Evidence) -> Self {
        SliceVerdict {
            verdict: Verdict::Out,
            evidence,
        }
    }

    fn in_with(evidence: Evidence) -> Self {
        SliceVerdict {
            verdict: Verdict::In,
            evidence,
        }
    }

    fn unknown() -> Self {
        SliceVerdict {
            verdict: Verdict::Unknown,
            evidence: Evidence::None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::In => write!(f, "In"),
            Verdict::Out => write!(f, "Out"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// A rectangle certified to lie inside the slice by external computation,
/// with its provenance string. Membership is strict-interior.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedRegion<T: Real> {
    pub rect: Rect<T>,
    pub provenance: String,
}

/// Configuration of the standard membership oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig<T: Real> {
    pub regions: Vec<CertifiedRegion<T>>,
    /// Maximum reduced-word length of the Jørgensen scan.
    pub word_budget: usize,
    /// Enables the shipped heuristic region Im(z) > 2 (non-rigorous; its
    /// verdicts are labeled `heuristic_region`).
    pub heuristic_region: bool,
    /// Margin below 1 a Jørgensen sum must clear, and the margin used by
    /// the non-elementarity certificate.
    pub margin: T,
}

impl<T: Real> Default for OracleConfig<T> {
    fn default() -> Self {
        OracleConfig {
            regions: Vec::new(),
            word_budget: 8,
            heuristic_region: false,
            margin: T::of(1e-6),
        }
    }
}

impl<T: Real> OracleConfig<T> {
    /// Parses a certified-region file: one rectangle per line,
    /// `re_min re_max im_min im_max # provenance`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_region_str(text: &str) -> Result<Self> {
        let mut regions = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (data, provenance) = match line.split_once('#') {
                Some((d, p)) => (d.trim(), p.trim().to_string()),
                None => (line, String::new()),
            };
            let fields: Vec<&str> = data.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::RegionFileParse {
                    line: lineno + 1,
                    reason: format!("expected 4 numbers, found {}", fields.len()),
                });
            }
            let mut vals = [T::zero(); 4];
            for (i, f) in fields.iter().enumerate() {
                let v: f64 = f.parse().map_err(|_| Error::RegionFileParse {
                    line: lineno + 1,
                    reason: format!("cannot parse `{f}` as a number"),
                })?;
                vals[i] = T::of(v);
            }
            if vals[0] >= vals[1] || vals[2] >= vals[3] {
                return Err(Error::RegionFileParse {
                    line: lineno + 1,
                    reason: "empty rectangle".to_string(),
                });
            }
            regions.push(CertifiedRegion {
                rect: Rect {
                    re_min: vals[0],
                    re_max: vals[1],
                    im_min: vals[2],
                    im_max: vals[3],
                },
                provenance,
            });
        }
        Ok(OracleConfig {
            regions,
            ..OracleConfig::default()
        })
    }

    pub fn from_region_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::RegionFileParse {
            line: 0,
            reason: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::from_region_str(&text)
    }
}

/// The membership backend: the standard evidence-producing oracle, or a
/// fixture whose positive slice is the half-plane {Im ζ > c} (used to
/// exercise lemma-shaped properties against analytically known geometry).
#[derive(Debug, Clone, PartialEq)]
pub enum SliceOracle<T: Real> {
    Standard(OracleConfig<T>),
    MockStrip(T),
}

impl<T: Real> SliceOracle<T> {
    pub fn standard() -> Self {
        SliceOracle::Standard(OracleConfig::default())
    }
}

/// Folds Re(z) into (−1, 1] using the horizontal period 2 of the slice.
fn fold_re<T: Real>(z: Complex<T>) -> Complex<T> {
    let two = T::of(2.0);
    let k = (z.re / two).round();
    let re = z.re - two * k;
    // Land ties on the +1 side.
    if re <= -T::one() {
        Complex::new(re + two, z.im)
    } else {
        Complex::new(re, z.im)
    }
}

/// |tr²A − 4| + |tr[A, B] − 2|, the Jørgensen sum of an ordered pair.
fn joergensen_sum<T: Real>(a: &MoebiusClass<T>, b: &MoebiusClass<T>) -> T {
    let four = Complex::new(T::of(4.0), T::zero());
    let two = Complex::new(T::of(2.0), T::zero());
    let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
    (a.trace_sq() - four).norm() + (comm.trace() - two).norm()
}

/// Distance from tr²(A) to the real segment [0, 4]: a margin here certifies
/// that A is loxodromic (neither elliptic nor parabolic nor the identity).
fn loxodromic_margin<T: Real>(a: &MoebiusClass<T>) -> T {
    let t2 = a.trace_sq();
    let over = (t2.re - T::of(4.0)).max(T::zero());
    let under = (-t2.re).max(T::zero());
    let d_re = over.max(under);
    (d_re * d_re + t2.im * t2.im).sqrt()
}

/// Conservative non-elementarity certificate for ⟨A, B⟩: A loxodromic with
/// margin, no shared fixed point (tr[A,B] bounded away from 2), and B does
/// not swap the fixed points of A (BAB⁻¹ bounded away from A⁻¹).
fn certified_nonelementary<T: Real>(a: &MoebiusClass<T>, b: &MoebiusClass<T>, margin: T) -> bool {
    if loxodromic_margin(a) < margin {
        return false;
    }
    let two = Complex::new(T::of(2.0), T::zero());
    let comm = a.compose(b).compose(&a.inverse()).compose(&b.inverse());
    if (comm.trace() - two).norm() < margin {
        return false;
    }
    let swapped = b.compose(a).compose(&b.inverse());
    let scale = T::one() + a.sup_norm();
    swapped.class_distance(&a.inverse()) >= margin * scale
}

/// Jørgensen scan over the reduced words of σ_z up to the word budget,
/// pairing each word with each of the two generators (both orders). A
/// violation by a certified non-elementary pair proves non-discreteness,
/// hence z outside the slice; finding nothing proves nothing.
fn joergensen_scan<T: Real>(z: Complex<T>, cfg: &OracleConfig<T>) -> Option<Evidence> {
    let rep = sigma_z_torus(z);
    let gens = [rep.gen_a, rep.gen_b];
    let names = ["a", "b"];
    let threshold = T::one() - cfg.margin;
    let words = enumerate_reduced_words(&gens, cfg.word_budget);
    for (idx, node) in words.iter().enumerate() {
        for (gi, g) in gens.iter().enumerate() {
            // Pair orders matter: the sum uses tr² of the first element.
            let candidates = [(&node.matrix, g, true), (g, &node.matrix, false)];
            for (first, second, word_first) in candidates {
                if joergensen_sum(first, second) < threshold
                    && certified_nonelementary(first, second, cfg.margin)
                {
                    let w = word_string(&words, idx, &names);
                    let gname = names[gi].to_string();
                    let (word_a, word_b) = if word_first { (w, gname) } else { (gname, w) };
                    return Some(Evidence::JoergensenViolation { word_a, word_b });
                }
            }
        }
    }
    None
}

/// Three-valued membership of z in the positive slice of the given
/// surface. Sphere queries reduce through z ↦ 2z to the torus slice;
/// torus queries are first reduced by the horizontal period 2. The mirror
/// symmetry (ζ in the negative slice iff −ζ in the positive one) is left
/// to callers such as the plumbing test.
pub fn slice_membership<T: Real>(
    z: Complex<T>,
    kind: SurfaceKind,
    oracle: &SliceOracle<T>,
) -> SliceVerdict {
    let zt = match kind {
        SurfaceKind::PuncturedTorus => z,
        SurfaceKind::FourPuncturedSphere => z * Complex::new(T::of(2.0), T::zero()),
    };
    let zr = fold_re(zt);

    match oracle {
        SliceOracle::MockStrip(c) => {
            if zr.im > *c {
                SliceVerdict::in_with(Evidence::HeuristicRegion)
            } else {
                SliceVerdict::out(Evidence::None)
            }
        }
        SliceOracle::Standard(cfg) => {
            if zr.im <= T::one() {
                return SliceVerdict::out(Evidence::NecessaryBoundViolated);
            }
            if let Some(evidence) = joergensen_scan(zr, cfg) {
                return SliceVerdict::out(evidence);
            }
            for (index, region) in cfg.regions.iter().enumerate() {
                if region.rect.contains_strict(zt) || region.rect.contains_strict(zr) {
                    return SliceVerdict::in_with(Evidence::CertifiedRegion { index });
                }
            }
            if cfg.heuristic_region && zr.im > T::of(2.0) {
                return SliceVerdict::in_with(Evidence::HeuristicRegion);
            }
            SliceVerdict::unknown()
        }
    }
}
