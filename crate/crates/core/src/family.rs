//! Generators of the test-function families used by the experiments.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::QError;
use crate::series::{FourierSeries, TaylorSeries};

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 512;

/// Tail tolerance for the geometric expansion of the Möbius test
/// function: the truncation degree is raised until |b|^N < this.
pub const FB_TAIL_TOL: f64 = 1e-12;

const MAX_TRUNCATION: usize = 1 << 20;

/// Declarative description of one family member.
///
/// Serializes as `{"kind": ..., "params": {...}, "N": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub kind: FamilyKind,
    /// Truncation degree; defaults to [`DEFAULT_TRUNCATION`].
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum FamilyKind {
    /// z^k.
    #[serde(rename = "monomial")]
    Monomial { k: usize },
    /// Random polynomial: coefficients i.i.d. uniform on the complex
    /// square [−1,1]², reproducible from the seed.
    #[serde(rename = "polynomial")]
    Polynomial { seed: u64, degree: usize },
    /// Lacunary series Σ_{k=0..K} 2^{−kγ} z^{2^k}.
    #[serde(rename = "lacunary")]
    Lacunary { gamma: f64, #[serde(rename = "K")] levels: u32 },
    /// Möbius test function f_b(z) = (1−|b|²)^{2−2β}(σ_b(z) − b),
    /// expanded as a truncated geometric series.
    #[serde(rename = "fbTest")]
    FbTest { b: [f64; 2], beta: f64 },
    /// Boundary lacunary series Σ_{k=0..K} 2^{−kγ} e^{i 2^k θ}.
    #[serde(rename = "boundaryLacunary")]
    BoundaryLacunary { gamma: f64, #[serde(rename = "K")] levels: u32 },
}

/// Output of a family generator: an analytic series or a boundary series.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyMember {
    Taylor(TaylorSeries),
    Fourier(FourierSeries),
}

impl FamilyMember {
    pub fn as_taylor(&self) -> Result<&TaylorSeries, QError> {
        match self {
            FamilyMember::Taylor(f) => Ok(f),
            FamilyMember::Fourier(_) => {
                Err(QError::domain("expected an analytic series, got a boundary series"))
            }
        }
    }

    pub fn as_fourier(&self) -> Result<&FourierSeries, QError> {
        match self {
            FamilyMember::Fourier(f) => Ok(f),
            FamilyMember::Taylor(_) => {
                Err(QError::domain("expected a boundary series, got an analytic series"))
            }
        }
    }
}

/// Deterministic expansion of a family spec.
pub fn make_family(spec: &FamilySpec) -> Result<FamilyMember, QError> {
    let n = spec.truncation.unwrap_or(DEFAULT_TRUNCATION);
    match spec.kind {
        FamilyKind::Monomial { k } => Ok(FamilyMember::Taylor(TaylorSeries::monomial(k))),
        FamilyKind::Polynomial { seed, degree } => {
            Ok(FamilyMember::Taylor(random_polynomial(seed, degree)))
        }
        FamilyKind::Lacunary { gamma, levels } => {
            let top = 1usize
                .checked_shl(levels)
                .filter(|&t| t.max(n) <= MAX_TRUNCATION)
                .ok_or_else(|| QError::Truncation(format!("lacunary level K={levels} too large")))?;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); top + 1];
            for k in 0..=levels {
                coeffs[1 << k] += Complex64::new(2f64.powf(-(k as f64) * gamma), 0.0);
            }
            Ok(FamilyMember::Taylor(TaylorSeries::new(coeffs)))
        }
        FamilyKind::FbTest { b, beta } => {
            let b = Complex64::new(b[0], b[1]);
            Ok(FamilyMember::Taylor(fb_test_series(b, beta, n)?))
        }
        FamilyKind::BoundaryLacunary { gamma, levels } => {
            if 1usize.checked_shl(levels).map_or(true, |t| t > MAX_TRUNCATION) {
                return Err(QError::Truncation(format!("lacunary level K={levels} too large")));
            }
            let coeffs = (0..=levels)
                .map(|k| (1i64 << k, Complex64::new(2f64.powf(-(k as f64) * gamma), 0.0)))
                .collect();
            Ok(FamilyMember::Fourier(FourierSeries::new(coeffs)))
        }
    }
}

/// Random polynomial with coefficients i.i.d. uniform on [−1,1]².
pub fn random_polynomial(seed: u64, degree: usize) -> TaylorSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=degree)
        .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    TaylorSeries::new(coeffs)
}

/// Coefficients of f_b truncated at degree N (raised until the tail is
/// below [`FB_TAIL_TOL`]): a_0 = 0, a_k = −(1−|b|²)^{3−2β} b̄^{k−1}.
pub fn fb_test_series(b: Complex64, beta: f64, n: usize) -> Result<TaylorSeries, QError> {
    let r = b.norm();
    if r >= 1.0 {
        return Err(QError::domain(format!("fbTest requires |b|<1, got {r}")));
    }
    let n = if r > 0.0 && r.powi(n as i32) >= FB_TAIL_TOL {
        let needed = (FB_TAIL_TOL.ln() / r.ln()).ceil() as usize;
        if needed > MAX_TRUNCATION {
            return Err(QError::Truncation(format!(
                "fbTest tail |b|^N < {FB_TAIL_TOL} needs N={needed} > {MAX_TRUNCATION}"
            )));
        }
        needed
    } else {
        n
    };
    let scale = -(1.0 - r * r).powf(3.0 - 2.0 * beta);
    let bc = b.conj();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Complex64::new(0.0, 0.0));
    let mut pow = Complex64::new(1.0, 0.0);
    for _ in 1..=n {
        coeffs.push(scale * pow);
        pow *= bc;
    }
    Ok(TaylorSeries::new(coeffs))
}

/// Closed-form derivative of f_b: f_b'(z) = −(1−|b|²)^{3−2β}/(1−b̄z)².
///
/// Used where per-sample Horner evaluation of the long truncated series
/// would dominate the quadrature cost; unit tests pin it against the
/// series route.
pub fn fb_test_derivative(b: Complex64, beta: f64, z: Complex64) -> Complex64 {
    let denom = Complex64::new(1.0, 0.0) - b.conj() * z;
    -Complex64::new((1.0 - b.norm_sqr()).powf(3.0 - 2.0 * beta), 0.0) / (denom * denom)
}
