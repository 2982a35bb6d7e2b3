//! Fractional ν-derivative (coefficient and integral forms), the kernel
//! operator T_σ, and the Volterra-type operators T_g, I_g, M_g.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::QError;
use crate::gamma::gamma_ratio2;
use crate::quad::{graded_cells, QuadConfig, RefinedValue};
use crate::series::TaylorSeries;
use crate::spaces::Density;

/// Parameters of the fractional derivative: order ν > 0 and weight
/// parameter b > 1. The induced integer shift is m = ⌈ν−1⌉.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracDerivParams {
    pub nu: f64,
    pub b: f64,
}

impl FracDerivParams {
    pub fn new(nu: f64, b: f64) -> Result<Self, QError> {
        if !(nu > 0.0) {
            return Err(QError::domain(format!("derivative order nu must be positive, got {nu}")));
        }
        if !(b > 1.0) {
            return Err(QError::domain(format!("weight parameter b must exceed 1, got {b}")));
        }
        Ok(FracDerivParams { nu, b })
    }

    /// m = ⌈ν−1⌉; equals ν−1 exactly at positive integer orders.
    pub fn shift(&self) -> usize {
        (self.nu - 1.0).ceil().max(0.0) as usize
    }
}

/// Coefficient form of the ν-derivative:
/// (Σ a_k z^k)^{(ν)} = Σ_j a_{j+m+1} Γ(j+b+ν)Γ(j+m+2)/(Γ(j+1)Γ(j+m+b+1)) z^j.
///
/// Gamma ratios go through log-Gamma differences so large degrees do
/// not overflow. A series of degree < m+1 maps to zero.
pub fn frac_derivative(f: &TaylorSeries, fp: &FracDerivParams) -> TaylorSeries {
    let m = fp.shift();
    if f.degree() < m + 1 {
        return TaylorSeries::zero();
    }
    let n_out = f.degree() - m - 1;
    let coeffs = (0..=n_out)
        .map(|j| {
            let jf = j as f64;
            let mf = m as f64;
            let ratio = gamma_ratio2(
                jf + fp.b + fp.nu,
                jf + mf + 2.0,
                jf + 1.0,
                jf + mf + fp.b + 1.0,
            );
            f.coeff(j + m + 1) * ratio
        })
        .collect();
    TaylorSeries::new(coeffs)
}

/// Integral form of the ν-derivative,
/// f^{(ν)}(z) = (Γ(b+ν)/Γ(b)) ∫ w̄^m f'(w)(1−|w|²)^{b−1}/(1−w̄z)^{b+ν} dA(w),
/// evaluated by quadrature. Serves as an independent oracle for
/// [`frac_derivative`]; the kernel uses the principal power.
pub fn frac_derivative_integral(
    f: &TaylorSeries,
    fp: &FracDerivParams,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<Complex64, QError> {
    if z.norm() >= 1.0 {
        return Err(QError::domain("evaluation point must lie inside the disc"));
    }
    cfg.validate()?;
    let coarse = frac_derivative_integral_raw(f, fp, z, cfg)?;
    let fine = frac_derivative_integral_raw(f, fp, z, &cfg.refined())?;
    // report the fine value; callers compare against the coefficient form
    let _ = coarse;
    Ok(fine)
}

fn frac_derivative_integral_raw(
    f: &TaylorSeries,
    fp: &FracDerivParams,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<Complex64, QError> {
    let m = fp.shift() as i32;
    let deriv = f.derivative();
    let front = gamma_ratio2(fp.b + fp.nu, 1.0, fp.b, 1.0);
    let exponent = -(fp.b + fp.nu);
    let integrand = move |w: Complex64| -> Complex64 {
        let kernel = (Complex64::new(1.0, 0.0) - w.conj() * z).powf(exponent);
        w.conj().powi(m) * deriv.eval(w) * (1.0 - w.norm_sqr()).powf(fp.b - 1.0) * kernel
    };
    let v = disc_integral_complex_raw(&integrand, cfg)?;
    Ok(v * front)
}

/// Complex-valued analogue of the graded polar midpoint rule.
fn disc_integral_complex_raw<W>(w: &W, cfg: &QuadConfig) -> Result<Complex64, QError>
where
    W: Fn(Complex64) -> Complex64 + ?Sized,
{
    let radial = graded_cells(1.0, cfg.levels, cfg.grade, cfg.eps_min);
    let dtheta = TAU / cfg.angles as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for &(s_lo, s_hi) in &radial {
        let r_lo = 1.0 - s_hi;
        let r_hi = 1.0 - s_lo;
        let r_mid = 0.5 * (r_lo + r_hi);
        let cell_mass = (r_hi * r_hi - r_lo * r_lo) * dtheta / TAU;
        let mut ring = Complex64::new(0.0, 0.0);
        for j in 0..cfg.angles {
            let theta = (j as f64 + 0.5) * dtheta;
            let zc = Complex64::from_polar(r_mid, theta);
            let v = w(zc);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(QError::NonFiniteSample {
                    re: zc.re,
                    im: zc.im,
                    what: "complex disc integrand".into(),
                });
            }
            ring += v;
        }
        total += ring * cell_mass;
    }
    Ok(total)
}

/// Kernel operator T_σψ(w) = ∫ (1−|z|²)^{b−1} ψ(z) / |1−z̄w|^{b+σ} dA(z),
/// with the modulus (non-holomorphic) kernel as written.
pub fn t_sigma_apply(
    psi: &Density,
    sigma: f64,
    b: f64,
    w: Complex64,
    cfg: &QuadConfig,
) -> Result<RefinedValue, QError> {
    if !(sigma > 0.0) {
        return Err(QError::domain(format!("sigma must be positive, got {sigma}")));
    }
    if !(b > 1.0) {
        return Err(QError::domain(format!("weight parameter b must exceed 1, got {b}")));
    }
    if w.norm() >= 1.0 {
        return Err(QError::domain("evaluation point must lie inside the disc"));
    }
    cfg.validate()?;
    let coarse = t_sigma_raw(psi, sigma, b, w, cfg)?;
    let fine = t_sigma_raw(psi, sigma, b, w, &cfg.refined())?;
    Ok(RefinedValue::from_pair(coarse, fine))
}

fn t_sigma_raw(
    psi: &Density,
    sigma: f64,
    b: f64,
    w: Complex64,
    cfg: &QuadConfig,
) -> Result<f64, QError> {
    // kernel peak width near the boundary scales like 1−|w|
    let angles = cfg.angles.max((10.0 / (1.0 - w.norm())).ceil() as usize).min(1 << 14);
    crate::quad::disc_integral_raw_with_angles(
        &move |z: Complex64| {
            let denom = (Complex64::new(1.0, 0.0) - z.conj() * w).norm().powf(b + sigma);
            (1.0 - z.norm_sqr()).powf(b - 1.0) * psi.eval(z) / denom
        },
        cfg,
        angles,
    )
}

/// Volterra operator T_g f(z) = ∫₀^z f(w) g'(w) dw.
pub fn volterra_tg(f: &TaylorSeries, g: &TaylorSeries, budget: usize) -> TaylorSeries {
    f.cauchy_product(&g.derivative(), budget).antiderivative()
}

/// Companion operator I_g f(z) = ∫₀^z f'(w) g(w) dw.
pub fn op_ig(f: &TaylorSeries, g: &TaylorSeries, budget: usize) -> TaylorSeries {
    f.derivative().cauchy_product(g, budget).antiderivative()
}

/// Multiplication operator M_g f = g·f; equals
/// f(0)g(0) + I_g f + T_g f exactly on the truncated algebra.
pub fn op_mg(f: &TaylorSeries, g: &TaylorSeries, budget: usize) -> TaylorSeries {
    f.cauchy_product(g, budget)
}
