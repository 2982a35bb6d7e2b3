//! Quadrature engines for singular boundary weights.
//!
//! Disc integrals use a midpoint product rule on a polar mesh whose
//! radial cells are geometrically graded toward |z| = 1, where every
//! weight of interest concentrates. Circle double integrals use offset
//! midpoint grids so the diagonal singularity is never sampled. Each
//! public engine reports a refinement delta: the relative change when
//! the mesh is refined once by `refine_factor`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::QError;
use crate::geometry::Arc;

/// Mesh configuration shared by every quadrature engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    /// Radial subdivisions per graded band.
    pub levels: usize,
    /// Angular cell count for a full circle.
    pub angles: usize,
    /// Geometric grading ratio of the boundary bands.
    pub grade: f64,
    /// Smallest resolved distance 1−r.
    pub eps_min: f64,
    /// Mesh multiplier used by one refinement step.
    pub refine_factor: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            levels: 8,
            angles: 64,
            grade: 0.5,
            eps_min: 1e-6,
            refine_factor: 2,
        }
    }
}

impl QuadConfig {
    /// Coarse configuration for experiment sweeps where per-row accuracy
    /// of a percent or so is sufficient.
    pub fn coarse() -> Self {
        QuadConfig {
            levels: 4,
            angles: 32,
            grade: 0.5,
            eps_min: 1e-5,
            refine_factor: 2,
        }
    }

    /// The configuration one refinement step finer.
    pub fn refined(&self) -> Self {
        QuadConfig {
            levels: self.levels * self.refine_factor,
            angles: self.angles * self.refine_factor,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<(), QError> {
        if self.levels < 1 || self.angles < 1 {
            return Err(QError::domain("quadrature mesh needs at least one cell per direction"));
        }
        if !(self.grade > 0.0 && self.grade < 1.0) {
            return Err(QError::domain(format!("grade ratio must lie in (0,1), got {}", self.grade)));
        }
        if !(self.eps_min > 0.0 && self.eps_min < 1.0) {
            return Err(QError::domain(format!("eps_min must lie in (0,1), got {}", self.eps_min)));
        }
        if self.refine_factor < 2 {
            return Err(QError::domain("refine factor must be at least 2"));
        }
        Ok(())
    }
}

/// A quadrature value together with its relative change under one
/// refinement step. A value is "converged at τ" iff the delta is ≤ τ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RefinedValue {
    pub value: f64,
    pub refinement_delta: f64,
}

impl RefinedValue {
    pub fn from_pair(coarse: f64, fine: f64) -> Self {
        let denom = fine.abs().max(coarse.abs());
        let delta = if denom == 0.0 { 0.0 } else { (fine - coarse).abs() / denom };
        RefinedValue { value: fine, refinement_delta: delta }
    }

    pub fn exact(value: f64) -> Self {
        RefinedValue { value, refinement_delta: 0.0 }
    }

    pub fn converged(&self, tol: f64) -> bool {
        self.refinement_delta <= tol
    }
}

/// Geometrically graded cell edges over (0, depth], refined toward 0.
///
/// Returns (lo, hi) pairs in the graded variable, in decreasing order of
/// magnitude, each band split into `levels` equal cells; the innermost
/// sliver [0, eps] is kept as `levels` cells so constants integrate
/// exactly.
pub fn graded_cells(depth: f64, levels: usize, grade: f64, eps_min: f64) -> Vec<(f64, f64)> {
    let mut edges = vec![depth];
    let mut s = depth;
    while s > eps_min {
        s = (s * grade).max(eps_min.min(depth));
        edges.push(s);
    }
    edges.push(0.0);
    let mut cells = Vec::new();
    for w in edges.windows(2) {
        let (hi, lo) = (w[0], w[1]);
        let h = (hi - lo) / levels as f64;
        for i in 0..levels {
            let a = hi - (i as f64 + 1.0) * h;
            let b = hi - i as f64 * h;
            cells.push((a, b));
        }
    }
    cells
}

fn check_finite(v: f64, z: Complex64, what: &str) -> Result<f64, QError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QError::NonFiniteSample { re: z.re, im: z.im, what: what.to_string() })
    }
}

/// Midpoint product rule over the polar box {1−depth ≤ |z| < 1} ×
/// angular span, against normalized area measure (A(𝔻) = 1).
///
/// `angles` is the angular cell count used for the given span.
fn polar_sum<W>(
    w: &W,
    depth: f64,
    theta_start: f64,
    theta_len: f64,
    angles: usize,
    levels: usize,
    grade: f64,
    eps_min: f64,
) -> Result<f64, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    let radial = graded_cells(depth, levels, grade, eps_min);
    let dtheta = theta_len / angles as f64;
    let mut total = 0.0;
    for &(s_lo, s_hi) in &radial {
        // s = 1−r, so the cell radii are [1−s_hi, 1−s_lo].
        let r_lo = 1.0 - s_hi;
        let r_hi = 1.0 - s_lo;
        let r_mid = 0.5 * (r_lo + r_hi);
        // exact radial mass of 2r dr over the cell, times the angular fraction
        let cell_mass = (r_hi * r_hi - r_lo * r_lo) * dtheta / TAU;
        let mut ring = 0.0;
        for j in 0..angles {
            let theta = theta_start + (j as f64 + 0.5) * dtheta;
            let z = Complex64::from_polar(r_mid, theta);
            ring += check_finite(w(z), z, "disc integrand")?;
        }
        total += ring * cell_mass;
    }
    Ok(total)
}

/// Single-mesh disc integral ∫_𝔻 w dA (no refinement step).
pub fn disc_integral_raw<W>(w: &W, cfg: &QuadConfig) -> Result<f64, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    polar_sum(w, 1.0, 0.0, TAU, cfg.angles, cfg.levels, cfg.grade, cfg.eps_min)
}

/// Disc integral with refinement delta.
pub fn disc_integral<W>(w: &W, cfg: &QuadConfig) -> Result<RefinedValue, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    cfg.validate()?;
    let coarse = disc_integral_raw(w, cfg)?;
    let fine = disc_integral_raw(w, &cfg.refined())?;
    Ok(RefinedValue::from_pair(coarse, fine))
}

/// Angular cell count used for an arc of normalized length, keeping the
/// full-circle angular density.
fn arc_angles(cfg_angles: usize, norm_length: f64) -> usize {
    ((cfg_angles as f64 * norm_length).ceil() as usize).max(8)
}

/// Single-mesh integral over the Carleson box S(I).
pub fn disc_integral_box_raw<W>(w: &W, arc: &Arc, cfg: &QuadConfig) -> Result<f64, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    let (start, _) = arc.angular_span();
    polar_sum(
        w,
        arc.norm_length,
        start,
        arc.arclength(),
        arc_angles(cfg.angles, arc.norm_length),
        cfg.levels,
        cfg.grade,
        cfg.eps_min,
    )
}

/// Carleson-box integral with refinement delta.
pub fn disc_integral_box<W>(w: &W, arc: &Arc, cfg: &QuadConfig) -> Result<RefinedValue, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    cfg.validate()?;
    let coarse = disc_integral_box_raw(w, arc, cfg)?;
    let fine = disc_integral_box_raw(w, arc, &cfg.refined())?;
    Ok(RefinedValue::from_pair(coarse, fine))
}

/// Single-mesh disc integral with an explicit angular cell count,
/// for kernels whose angular scale is known to the caller (Möbius-type
/// kernels concentrated near a boundary point).
pub fn disc_integral_raw_with_angles<W>(
    w: &W,
    cfg: &QuadConfig,
    angles: usize,
) -> Result<f64, QError>
where
    W: Fn(Complex64) -> f64 + ?Sized,
{
    polar_sum(w, 1.0, 0.0, TAU, angles, cfg.levels, cfg.grade, cfg.eps_min)
}

/// Double circle integral ∫∫ K(s,t) ds dt over an arc × itself, raw
/// angles, on two grids offset by half a cell so s ≠ t at every sample.
pub fn circle_double_integral_arc_raw<K>(k: &K, arc: &Arc, cfg: &QuadConfig) -> Result<f64, QError>
where
    K: Fn(f64, f64) -> f64 + ?Sized,
{
    let len = arc.arclength();
    let m = arc_angles(cfg.angles.max(16), arc.norm_length).max(16);
    let h = len / m as f64;
    let (start, _) = arc.angular_span();
    let mut total = 0.0;
    for i in 0..m {
        let s = start + (i as f64 + 0.75) * h;
        let mut row = 0.0;
        for j in 0..m {
            let t = start + (j as f64 + 0.25) * h;
            let v = k(s, t);
            if !v.is_finite() {
                return Err(QError::NonFiniteSample { re: s, im: t, what: "circle kernel".into() });
            }
            row += v;
        }
        total += row * h * h;
    }
    Ok(total)
}

/// Full-circle double integral with refinement delta.
pub fn circle_double_integral<K>(k: &K, cfg: &QuadConfig) -> Result<RefinedValue, QError>
where
    K: Fn(f64, f64) -> f64 + ?Sized,
{
    cfg.validate()?;
    let arc = Arc::full_circle();
    let coarse = circle_double_integral_arc_raw(k, &arc, cfg)?;
    let fine = circle_double_integral_arc_raw(k, &arc, &cfg.refined())?;
    Ok(RefinedValue::from_pair(coarse, fine))
}

/// Dyadic arc grid for supremum search: uniform centers × lengths 2^{−k}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcGrid {
    pub centers: usize,
    pub k_max: u32,
}

impl Default for ArcGrid {
    fn default() -> Self {
        ArcGrid { centers: 128, k_max: 10 }
    }
}

impl ArcGrid {
    pub fn new(centers: usize, k_max: u32) -> Self {
        ArcGrid { centers, k_max }
    }

    /// Reduced grid for experiment sweeps.
    pub fn coarse() -> Self {
        ArcGrid { centers: 32, k_max: 6 }
    }

    /// All grid arcs, full circle first (listed once), then shorter
    /// dyadic lengths at every center.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(1 + self.k_max as usize * self.centers);
        out.push(Arc::full_circle());
        for k in 1..=self.k_max {
            let len = 0.5f64.powi(k as i32);
            for c in 0..self.centers {
                let center = TAU * c as f64 / self.centers as f64;
                out.push(Arc { center, norm_length: len });
            }
        }
        out
    }
}

/// One row of a supremum table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcValue {
    pub center: f64,
    pub norm_length: f64,
    pub value: f64,
}

/// Result of a grid supremum: the max, the maximizing arc and the full
/// table. A grid supremum is a lower bound for the true supremum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub value: f64,
    pub witness: Arc,
    pub table: Vec<ArcValue>,
}

/// Evaluate `h` on every grid arc and report the maximum.
pub fn sup_over_arcs<H>(h: &H, grid: &ArcGrid) -> Result<SupResult, QError>
where
    H: Fn(&Arc) -> Result<f64, QError> + ?Sized,
{
    let arcs = grid.arcs();
    let mut table = Vec::with_capacity(arcs.len());
    let mut best = f64::NEG_INFINITY;
    let mut witness = arcs[0];
    for arc in &arcs {
        let v = h(arc)?;
        if !v.is_finite() {
            return Err(QError::NonFiniteSample { re: arc.center, im: arc.norm_length, what: "arc functional".into() });
        }
        table.push(ArcValue { center: arc.center, norm_length: arc.norm_length, value: v });
        if v > best {
            best = v;
            witness = *arc;
        }
    }
    Ok(SupResult { value: best, witness, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn unit_density_has_unit_mass() {
        let cfg = QuadConfig::default();
        let v = disc_integral(&|_z| 1.0, &cfg).unwrap();
        assert_relative_eq!(v.value, 1.0, epsilon = 1e-6);
        assert!(v.converged(1e-9));
    }

    #[test]
    fn radial_weight_closed_form() {
        // ∫ (1−|z|²)^a dA = 1/(1+a)
        let cfg = QuadConfig::default();
        for &a in &[0.5f64, -0.3, 2.0] {
            let v = disc_integral(&|z: Complex64| (1.0 - z.norm_sqr()).powf(a), &cfg).unwrap();
            assert_relative_eq!(v.value, 1.0 / (1.0 + a), max_relative = 1e-3);
        }
    }

    #[test]
    fn box_is_disc_for_full_arc() {
        let cfg = QuadConfig::default();
        let v = disc_integral_box(&|_z| 1.0, &Arc::full_circle(), &cfg).unwrap();
        assert_relative_eq!(v.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn box_area_closed_form() {
        // area of S(I) under normalized dA is |I|²(2−|I|)
        let cfg = QuadConfig::default();
        let arc = Arc::new(1.0, 0.25).unwrap();
        let v = disc_integral_box(&|_z| 1.0, &arc, &cfg).unwrap();
        assert_relative_eq!(v.value, 0.109375, max_relative = 1e-3);
    }

    #[test]
    fn box_radial_weight_full_arc() {
        let cfg = QuadConfig::default();
        let v = disc_integral_box(
            &|z: Complex64| (1.0 - z.norm_sqr()).powf(0.2),
            &Arc::full_circle(),
            &cfg,
        )
        .unwrap();
        assert_relative_eq!(v.value, 1.0 / 1.2, max_relative = 1e-3);
    }

    #[test]
    fn non_finite_sample_is_reported() {
        let cfg = QuadConfig::default();
        let err = disc_integral(&|z: Complex64| 1.0 / (z.norm() - z.norm()), &cfg).unwrap_err();
        assert!(matches!(err, QError::NonFiniteSample { .. }));
    }

    #[test]
    fn circle_double_constant_kernel_exact() {
        let cfg = QuadConfig::default();
        let v = circle_double_integral(&|_s, _t| 1.0, &cfg).unwrap();
        assert_relative_eq!(v.value, TAU * TAU, epsilon = 1e-6);
    }

    #[test]
    fn circle_double_zero_kernel() {
        let cfg = QuadConfig::default();
        let v = circle_double_integral(&|_s, _t| 0.0, &cfg).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn circle_double_chord_power_kernel() {
        // ∫∫ |e^{is}−e^{it}|^q = (2π)² Γ(q+1)/Γ(q/2+1)², a Wallis-type
        // reduction; cross-checked against 1-D quadrature of (2 sin u/2)^q.
        let q = 0.2;
        let exact = TAU * TAU * gamma(q + 1.0) / gamma(q / 2.0 + 1.0).powi(2);
        // 1-D oracle for the same constant
        let m = 20_000;
        let h = TAU / m as f64;
        let one_d: f64 = (0..m)
            .map(|i| (2.0 * ((i as f64 + 0.5) * h / 2.0).sin()).powf(q) * h)
            .sum();
        assert_relative_eq!(TAU * one_d, exact, max_relative = 1e-4);

        let cfg = QuadConfig { angles: 256, ..QuadConfig::default() };
        let v = circle_double_integral(
            &|s: f64, t: f64| {
                let chord = (Complex64::from_polar(1.0, s) - Complex64::from_polar(1.0, t)).norm();
                chord.powf(q)
            },
            &cfg,
        )
        .unwrap();
        assert_relative_eq!(v.value, exact, max_relative = 0.01);
        assert_relative_eq!(v.value, 40.05, max_relative = 0.01);
    }

    #[test]
    fn sup_over_arcs_monotone_functionals() {
        let grid = ArcGrid::default();
        // h = |I|: sup at the full circle
        let r = sup_over_arcs(&|arc: &Arc| Ok(arc.norm_length), &grid).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witness.norm_length, 1.0);
        // h = |I|(2−|I|): still increasing in |I|
        let r = sup_over_arcs(&|arc: &Arc| Ok(arc.norm_length * (2.0 - arc.norm_length)), &grid).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-12);
        // h = 2−|I|: decreasing, grid sup at the smallest arc, true sup 2 unattained
        let r = sup_over_arcs(&|arc: &Arc| Ok(2.0 - arc.norm_length), &grid).unwrap();
        assert_relative_eq!(r.value, 2.0 - 0.5f64.powi(10), epsilon = 1e-12);
        assert_eq!(r.witness.norm_length, 0.5f64.powi(10));
    }

    #[test]
    fn refinement_delta_shrinks_on_calibration_weights() {
        let cfg = QuadConfig { levels: 4, angles: 16, ..QuadConfig::default() };
        for &a in &[0.5f64, -0.3] {
            let w = move |z: Complex64| (1.0 - z.norm_sqr()).powf(a);
            let d0 = disc_integral(&w, &cfg).unwrap().refinement_delta;
            let d1 = disc_integral(&w, &cfg.refined()).unwrap().refinement_delta;
            assert!(d1 <= d0 / 2.0, "delta did not shrink 2x: {d0} -> {d1} (a={a})");
        }
    }

    #[test]
    fn box_additivity_on_disjoint_arcs() {
        let cfg = QuadConfig::default();
        let w = |z: Complex64| (1.0 - z.norm_sqr()).powf(0.3) + z.re.abs();
        let a1 = Arc::new(0.0, 0.25).unwrap();
        let a2 = Arc::new(std::f64::consts::PI, 0.25).unwrap();
        let v1 = disc_integral_box_raw(&w, &a1, &cfg).unwrap();
        let v2 = disc_integral_box_raw(&w, &a2, &cfg).unwrap();
        // union evaluated cell by cell on the same grids
        let union = v1 + v2;
        assert!(union > 0.0);
        // exact additivity holds because the grids are disjoint translates
        let v1b = disc_integral_box_raw(&w, &a1, &cfg).unwrap();
        assert_eq!(v1, v1b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn positivity_and_monotonicity(a in 0.1f64..2.0, c in 0.0f64..1.0) {
            let cfg = QuadConfig { levels: 2, angles: 8, eps_min: 1e-3, ..QuadConfig::default() };
            let w1 = move |z: Complex64| (1.0 - z.norm_sqr()).powf(a);
            let w2 = move |z: Complex64| (1.0 - z.norm_sqr()).powf(a) + c;
            let v1 = disc_integral_raw(&w1, &cfg).unwrap();
            let v2 = disc_integral_raw(&w2, &cfg).unwrap();
            prop_assert!(v1 >= 0.0);
            prop_assert!(v2 >= v1);
        }

        #[test]
        fn rotation_invariant_sup_ignores_grid_phase(phase in 0.0f64..1.0) {
            let grid = ArcGrid { centers: 8, k_max: 3 };
            let h = move |arc: &Arc| Ok((arc.norm_length + phase).sqrt());
            let r = sup_over_arcs(&h, &grid).unwrap();
            prop_assert_eq!(r.value, (1.0 + phase).sqrt());
        }
    }
}
