//! Disc geometry: the Möbius involution, arcs and Carleson boxes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::QError;

/// Möbius map σ_a(z) = (a − z)/(1 − ā z), an involution of the disc
/// swapping 0 and a, mapping the circle to itself.
pub fn mobius(a: Complex64, z: Complex64) -> Result<Complex64, QError> {
    if a.norm() >= 1.0 {
        return Err(QError::domain(format!("mobius base point must satisfy |a|<1, got |a|={}", a.norm())));
    }
    Ok((a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z))
}

/// Open subarc of the unit circle: center angle plus normalized length
/// |I| = arclength/2π ∈ (0,1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    /// Center angle in [0, 2π).
    pub center: f64,
    /// Normalized length |I| ∈ (0,1].
    pub norm_length: f64,
}

impl Arc {
    pub fn new(center: f64, norm_length: f64) -> Result<Self, QError> {
        if !(norm_length > 0.0 && norm_length <= 1.0) {
            return Err(QError::domain(format!("arc length |I| must lie in (0,1], got {norm_length}")));
        }
        Ok(Arc { center: center.rem_euclid(TAU), norm_length })
    }

    pub fn full_circle() -> Self {
        Arc { center: 0.0, norm_length: 1.0 }
    }

    /// Raw arclength in radians.
    pub fn arclength(&self) -> f64 {
        self.norm_length * TAU
    }

    /// Angular span [start, end] with end = start + arclength.
    pub fn angular_span(&self) -> (f64, f64) {
        let half = 0.5 * self.arclength();
        (self.center - half, self.center + half)
    }

    /// Whether an angle falls in the arc (modulo 2π).
    pub fn contains_angle(&self, theta: f64) -> bool {
        let half = 0.5 * self.arclength();
        let d = (theta - self.center).rem_euclid(TAU);
        d <= half || d >= TAU - half
    }

    /// Concentric arc scaled by `factor`, capped at the full circle.
    pub fn scaled(&self, factor: f64) -> Arc {
        Arc {
            center: self.center,
            norm_length: (self.norm_length * factor).min(1.0),
        }
    }

    /// Whether a disc point lies in the Carleson box
    /// S(I) = {1−|I| ≤ |z| < 1, z/|z| ∈ I}.
    pub fn box_contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r >= 1.0 - self.norm_length && r < 1.0 && self.contains_angle(z.arg())
    }
}

/// Grid of disc points 1−2^{−k} radii by uniform angles, used for
/// suprema over the Möbius parameter a and for pointwise growth bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointGrid {
    pub k_max: u32,
    pub angles: usize,
}

impl Default for PointGrid {
    fn default() -> Self {
        PointGrid { k_max: 10, angles: 64 }
    }
}

impl PointGrid {
    pub fn new(k_max: u32, angles: usize) -> Self {
        PointGrid { k_max, angles }
    }

    /// Coarse grid for rotation-invariant densities, where the angular
    /// direction carries no information.
    pub fn radial(k_max: u32) -> Self {
        PointGrid { k_max, angles: 1 }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity((self.k_max as usize + 1) * self.angles);
        for k in 0..=self.k_max {
            let r = 1.0 - 0.5f64.powi(k as i32);
            for j in 0..self.angles {
                let theta = TAU * (j as f64) / (self.angles as f64);
                pts.push(Complex64::from_polar(r, theta));
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mobius_at_zero_gives_base_point() {
        let a = Complex64::new(0.5, 0.0);
        let w = mobius(a, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(w.re, 0.5, epsilon = 1e-15);
        assert_relative_eq!(w.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn mobius_with_zero_base_is_negation() {
        let z = Complex64::new(0.3, 0.1);
        let w = mobius(Complex64::new(0.0, 0.0), z).unwrap();
        assert_relative_eq!(w.re, -0.3, epsilon = 1e-15);
        assert_relative_eq!(w.im, -0.1, epsilon = 1e-15);
    }

    #[test]
    fn mobius_is_an_involution() {
        let a = Complex64::new(0.3, 0.4);
        let z = Complex64::new(0.2, -0.1);
        let back = mobius(a, mobius(a, z).unwrap()).unwrap();
        assert_relative_eq!(back.re, z.re, epsilon = 1e-14);
        assert_relative_eq!(back.im, z.im, epsilon = 1e-14);
    }

    #[test]
    fn mobius_preserves_circle_and_disc() {
        let a = Complex64::new(0.3, 0.4);
        let on_circle = Complex64::from_polar(1.0, 1.2);
        assert_relative_eq!(mobius(a, on_circle).unwrap().norm(), 1.0, epsilon = 1e-14);
        let inside = Complex64::from_polar(0.8, -2.0);
        assert!(mobius(a, inside).unwrap().norm() < 1.0);
    }

    #[test]
    fn mobius_rejects_base_outside_disc() {
        assert!(mobius(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn arc_membership_wraps_around() {
        let arc = Arc::new(0.0, 0.25).unwrap();
        assert!(arc.contains_angle(0.1));
        assert!(arc.contains_angle(TAU - 0.1));
        assert!(!arc.contains_angle(std::f64::consts::PI));
    }

    #[test]
    fn box_membership() {
        let arc = Arc::new(0.0, 0.25).unwrap();
        assert!(arc.box_contains(Complex64::from_polar(0.9, 0.1)));
        assert!(!arc.box_contains(Complex64::from_polar(0.5, 0.1)));
        assert!(!arc.box_contains(Complex64::from_polar(0.9, 3.0)));
    }

    #[test]
    fn arc_rejects_bad_length() {
        assert!(Arc::new(0.0, 0.0).is_err());
        assert!(Arc::new(0.0, 1.5).is_err());
    }
}
