//! Space parameters and per-theorem admissibility checks.

use serde::{Deserialize, Serialize};

use crate::error::QError;

/// Parameters (p, β, b, ν) of the Q-type space under study, together
/// with the derived exponents that recur in every norm and experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub p: f64,
    pub beta: f64,
    /// Base of the fractional derivative, fixed > 1.
    pub b: f64,
    /// Fractional derivative order.
    pub nu: f64,
}

impl SpaceParams {
    pub fn new(p: f64, beta: f64, b: f64, nu: f64) -> Result<Self, QError> {
        let params = SpaceParams { p, beta, b, nu };
        params.check_base()?;
        Ok(params)
    }

    /// p and β only, with default b = 2 and ν = 1.
    pub fn base(p: f64, beta: f64) -> Result<Self, QError> {
        Self::new(p, beta, 2.0, 1.0)
    }

    fn check_base(&self) -> Result<(), QError> {
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(QError::domain(format!("p must lie in (0,1], got {}", self.p)));
        }
        if !(self.beta > 0.5 && self.beta <= 1.0) {
            return Err(QError::domain(format!(
                "beta must lie in (1/2,1], got {}",
                self.beta
            )));
        }
        if !(self.b > 1.0) {
            return Err(QError::domain(format!("b must exceed 1, got {}", self.b)));
        }
        if !(self.nu > 0.0) {
            return Err(QError::domain(format!("nu must be positive, got {}", self.nu)));
        }
        Ok(())
    }

    /// Weight exponent p − 2 + 2β of the disc seminorm density.
    pub fn box_weight_exp(&self) -> f64 {
        self.p - 2.0 + 2.0 * self.beta
    }

    /// Carleson scale exponent p + 2 − 2β.
    pub fn box_scale_exp(&self) -> f64 {
        self.p + 2.0 - 2.0 * self.beta
    }

    /// Kernel exponent 4 − p − 2β of the circle double integral.
    pub fn circle_kernel_exp(&self) -> f64 {
        4.0 - self.p - 2.0 * self.beta
    }

    /// Arc scale exponent 2β − 2 − p of the circle seminorm.
    pub fn circle_scale_exp(&self) -> f64 {
        2.0 * self.beta - 2.0 - self.p
    }

    /// Morrey exponent λ = p − 2β + 2.
    pub fn morrey_lambda(&self) -> f64 {
        self.p - 2.0 * self.beta + 2.0
    }

    /// Boundary derivative order ν* = (3 − p − 2β)/2 of the Morrey route.
    pub fn nu_star(&self) -> f64 {
        (3.0 - self.p - 2.0 * self.beta) / 2.0
    }

    /// Admissibility of `self` for a given theorem context.
    pub fn validate(&self, context: TheoremContext) -> Verdict {
        if let Err(e) = self.check_base() {
            return Verdict::fail(format!("{e}"));
        }
        match context {
            TheoremContext::Base => Verdict::pass(),
            TheoremContext::CircleTheorems => {
                if self.p + 2.0 * self.beta <= 2.0 {
                    Verdict::fail("p+2β>2 violated")
                } else if self.p >= 1.0 {
                    Verdict::fail("p<1 violated")
                } else if self.beta >= 1.0 {
                    Verdict::fail("β<1 violated")
                } else {
                    Verdict::pass()
                }
            }
            TheoremContext::MorreyTheorem => {
                if 2.0 * self.beta - self.p < 1.0 {
                    Verdict::fail("2β−p≥1 violated")
                } else {
                    let lambda = self.morrey_lambda();
                    if lambda <= 0.0 || lambda > 1.0 {
                        Verdict::fail("λ=p−2β+2 ∈ (0,1] violated")
                    } else {
                        Verdict::pass()
                    }
                }
            }
            TheoremContext::FracCharacterization => {
                let lower = self.nu_star().max(2.0 - 2.0 * self.beta);
                if self.nu <= lower {
                    Verdict::fail(format!("ν>max{{(3−p−2β)/2, 2−2β}}={lower} violated"))
                } else {
                    Verdict::pass()
                }
            }
        }
    }
}

/// Which theorem's hypothesis set a parameter tuple is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TheoremContext {
    /// Only the base ranges p ∈ (0,1], β ∈ (1/2,1], b > 1, ν > 0.
    Base,
    /// Circle characterization theorems: p+2β > 2, p < 1, β < 1.
    CircleTheorems,
    /// Morrey relation: 2β−p ≥ 1 and λ ∈ (0,1].
    MorreyTheorem,
    /// Fractional characterization: ν > max{(3−p−2β)/2, 2−2β}.
    FracCharacterization,
}

/// Pass/fail verdict carrying the violated inequality by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    pub violated: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { admissible: true, violated: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Verdict { admissible: false, violated: Some(msg.into()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_theorems_admissibility() {
        let ok = SpaceParams::base(0.6, 0.8).unwrap();
        assert!(ok.validate(TheoremContext::CircleTheorems).admissible);

        let bad = SpaceParams::base(0.3, 0.8).unwrap();
        let v = bad.validate(TheoremContext::CircleTheorems);
        assert!(!v.admissible);
        assert_eq!(v.violated.as_deref(), Some("p+2β>2 violated"));
    }

    #[test]
    fn morrey_admissibility() {
        let ok = SpaceParams::base(0.5, 0.8).unwrap();
        let v = ok.validate(TheoremContext::MorreyTheorem);
        assert!(v.admissible, "{v:?}");
        assert!((ok.morrey_lambda() - 0.9).abs() < 1e-12);

        // 2β−p = 0.8 < 1
        let bad = SpaceParams::base(0.8, 0.8).unwrap();
        assert!(!bad.validate(TheoremContext::MorreyTheorem).admissible);
    }

    #[test]
    fn frac_characterization_threshold() {
        let mut params = SpaceParams::base(0.6, 0.8).unwrap();
        // ν* = (3−0.6−1.6)/2 = 0.4, 2−2β = 0.4.
        params.nu = 0.9;
        assert!(params.validate(TheoremContext::FracCharacterization).admissible);
        params.nu = 0.3;
        assert!(!params.validate(TheoremContext::FracCharacterization).admissible);
    }

    #[test]
    fn beta_one_recovers_classical_exponents() {
        // At β = 1 both derived exponents collapse to p.
        let params = SpaceParams::new(0.7, 1.0, 2.0, 1.0).unwrap();
        assert!((params.box_weight_exp() - params.p).abs() < 1e-15);
        assert!((params.box_scale_exp() - params.p).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(SpaceParams::base(0.0, 0.8).is_err());
        assert!(SpaceParams::base(0.5, 0.5).is_err());
        assert!(SpaceParams::new(0.5, 0.8, 1.0, 1.0).is_err());
        assert!(SpaceParams::new(0.5, 0.8, 2.0, 0.0).is_err());
    }
}
