//! Finite series representations of analytic and boundary functions.
//!
//! A [`TaylorSeries`] is a finite complex coefficient vector for an
//! analytic function on the disc; a [`FourierSeries`] is a two-sided
//! coefficient map for an L²(𝕋) boundary function. Both evaluate
//! exactly (finite sums), so the quadrature engines see no additional
//! representation error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::params::SpaceParams;

/// Analytic polynomial Σ_{k=0}^{N} a_k z^k.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut s = TaylorSeries { coeffs };
        if s.coeffs.is_empty() {
            s.coeffs.push(Complex64::new(0.0, 0.0));
        }
        s
    }

    pub fn zero() -> Self {
        TaylorSeries::new(vec![Complex64::new(0.0, 0.0)])
    }

    pub fn constant(c: Complex64) -> Self {
        TaylorSeries::new(vec![c])
    }

    /// The monomial z^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        TaylorSeries::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation of the finite sum.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    pub fn derivative(&self) -> TaylorSeries {
        if self.coeffs.len() <= 1 {
            return TaylorSeries::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * (k as f64))
            .collect();
        TaylorSeries::new(coeffs)
    }

    /// Antiderivative F with F(0) = 0 and F' = self.
    pub fn antiderivative(&self) -> TaylorSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        for (k, &a) in self.coeffs.iter().enumerate() {
            coeffs.push(a / (k as f64 + 1.0));
        }
        TaylorSeries::new(coeffs)
    }

    /// Truncated Cauchy product: c_k = Σ_{i+j=k} a_i b_j for k ≤ budget.
    pub fn cauchy_product(&self, other: &TaylorSeries, budget: usize) -> TaylorSeries {
        let n = budget.min(self.degree() + other.degree());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > n {
                break;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TaylorSeries::new(coeffs)
    }

    pub fn scale(&self, c: Complex64) -> TaylorSeries {
        TaylorSeries::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &TaylorSeries) -> TaylorSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        TaylorSeries::new(coeffs)
    }

    pub fn sub(&self, other: &TaylorSeries) -> TaylorSeries {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// H² norm sqrt(Σ |a_k|²).
    pub fn hardy2_norm(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coefficientwise deviation from another series.
    pub fn max_coeff_distance(&self, other: &TaylorSeries) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Boundary trace as a one-sided Fourier series (c_n = a_n, n ≥ 0).
    pub fn boundary_trace(&self) -> FourierSeries {
        let mut coeffs = BTreeMap::new();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a != Complex64::new(0.0, 0.0) {
                coeffs.insert(k as i64, a);
            }
        }
        FourierSeries::new(coeffs)
    }
}

impl Serialize for TaylorSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let doc = TaylorSeriesDoc {
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TaylorSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = TaylorSeriesDoc::deserialize(deserializer)?;
        Ok(TaylorSeries::new(
            doc.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct TaylorSeriesDoc {
    coeffs: Vec<[f64; 2]>,
}

/// Two-sided trigonometric polynomial Σ_{|n| ≤ M} c_n e^{inθ}.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierSeries {
    pub fn new(coeffs: BTreeMap<i64, Complex64>) -> Self {
        FourierSeries { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            coeffs.insert(0, c);
        }
        FourierSeries { coeffs }
    }

    /// Single mode e^{inθ}.
    pub fn mode(n: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(n, Complex64::new(1.0, 0.0));
        FourierSeries { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> FourierSeries {
        FourierSeries {
            coeffs: self.coeffs.iter().map(|(&n, &v)| (n, v * c)).collect(),
        }
    }

    /// Value at e^{iθ}.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in &self.coeffs {
            acc += c * Complex64::from_polar(1.0, n as f64 * theta);
        }
        acc
    }

    /// Squared L²(𝕋) norm under the dθ/2π convention: Σ |c_n|².
    pub fn l2_norm_sqr(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Harmonic (Poisson) extension at z = r e^{iθ}: Σ c_n r^{|n|} e^{inθ}.
    pub fn poisson_extension(&self, z: Complex64) -> Complex64 {
        let r = z.norm();
        let theta = z.arg();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in &self.coeffs {
            acc += c * r.powi(n.unsigned_abs() as i32) * Complex64::from_polar(1.0, n as f64 * theta);
        }
        acc
    }

    /// Holomorphic-derivative part of the extension: Σ_{n≥1} n c_n z^{n−1}.
    fn holo_derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in self.coeffs.range(1..) {
            acc += c * (n as f64) * z.powu(n as u32 - 1);
        }
        acc
    }

    /// Antiholomorphic branch: Σ_{n≥1} n c_{−n} z̄^{n−1}.
    fn antiholo_derivative(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &c) in self.coeffs.range(..0) {
            let m = (-n) as u32;
            acc += c * (m as f64) * zb.powu(m - 1);
        }
        acc
    }

    /// Squared gradient of the harmonic extension,
    /// |∇f̂|² = 4(|Σ_{n≥1} n c_n z^{n−1}|² + |Σ_{n≥1} n c_{−n} z̄^{n−1}|²).
    pub fn gradient_sqr(&self, z: Complex64) -> f64 {
        4.0 * (self.holo_derivative(z).norm_sqr() + self.antiholo_derivative(z).norm_sqr())
    }
}

/// Weighted gradient density |∇f̂(z)|² (1−|z|²)^{p−2+2β} of the Poisson
/// extension, the density of the boundary Carleson characterization.
pub fn poisson_gradient_density(f: &FourierSeries, params: &SpaceParams, z: Complex64) -> f64 {
    let w = (1.0 - z.norm_sqr()).powf(params.box_weight_exp());
    f.gradient_sqr(z) * w
}

impl Serialize for FourierSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let doc = FourierSeriesDoc {
            coeffs: self.coeffs.iter().map(|(&n, c)| (n, [c.re, c.im])).collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FourierSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = FourierSeriesDoc::deserialize(deserializer)?;
        Ok(FourierSeries::new(
            doc.coeffs
                .iter()
                .map(|&(n, [re, im])| (n, Complex64::new(re, im)))
                .collect(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct FourierSeriesDoc {
    coeffs: Vec<(i64, [f64; 2])>,
}
