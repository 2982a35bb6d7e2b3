//! Browser bindings: a small JSON-in/JSON-out surface over the core
//! toolkit for the static demo page in `www/`.
//!
//! Build with `wasm-pack build --target web crates/wasm` (or
//! `cargo build --target wasm32-unknown-unknown` plus `wasm-bindgen`);
//! the crate also compiles natively so the workspace tests cover it.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use qpbeta::calculus::{frac_derivative, FracDerivParams};
use qpbeta::series::TaylorSeries;
use qpbeta::spaces::{carleson_box_constant, q_disc_box_seminorm, Density};
use qpbeta::{ArcGrid, QuadConfig, SpaceParams};

fn parse_series(coeffs_json: &str) -> Result<TaylorSeries, String> {
    serde_json::from_str(coeffs_json).map_err(|e| format!("malformed coefficients: {e}"))
}

fn demo_config() -> QuadConfig {
    // interactive budget: coarse but inside the calibrated regime
    QuadConfig { levels: 4, angles: 32, grade: 0.5, eps_min: 1e-5, refine_factor: 2 }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Box-form Q seminorm of a polynomial, with the arc table for plotting.
///
/// `coeffs_json` is `{"coeffs":[[re,im],...]}`; the result is the
/// serialized norm result (value, witness, refinement delta, table).
#[wasm_bindgen]
pub fn q_disc_box_norm_table(coeffs_json: &str, p: f64, beta: f64) -> Result<String, String> {
    let run = || -> Result<String, String> {
        let f = parse_series(coeffs_json)?;
        let params = SpaceParams::base(p, beta).map_err(|e| e.to_string())?;
        let grid = ArcGrid::new(16, 8);
        let r = q_disc_box_seminorm(&f, &params, &demo_config(), &grid)
            .map_err(|e| e.to_string())?;
        to_json(&r)
    };
    run()
}

/// Fractional ν-derivative coefficients of a polynomial.
///
/// Returns `{"coeffs":[[re,im],...]}` alongside the coefficient moduli
/// of the input for side-by-side plotting.
#[wasm_bindgen]
pub fn frac_derivative_coeffs(coeffs_json: &str, nu: f64, b: f64) -> Result<String, String> {
    #[derive(Serialize)]
    struct Out {
        input_moduli: Vec<f64>,
        output_moduli: Vec<f64>,
        derivative: TaylorSeries,
    }
    let run = || -> Result<String, String> {
        let f = parse_series(coeffs_json)?;
        let fp = FracDerivParams::new(nu, b).map_err(|e| e.to_string())?;
        let d = frac_derivative(&f, &fp);
        to_json(&Out {
            input_moduli: f.coeffs().iter().map(|c| c.norm()).collect(),
            output_moduli: d.coeffs().iter().map(|c| c.norm()).collect(),
            derivative: d,
        })
    };
    run()
}

/// Box Carleson constant of the radial density (1−|z|²)^a at exponent s.
#[wasm_bindgen]
pub fn carleson_box_radial(a: f64, s: f64) -> Result<String, String> {
    let run = || -> Result<String, String> {
        let density = Density::weight_pow(a);
        let grid = ArcGrid::new(8, 8);
        let r = carleson_box_constant(&density, s, &demo_config(), &grid)
            .map_err(|e| e.to_string())?;
        to_json(&r)
    };
    run()
}
