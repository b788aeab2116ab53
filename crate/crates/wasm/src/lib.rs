//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested on the host, where `JsError` is unavailable.

use adaseg::{GeneratorKind, GeneratorSpec, Method, Segmenter, TimeSeries};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn series(ys: &[f64]) -> Result<TimeSeries, String> {
    TimeSeries::from_values(ys.to_vec()).map_err(|e| e.to_string())
}

fn regressors(max_degree: usize) -> Result<usize, String> {
    if max_degree > 2 {
        return Err(format!("max degree must be 0, 1 or 2, got {max_degree}"));
    }
    Ok(max_degree + 1)
}

pub fn segment_json(
    ys: &[f64],
    method: &str,
    k: usize,
    max_degree: usize,
) -> Result<String, String> {
    let s = series(ys)?;
    let method: Method = method.parse().map_err(|e: adaseg::Error| e.to_string())?;
    let seg = Segmenter::new(method, regressors(max_degree)?)
        .segment(&s, k)
        .map_err(|e| e.to_string())?;
    let model = seg.model_values(&s).map_err(|e| e.to_string())?;
    let mut out = seg.to_json();
    out["model"] = json!(model);
    out["boundaries"] = json!(seg.boundaries());
    Ok(out.to_string())
}

pub fn generate_values(kind: &str, n: usize, seed: u32, sigma: f64) -> Result<Vec<f64>, String> {
    let kind: GeneratorKind = kind.parse().map_err(|e: adaseg::Error| e.to_string())?;
    let spec = GeneratorSpec {
        sigma,
        ..GeneratorSpec::new(kind, n, seed.into())
    };
    adaseg::generate(&spec)
        .map(|s| s.ys().to_vec())
        .map_err(|e| e.to_string())
}

pub fn cost_curve_values(ys: &[f64], kmax: usize, max_degree: usize) -> Result<Vec<f64>, String> {
    let s = series(ys)?;
    adaseg::optimal_cost_curve(&s, kmax, regressors(max_degree)?)
        .map(|c| c.into_iter().map(f64::sqrt).collect())
        .map_err(|e| e.to_string())
}

/// Segments `ys` (x = index) and returns the segmentation, the model values
/// and the segment boundaries as a JSON string.
#[wasm_bindgen]
pub fn segment(ys: &[f64], method: &str, k: usize, max_degree: usize) -> Result<String, JsError> {
    segment_json(ys, method, k, max_degree).map_err(|e| JsError::new(&e))
}

/// Seeded white noise (`noise`) or random walk (`walk`) with mean 0.
#[wasm_bindgen]
pub fn generate(kind: &str, n: usize, seed: u32, sigma: f64) -> Result<Vec<f64>, JsError> {
    generate_values(kind, n, seed, sigma).map_err(|e| JsError::new(&e))
}

/// Optimal l2 fit error for every budget `1..=kmax`.
#[wasm_bindgen(js_name = costCurve)]
pub fn cost_curve(ys: &[f64], kmax: usize, max_degree: usize) -> Result<Vec<f64>, JsError> {
    cost_curve_values(ys, kmax, max_degree).map_err(|e| JsError::new(&e))
}
