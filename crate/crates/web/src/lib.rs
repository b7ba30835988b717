//! Thin wasm-bindgen layer over [`demo`]; every export returns JSON text.

pub mod demo;

use wasm_bindgen::prelude::*;

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn presets() -> String {
    demo::presets()
}

#[wasm_bindgen]
pub fn derive_field(family: &str, explicit: bool) -> Result<String, JsValue> {
    js(demo::derive_field(family, explicit))
}

#[wasm_bindgen]
pub fn trajectory(system: &str, init: &[f64], from: f64, to: f64, step: f64) -> Result<String, JsValue> {
    js(demo::trajectory(system, init, from, to, step))
}

#[wasm_bindgen]
pub fn series(kind: &str, order: usize) -> Result<String, JsValue> {
    js(demo::series(kind, order))
}
