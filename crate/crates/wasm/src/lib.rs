//! Browser demo bindings: thin JSON façades over the core models, compiled
//! to WebAssembly with `wasm-bindgen`. All real logic stays in the core
//! crate; these functions exist so a static page can explore parameters
//! interactively.

use wasm_bindgen::prelude::wasm_bindgen;

mod demo;

/// Computes `E_{wλ}(x;q,0)`; `request` is a JSON object
/// `{"type": "A2", "lambda": [1,0], "w": "s1", "model": "all"}`.
/// Returns a JSON object with the canonicalized `w`, the term list, and a
/// plain-text rendering (or `{"error": ...}`).
#[wasm_bindgen]
pub fn compute(request: &str) -> String {
    demo::compute_json(request)
}

/// Runs all four models for every `w ∈ W^{J_λ}` and reports per-w verdicts:
/// `{"type": "A2", "lambda": [1,1]}` →
/// `{"rows": [{"w": "e", "agree": true, "text": ...}, ...], "summary": ...}`.
#[wasm_bindgen]
pub fn crosscheck(request: &str) -> String {
    demo::crosscheck_json(request)
}

/// DOT source of the parabolic quantum Bruhat graph `QB(W^{J_λ})`.
#[wasm_bindgen]
pub fn qbg_dot(request: &str) -> String {
    demo::qbg_dot_json(request)
}
