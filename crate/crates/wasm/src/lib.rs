//! Browser bindings for the demo page in `www/`.
//!
//! Three operations, each returning a JSON string: the billiard explorer
//! (coded word plus complexity and balance curves), the MSE membership check,
//! and the ψₙ family. The plain functions are used by the native tests; the
//! `wasm_bindgen` wrappers only convert errors to JS exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use wse_core::analysis::{balance_order, complexity, wse_verdict, WseVerdict};
use wse_core::billiard::{billiard_word, classify, BilliardConfig};
use wse_core::mse::{mse_membership, primality, psi, MseVerdict, PrimalityVerdict};
use wse_core::Morphism;

/// Longest prefix the page may request; keeps the exact arithmetic responsive.
pub const MAX_LENGTH: usize = 20_000;

#[derive(Serialize)]
struct BilliardReport {
    classification: String,
    word: String,
    /// `(n, P(n), n² + n + 1)` for the complexity chart.
    complexity: Vec<(usize, u64, u64)>,
    balance_order: usize,
    wse: WseVerdict,
}

pub fn billiard_report(d: &str, rho: &str, length: usize, max_n: usize) -> Result<String, String> {
    if !(1..=MAX_LENGTH).contains(&length) {
        return Err(format!("length must lie in 1..={MAX_LENGTH}"));
    }
    let max_n = max_n.clamp(1, length.min(64));
    let config = BilliardConfig::parse(d, rho).map_err(|e| e.to_string())?;
    let w = billiard_word(&config).prefix(length).map_err(|e| e.to_string())?;
    let p = complexity(&w, max_n).map_err(|e| e.to_string())?;
    let report = BilliardReport {
        classification: classify(&config).to_string(),
        word: w.to_string(),
        complexity: p.counts.iter().map(|(&n, &c)| (n, c, (n * n + n + 1) as u64)).collect(),
        balance_order: balance_order(&w, max_n).map_err(|e| e.to_string())?.order,
        wse: wse_verdict(&w, max_n).map_err(|e| e.to_string())?,
    };
    Ok(serde_json::to_string(&report).expect("serializable"))
}

#[derive(Serialize)]
struct MseReport {
    morphism: String,
    member: bool,
    verdict: MseVerdict,
    primality: Option<PrimalityVerdict>,
}

pub fn mse_report(spec: &str) -> Result<String, String> {
    let f: Morphism = spec.parse().map_err(|e: wse_core::morphism::MorphismParseError| e.to_string())?;
    let verdict = mse_membership(&f);
    let primality = matches!(verdict, MseVerdict::ErasingMember { .. }).then(|| primality(&f).ok()).flatten();
    let report = MseReport { morphism: f.to_string(), member: verdict.is_member(), verdict, primality };
    Ok(serde_json::to_string(&report).expect("serializable"))
}

pub fn psi_report(n: usize) -> Result<String, String> {
    if !(1..=20).contains(&n) {
        return Err("n must lie in 1..=20".into());
    }
    let fam = psi(n).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&fam).expect("serializable"))
}

#[wasm_bindgen(js_name = billiardReport)]
pub fn billiard_report_js(d: &str, rho: &str, length: usize, max_n: usize) -> Result<String, JsValue> {
    billiard_report(d, rho, length, max_n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = mseReport)]
pub fn mse_report_js(spec: &str) -> Result<String, JsValue> {
    mse_report(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = psiReport)]
pub fn psi_report_js(n: usize) -> Result<String, JsValue> {
    psi_report(n).map_err(|e| JsValue::from_str(&e))
}
