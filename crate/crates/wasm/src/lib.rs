//! Browser bindings: classification, limit models and squeezing traces for
//! the catalog sequences, returned as JSON strings.

use serde_json::{json, Value};
use squeezelab::analysis::{squeeze_trace, SqueezeOptions};
use squeezelab::domains::catalog;
use squeezelab::error::Error;
use squeezelab::scaling::{extract_limit_model, Pipeline};
use squeezelab::sequences::{catalog_sequence, classify_sequence, default_js, ModeHint, SEQUENCE_IDS};
use wasm_bindgen::prelude::*;

fn to_js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn setup(seq: &str) -> Result<(squeezelab::sequences::ApproachSequence, squeezelab::domains::DomainSpec, squeezelab::weights::MultiWeight), Error> {
    let s = catalog_sequence(seq)?;
    let d = catalog(&s.domain_id)?;
    let l = d.lambda.clone().ok_or_else(|| Error::InvariantViolation(format!("{} has no multiweight", d.name)))?;
    Ok((s, d, l))
}

#[wasm_bindgen]
pub fn sequences() -> String {
    serde_json::to_string(&SEQUENCE_IDS).unwrap_or_default()
}

pub fn classify_value(seq: &str) -> Result<Value, Error> {
    let (s, d, l) = setup(seq)?;
    let r = classify_sequence(&s, &d, &l, ModeHint::Auto, &default_js())?;
    Ok(json!({ "domain": d.name, "mode": r.mode.name(), "verdicts": r.verdicts }))
}

/// Approach mode and per-condition verdicts.
#[wasm_bindgen]
pub fn classify(seq: &str) -> Result<String, JsValue> {
    classify_value(seq).map(|v| v.to_string()).map_err(to_js)
}

pub fn limit_value(seq: &str) -> Result<Value, Error> {
    let (s, d, l) = setup(seq)?;
    let js: Vec<u64> = (6..=12).map(|k| 1u64 << k).collect();
    let lm = extract_limit_model(&d, &s, &l, &js, Pipeline::for_sequence(seq))?;
    Ok(json!({
        "pipeline": lm.pipeline.name(),
        "hermitian": lm.hermitian,
        "eigenvalues": lm.eigenvalues,
        "positive_definite": lm.positive_definite,
        "polynomial": lm.polynomial_text,
    }))
}

/// Extrapolated Hermitian form and exact limit polynomial.
#[wasm_bindgen]
pub fn limit_model(seq: &str) -> Result<String, JsValue> {
    limit_value(seq).map(|v| v.to_string()).map_err(to_js)
}

pub fn squeeze_value(seq: &str, directions: usize, max_exp: u32) -> Result<Value, Error> {
    let (s, d, l) = setup(seq)?;
    let js: Vec<u64> = (4..=max_exp.clamp(4, 10)).map(|k| 1u64 << k).collect();
    let opts = SqueezeOptions { directions, boundary_samples: 4 * directions, ..SqueezeOptions::default() };
    let tr = squeeze_trace(&d, &s, &l, Pipeline::HExtendible, &js, &default_js(), &opts)?;
    let rows: Vec<Value> = tr
        .estimates
        .iter()
        .map(|e| json!({ "j": e.j, "r_inner": e.r_inner, "r_outer": e.r_outer, "lower_bound": e.lower_bound }))
        .collect();
    Ok(json!({ "domain": d.name, "estimates": rows, "monotone_from": tr.monotone_from }))
}

/// Squeezing lower bounds for `j = 2⁴ … 2^max_exp`.
#[wasm_bindgen]
pub fn squeeze(seq: &str, directions: usize, max_exp: u32) -> Result<String, JsValue> {
    squeeze_value(seq, directions, max_exp).map(|v| v.to_string()).map_err(to_js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_reports_mode() {
        assert_eq!(classify_value("ex-5-3").unwrap()["mode"], "non-spherical");
    }

    #[test]
    fn limit_of_kn() {
        let v = limit_value("ex-5-2").unwrap();
        assert!((v["hermitian"][0][0].as_f64().unwrap() - 31.0).abs() < 1e-3);
    }

    #[test]
    fn squeeze_rows() {
        let v = squeeze_value("ex-4-1", 100, 5).unwrap();
        assert_eq!(v["estimates"].as_array().unwrap().len(), 2);
        assert!(squeeze_value("prop-4-1", 100, 5).is_err());
    }
}
