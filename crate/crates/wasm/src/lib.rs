//! Browser bindings: verify an identity, dump coefficients, run a numeric
//! check. Every export returns a JSON string.

use mockq_core::numeric::{self, NumericScene, CHECK_NAMES};
use mockq_core::{mocktheta, registry, GRID};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_ORDER: i64 = 400;

fn bounded(order: i64) -> Result<i64, String> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(format!("order must lie in 1..={MAX_ORDER}"));
    }
    Ok(order)
}

pub fn verify_json(id: &str, order: i64) -> Result<String, String> {
    let rec = registry::find(id).map_err(|e| e.to_string())?;
    let rep = registry::verify_record(&rec, bounded(order)?);
    Ok(serde_json::to_string(&rep).expect("report serializes"))
}

/// Nonzero coefficients as `[exponent, value]` pairs; all listed series
/// have integer coefficients and integer exponents.
pub fn coefficients_json(series: &str, order: i64) -> Result<String, String> {
    let s = mocktheta::by_name(series, bounded(order)? * GRID)
        .ok_or_else(|| format!("unknown series `{series}`; valid: {}", mocktheta::SERIES_NAMES.join(", ")))?
        .map_err(|e| e.to_string())?;
    let rows: Vec<_> = s
        .support()
        .map(|e| {
            let c = s.coeff(e).expect("in window");
            json!([format!("{}", e / GRID), c.coeffs()[0].to_string()])
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

pub fn check_json(name: &str, tau: &str) -> Result<String, String> {
    let z = numeric::parse_tau(tau).map_err(|e| e.to_string())?;
    let sc = NumericScene::new(z).map_err(|e| e.to_string())?;
    let rep = numeric::run_check(name, &sc, None).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&rep).expect("report serializes"))
}

pub fn catalog_json() -> String {
    let ids: Vec<_> = registry::catalog()
        .iter()
        .map(|r| json!({ "id": r.id, "description": r.description, "default_order": r.default_order }))
        .collect();
    json!({ "identities": ids, "checks": CHECK_NAMES, "series": mocktheta::SERIES_NAMES }).to_string()
}

#[wasm_bindgen(js_name = verifyIdentity)]
pub fn verify_identity(id: &str, order: i32) -> Result<String, JsValue> {
    verify_json(id, order as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = seriesCoefficients)]
pub fn series_coefficients(series: &str, order: i32) -> Result<String, JsValue> {
    coefficients_json(series, order as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = numericCheck)]
pub fn numeric_check(name: &str, tau: &str) -> Result<String, JsValue> {
    check_json(name, tau).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn catalog() -> String {
    catalog_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn verify_small() {
        let v: Value = serde_json::from_str(&verify_json("NEWOMEGA", 40).unwrap()).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(verify_json("NOPE", 10).unwrap_err().contains("NEWOMEGA"));
        assert!(verify_json("NEWOMEGA", 0).is_err());
    }

    #[test]
    fn omega_coefficients() {
        let v: Value = serde_json::from_str(&coefficients_json("omega", 5).unwrap()).unwrap();
        let vals: Vec<&str> = v.as_array().unwrap().iter().map(|p| p[1].as_str().unwrap()).collect();
        assert_eq!(vals, ["1", "2", "3", "4", "6"]);
    }

    #[test]
    fn check_at_point() {
        let v: Value = serde_json::from_str(&check_json("t-transform", "0.1+0.9i").unwrap()).unwrap();
        assert_eq!(v["passed"], true);
        assert!(check_json("t-transform", "0.1-0.9i").is_err());
    }

    #[test]
    fn catalog_lists_checks() {
        let v: Value = serde_json::from_str(&catalog_json()).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), CHECK_NAMES.len());
    }
}
