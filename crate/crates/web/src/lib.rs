//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string. Failures come back as
//! `{"error": "..."}` so the page needs no exception handling.

use conway_core::corpus::{self, ctype2_family};
use conway_core::poly::Coefficient;
use conway_core::reduced::{alphas, ctype2_witness, gamma3, reduced_conway, sato_levine};
use conway_core::skein::conway;
use conway_core::{parse_pd, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn int(v: &BigInt) -> Value {
    serde_json::to_value(Coefficient::from(v)).expect("coefficients serialize")
}

/// Conway polynomial, linking matrix and reduced series of a PD string.
#[wasm_bindgen]
pub fn invariants_json(pd: &str, truncation: usize) -> String {
    respond((|| {
        let d = parse_pd(pd)?;
        let m = d.component_count();
        let series = reduced_conway(&d, truncation)?;
        Ok(json!({
            "components": m,
            "crossings": d.crossing_count(),
            "conway": conway(&d)?,
            "linking_matrix": d.linking_matrix()?.rows(),
            "reduced": series.coeffs().iter().map(int).collect::<Vec<_>>(),
            "alphas": alphas(&d, 4)?.iter().map(int).collect::<Vec<_>>(),
            "sato_levine": if m == 2 { int(&sato_levine(&d)?) } else { Value::Null },
            "gamma": if m == 3 { int(&gamma3(&d)?) } else { Value::Null },
        }))
    })())
}

/// The singular witness diagram for `(a, b, c, d)` and the value of the
/// extended `α_2` on it.
#[wasm_bindgen]
pub fn ctype2_json(a: i32, b: i32, c: i32, d: i32) -> String {
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    respond((|| {
        let diagram = ctype2_family(a, b, c, d)?;
        Ok(json!({
            "params": [a, b, c, d],
            "pd": diagram.to_pd(),
            "double_points": diagram.singular_crossings().len(),
            "value": int(&ctype2_witness(a, b, c, d)?),
        }))
    })())
}

/// A corpus entry from a `name[:p1,p2,...]` spec.
#[wasm_bindgen]
pub fn corpus_json(spec: &str) -> String {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let params: std::result::Result<Vec<i64>, _> = rest
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|p| match p.trim() {
            "+" => Ok(1),
            "-" => Ok(-1),
            other => other.parse::<i64>().map_err(|_| other.to_string()),
        })
        .collect();
    match params {
        Ok(params) => respond(
            corpus::entry(name.trim(), &params).map(|e| serde_json::to_value(e).expect("entries serialize")),
        ),
        Err(bad) => json!({ "error": format!("bad corpus parameter `{bad}`") }).to_string(),
    }
}

/// Names accepted by [`corpus_json`].
#[wasm_bindgen]
pub fn corpus_names() -> String {
    json!(corpus::NAMES).to_string()
}
