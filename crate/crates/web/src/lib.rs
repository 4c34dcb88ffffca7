//! WebAssembly bindings for the demo page in `www/`. Everything crosses the
//! boundary as JSON strings so the page needs no generated typings.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qtcatalan::catalan::{catalan_poly3, catalan_poly_k4};
use qtcatalan::dyck::{area3_bd, bounce3_bd, KVec3, ParamPath3};
use qtcatalan::involution::{apply_involution, classify};
use qtcatalan::polynomial::SparsePoly;

/// Largest entries accepted from the page; each call stays well under a
/// second at these sizes.
pub const MAX_K3: u32 = 60;
pub const MAX_K4: u32 = 20;

fn grid(p: &SparsePoly) -> Value {
    let cells: Vec<[i64; 3]> = p
        .terms()
        .map(|(e, c)| [i64::from(e[0]), i64::from(e[1]), c])
        .collect();
    let max_q = cells.iter().map(|c| c[0]).max().unwrap_or(0);
    let max_t = cells.iter().map(|c| c[1]).max().unwrap_or(0);
    json!({
        "max_q": max_q,
        "max_t": max_t,
        "terms": cells.len(),
        "total": p.eval_all_ones().unwrap_or(0),
        "symmetric": p.is_symmetric("q", "t").unwrap_or(false),
        "text": p.to_string(),
        "cells": cells,
    })
}

fn too_big(n: u32, max: u32) -> Option<String> {
    (n > max).then(|| json!({ "error": format!("inputs are limited to {max}") }).to_string())
}

/// Coefficients of `C_(k1,k2,k3)(q,t)` as `{cells: [[area, bounce, coeff]], ...}`.
#[wasm_bindgen]
pub fn qt_grid3(k1: u32, k2: u32, k3: u32) -> String {
    if let Some(e) = too_big(k1.max(k2).max(k3), MAX_K3) {
        return e;
    }
    grid(&catalan_poly3(KVec3::new(k1, k2, k3))).to_string()
}

/// Coefficients of `C_(k,k,k,k)(q,t)`.
#[wasm_bindgen]
pub fn qt_grid4(k: u32) -> String {
    if let Some(e) = too_big(k, MAX_K4) {
        return e;
    }
    grid(&catalan_poly_k4(k)).to_string()
}

/// Every path of the `(a, c)` block with its case label, image and
/// statistics, as `{paths: [{b, d, label, image: [b', d'], area, bounce}]}`.
#[wasm_bindgen]
pub fn involution_map(a: u32, c: u32) -> String {
    if let Some(e) = too_big(a.max(c), MAX_K3) {
        return e;
    }
    let mut paths = Vec::new();
    for b in 0..=a {
        for d in 0..=a - b + c {
            let p = ParamPath3::new(a, c, 0, b, d).expect("enumerated in range");
            let label = classify(a.into(), c.into(), b.into(), d.into()).map(|l| l.to_string());
            let image = apply_involution(&p).map(|q| [q.b, q.d]);
            paths.push(json!({
                "b": b,
                "d": d,
                "label": label.ok(),
                "image": image.ok(),
                "area": area3_bd(&p),
                "bounce": bounce3_bd(&p),
            }));
        }
    }
    json!({ "a": a, "c": c, "paths": paths }).to_string()
}
