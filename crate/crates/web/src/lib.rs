//! Browser bindings for the static demo page in `www/`.
//!
//! Each export takes plain strings and numbers and returns a JSON string;
//! the `*_json` functions behind them are ordinary Rust and are what the
//! native tests exercise.

use serde::Serialize;
use serde_json::json;
use superkappa::constructors::{layer_decomposition, ParityCase};
use superkappa::harness::{verify, Instance, Rule};
use superkappa::io::write_graph6;
use superkappa::{connectivity_report, is_super_kappa, CutOptions, ProductSpec};
use wasm_bindgen::prelude::*;

/// Largest graph the page will draw or analyse; keeps the tab responsive.
pub const MAX_ORDER: usize = 120;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn build(expr: &str) -> Result<superkappa::Graph, String> {
    let g = expr
        .parse::<ProductSpec>()
        .map_err(err)?
        .build()
        .map_err(err)?;
    if g.order() > MAX_ORDER {
        return Err(format!(
            "{} vertices is more than the demo draws ({MAX_ORDER})",
            g.order()
        ));
    }
    Ok(g)
}

fn to_json(value: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(value).map_err(err)
}

/// Connectivity summary of the graph an expression describes, with its
/// edges and a violating minimum cut if it is not super-κ.
pub fn analyze_json(expr: &str) -> Result<String, String> {
    let g = build(expr)?;
    let report = connectivity_report(&g, &CutOptions::default()).map_err(err)?;
    let cut = if g.is_connected() {
        is_super_kappa(&g, &CutOptions::default())
            .map_err(err)?
            .witness
            .map(|w| w.vertices)
    } else {
        None
    };
    to_json(&json!({
        "expr": expr,
        "graph6": write_graph6(&g).trim_end(),
        "labels": (0..g.order()).map(|v| g.label(v)).collect::<Vec<_>>(),
        "edges": g.edges().collect::<Vec<_>>(),
        "report": report,
        "violating_cut": cut,
    }))
}

/// Verdict of one rule on `expr` with cycle length `n` (0 for none).
pub fn verify_json(rule: &str, expr: &str, n: u32) -> Result<String, String> {
    let rule: Rule = rule.parse().map_err(err)?;
    let order = build(expr)?.order();
    let n = (n > 0).then_some(n as usize);
    if order * n.unwrap_or(2) > MAX_ORDER * 4 {
        return Err("instance too large for the browser demo".into());
    }
    let inst = Instance::from_expr(expr, n).map_err(err)?;
    let verdict = verify(rule, &inst, &CutOptions::default()).map_err(err)?;
    to_json(&verdict)
}

/// Layers and blocks of `G x C_n` for drawing: one column per layer.
pub fn layers_json(expr: &str, n: u32) -> Result<String, String> {
    let g = build(expr)?;
    let n = n as usize;
    if g.order() * n > MAX_ORDER * 4 {
        return Err("instance too large for the browser demo".into());
    }
    let case = ParityCase::classify(g.is_bipartite(), n);
    let dec = layer_decomposition(&g, n, case).map_err(err)?;
    let blocks: Vec<_> = dec
        .blocks
        .iter()
        .map(|b| {
            json!({
                "name": b.name(),
                "sides": b.sides,
                "component": b.component,
                "edges": b.edges,
            })
        })
        .collect();
    to_json(&json!({
        "case": case,
        "order": g.order() * n,
        "layers": dec.layers,
        "blocks": blocks,
    }))
}

#[wasm_bindgen]
pub fn analyze(expr: &str) -> Result<String, JsError> {
    analyze_json(expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify_rule(rule: &str, expr: &str, n: u32) -> Result<String, JsError> {
    verify_json(rule, expr, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn layers(expr: &str, n: u32) -> Result<String, JsError> {
    layers_json(expr, n).map_err(|e| JsError::new(&e))
}
