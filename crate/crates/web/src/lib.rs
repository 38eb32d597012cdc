//! JSON-in, JSON-out entry points for the browser page in `www/`.

use dirsat::catalog;
use dirsat::dspace::{generator_verdict, path_is_directed, Scope, DEFAULT_BUDGET};
use dirsat::plgeom::{Ambient, PlPath};
use dirsat::saturate::is_weakly_directed;
use dirsat::{Scalar, Verdict};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn verdict(v: &Verdict) -> Value {
    json!({
        "holds": v.holds(),
        "certified": v.is_certified(),
        "text": v.to_string(),
        "witness": v.witness(),
    })
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Loadable fixture names with their ambients.
#[wasm_bindgen]
pub fn catalog_names() -> String {
    let fixtures: Vec<Value> = catalog::load_all()
        .iter()
        .map(|fx| json!({ "name": fx.name, "ambient": fx.space.ambient.to_string(), "paths": fx.corpus.len() }))
        .collect();
    json!(fixtures).to_string()
}

/// Parses `x,y; x,y; ...` into a polyline with evenly spaced breaks.
fn polyline(ambient: &Ambient, vertices: &str) -> Result<PlPath, String> {
    let points = vertices
        .split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.split(',').map(|c| c.trim().parse::<Scalar>().map_err(|e| e.to_string())).collect())
        .collect::<Result<Vec<Vec<Scalar>>, String>>()?;
    match points.len() {
        0 => Err("no vertices".into()),
        1 => PlPath::constant(ambient, points[0].clone()).map_err(|e| e.to_string()),
        _ => PlPath::polyline(ambient, points).map_err(|e| e.to_string()),
    }
}

/// Directed and weakly directed verdicts for a polyline in a fixture.
#[wasm_bindgen]
pub fn check_polyline(fixture: &str, vertices: &str) -> String {
    respond((|| {
        let fx = catalog::load(fixture).map_err(|e| e.to_string())?;
        let p = polyline(&fx.space.ambient, vertices)?;
        let d = path_is_directed(&fx.space, &p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let w = is_weakly_directed(&fx.space, &p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        Ok(json!({ "fixture": fx.name, "directed": verdict(&d), "weakly": verdict(&w) }))
    })())
}

/// The circle loop of `turns` (a literal, negative for clockwise), tested
/// against local chart sections and against global functions only.
#[wasm_bindgen]
pub fn circle_modes(turns: &str) -> String {
    respond((|| {
        let x = catalog::load("circle").map_err(|e| e.to_string())?.space;
        let turns: Scalar = turns.trim().parse().map_err(|e: dirsat::Error| e.to_string())?;
        let p = PlPath::segment(&x.ambient, vec![Scalar::zero()], vec![turns]).map_err(|e| e.to_string())?;
        let local = generator_verdict(&x, &p, DEFAULT_BUDGET, Scope::Local).map_err(|e| e.to_string())?;
        let global = generator_verdict(&x, &p, DEFAULT_BUDGET, Scope::GlobalOnly).map_err(|e| e.to_string())?;
        Ok(json!({ "local": verdict(&local), "global_only": verdict(&global) }))
    })())
}

/// The sampled harp demonstration with `chords` chords.
#[wasm_bindgen]
pub fn harp_demo(chords: usize) -> String {
    respond(
        catalog::harp_demo(chords.clamp(2, 64), DEFAULT_BUDGET)
            .map(|r| json!(r))
            .map_err(|e| e.to_string()),
    )
}
