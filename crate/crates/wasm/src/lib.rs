//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper around a plain function returning a JSON
//! string, so the logic is tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use atomforge::classify::{canonical_form, classify, Mode};
use atomforge::localmodel::build_local_model;
use atomforge::render::{diagram_svg, local_model_svg};
use atomforge::{build_atom, find_full_ways, parse_diagram, SurfaceInvariants};

/// Classification above this genus is too slow for a page.
pub const MAX_DEMO_GENUS: usize = 3;
pub const MAX_DEMO_K: usize = 24;

fn invariants(inv: &SurfaceInvariants) -> Value {
    json!({
        "orientable": inv.orientable,
        "euler": inv.euler_characteristic,
        "boundary": inv.boundary_components,
        "genus": inv.genus(),
        "crosscap": inv.crosscap_number(),
    })
}

pub fn describe_diagram(text: &str) -> Result<String, String> {
    let d = parse_diagram(text.trim()).map_err(|e| e.to_string())?;
    let atom = build_atom(&d);
    let closed = match atom.close_up() {
        Ok(c) => invariants(&c.invariants()),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let full_ways = find_full_ways(&d);
    Ok(json!({
        "encoding": d.encode(),
        "svg": diagram_svg(&d),
        "atom": invariants(&atom.invariants()),
        "closed": closed,
        "full_ways": full_ways.iter().map(|w| &w.points).collect::<Vec<_>>(),
        "canonical_atom": canonical_form(&d, Mode::Atom),
        "canonical_fatom": canonical_form(&d, Mode::FAtom),
    })
    .to_string())
}

pub fn catalog(genus: usize, mode: &str) -> Result<String, String> {
    if genus == 0 || genus > MAX_DEMO_GENUS {
        return Err(format!("genus must lie in 1..={MAX_DEMO_GENUS}"));
    }
    let mode: Mode = mode.parse()?;
    let cat = classify(genus, true, mode).map_err(|e| e.to_string())?;
    let classes: Vec<Value> = cat
        .classes
        .iter()
        .map(|d| json!({ "encoding": d.encode(), "svg": diagram_svg(d) }))
        .collect();
    Ok(json!({
        "genus": genus,
        "mode": mode,
        "group": cat.group_used,
        "count": cat.count,
        "classes": classes,
    })
    .to_string())
}

pub fn local_model(k: usize) -> Result<String, String> {
    if k == 0 || k > MAX_DEMO_K {
        return Err(format!("k must lie in 1..={MAX_DEMO_K}"));
    }
    let m = build_local_model(k);
    Ok(json!({
        "k": k,
        "polynomial": m.polynomial(),
        "rays": m.ray_angles().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "svg": local_model_svg(&m),
    })
    .to_string())
}

#[wasm_bindgen(js_name = describeDiagram)]
pub fn describe_diagram_js(text: &str) -> Result<String, JsValue> {
    describe_diagram(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = catalog)]
pub fn catalog_js(genus: usize, mode: &str) -> Result<String, JsValue> {
    catalog(genus, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = localModel)]
pub fn local_model_js(k: usize) -> Result<String, JsValue> {
    local_model(k).map_err(|e| JsValue::from_str(&e))
}
