//! Browser front end for `arrangelat`.
//!
//! Every operation takes and returns strings so the page can pass the
//! arrangement JSON from a textarea. The plain functions are what the
//! tests exercise; the `#[wasm_bindgen]` wrappers only turn errors into
//! JS exceptions.

use std::fmt::Write as _;

use arrangelat::invariants::{check_mobius_additivity, check_triple_identity};
use arrangelat::lattice::build_lattice;
use arrangelat::perverse::{decompose_direct, decompose_recursive, report_text};
use arrangelat::{Arrangement, Family};
use wasm_bindgen::prelude::*;

const ROW_HEIGHT: usize = 90;
const COLUMN_WIDTH: usize = 110;
const MARGIN: usize = 40;

fn parse(json: &str) -> Result<Arrangement, String> {
    Arrangement::parse(json.as_bytes()).map_err(|e| e.to_string())
}

pub fn builtin_json(family: &str, n: usize, m: usize) -> Result<String, String> {
    let m = (family == "generic").then_some(m);
    let family = Family::from_name(family, Some(n), m).map_err(|e| e.to_string())?;
    let a = Arrangement::builtin(family).map_err(|e| e.to_string())?;
    Ok(a.serialize())
}

/// Hasse diagram of the intersection lattice, one row per codimension with
/// the ambient space at the bottom.
pub fn hasse_svg(json: &str) -> Result<String, String> {
    let a = parse(json)?;
    let l = build_lattice(&a);
    let mu = l.mobius();
    let rank = l.rank();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); rank + 1];
    for (i, f) in l.flats().iter().enumerate() {
        rows[f.codim()].push(i);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1);
    let width = 2 * MARGIN + widest * COLUMN_WIDTH;
    let height = 2 * MARGIN + rank * ROW_HEIGHT;
    let mut pos = vec![(0usize, 0usize); l.len()];
    for (codim, row) in rows.iter().enumerate() {
        let offset = (width - row.len() * COLUMN_WIDTH) / 2;
        for (k, &i) in row.iter().enumerate() {
            pos[i] = (offset + k * COLUMN_WIDTH + COLUMN_WIDTH / 2, height - MARGIN - codim * ROW_HEIGHT);
        }
    }

    let mut svg = String::new();
    write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"monospace\" font-size=\"12\">\n"
    )
    .unwrap();
    for (lo, hi) in l.covers() {
        let (x1, y1) = pos[lo];
        let (x2, y2) = pos[hi];
        writeln!(svg, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#888\"/>").unwrap();
    }
    for (i, f) in l.flats().iter().enumerate() {
        let (x, y) = pos[i];
        writeln!(
            svg,
            "<g><title>F{i}: dim {}, support {:?}</title><rect x=\"{}\" y=\"{}\" width=\"90\" height=\"34\" rx=\"4\" fill=\"#fff\" stroke=\"#333\"/><text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">F{i}</text><text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">μ={}</text></g>",
            f.dim(),
            f.support(),
            x - 45,
            y - 17,
            y - 3,
            y + 12,
            mu.get(i)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Text decomposition report, computed by both algorithms.
pub fn decomposition_report(json: &str) -> Result<String, String> {
    let a = parse(json)?;
    let direct = decompose_direct(&a);
    let mut out = report_text(&a, &direct).map_err(|e| e.to_string())?;
    let agree = decompose_recursive(&a) == direct;
    writeln!(out, "direct and recursive algorithms {}", if agree { "agree" } else { "DISAGREE" }).unwrap();
    Ok(out)
}

/// Deletion-restriction check at one pivot hyperplane.
pub fn triple_report(json: &str, pivot: usize) -> Result<String, String> {
    let a = parse(json)?;
    let t = check_triple_identity(&a, pivot).map_err(|e| e.to_string())?;
    let m = check_mobius_additivity(&a, pivot).map_err(|e| e.to_string())?;
    let mut out = String::new();
    writeln!(out, "pivot H{pivot}: {}", a.hyperplanes()[pivot]).unwrap();
    writeln!(out, "Π(A)   = {}", t.full).unwrap();
    writeln!(out, "Π(A′)  = {}", t.deletion).unwrap();
    writeln!(out, "Π(A″)  = {}", t.restriction).unwrap();
    writeln!(out, "Π(A) = Π(A′) + tΠ(A″): {}", if t.holds { "holds" } else { "FAILS" }).unwrap();
    writeln!(out, "|μ| additivity over {} flats: {}", m.rows.len(), if m.holds { "holds" } else { "FAILS" })
        .unwrap();
    Ok(out)
}

#[wasm_bindgen(js_name = builtinJson)]
pub fn builtin_json_js(family: &str, n: usize, m: usize) -> Result<String, JsError> {
    builtin_json(family, n, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hasseSvg)]
pub fn hasse_svg_js(json: &str) -> Result<String, JsError> {
    hasse_svg(json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = decompositionReport)]
pub fn decomposition_report_js(json: &str) -> Result<String, JsError> {
    decomposition_report(json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tripleReport)]
pub fn triple_report_js(json: &str, pivot: usize) -> Result<String, JsError> {
    triple_report(json, pivot).map_err(|e| JsError::new(&e))
}
