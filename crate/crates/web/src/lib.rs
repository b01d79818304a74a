//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string; the `*_json` functions hold the logic and
//! are plain Rust so they can be tested off the browser.

use bwtcat_core::families::{fibonacci, t_family_word, wk_word};
use bwtcat_core::sensitivity::{apply_edit, EditOp};
use bwtcat_core::verify::WkVariant;
use bwtcat_core::word::truncate_last;
use bwtcat_core::{BwtMatrix, Symbol, END_MARKER_BYTE};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest word whose full matrix is sent to the page.
pub const MAX_MATRIX_LEN: usize = 256;
/// Longest word accepted by the edit explorer.
pub const MAX_EDIT_LEN: usize = 1 << 16;
/// Largest family parameter plotted.
pub const MAX_SERIES_K: usize = 60;

#[derive(Debug, Serialize)]
pub struct MatrixRow {
    pub start: usize,
    pub rotation: String,
    pub last: String,
}

#[derive(Debug, Serialize)]
pub struct MatrixView {
    pub bwt: String,
    pub runs: u64,
    pub rows: Vec<MatrixRow>,
    /// Row index where each run of the last column starts.
    pub run_starts: Vec<usize>,
}

fn checked_word(word: &str, dollar: bool, max: usize) -> Result<Vec<u8>, String> {
    let w = word.as_bytes().to_vec();
    if w.len() > max {
        return Err(format!("word is longer than {max} bytes"));
    }
    if dollar && w.contains(&END_MARKER_BYTE) {
        return Err("'$' is reserved for the end marker".into());
    }
    Ok(w)
}

fn matrix(w: &[u8], dollar: bool) -> Result<BwtMatrix, String> {
    if dollar {
        Ok(BwtMatrix::with_end_marker(w))
    } else {
        BwtMatrix::rotations(w).map_err(|e| e.to_string())
    }
}

pub fn matrix_json(word: &str, dollar: bool) -> Result<String, String> {
    let w = checked_word(word, dollar, MAX_MATRIX_LEN)?;
    let m = matrix(&w, dollar)?;
    let last = m.last_column();
    let rows = (0..m.len())
        .map(|i| MatrixRow {
            start: m.conjugate_array()[i],
            rotation: Symbol::render_string(&m.row(i)),
            last: last[i].to_string(),
        })
        .collect();
    let run_starts = (0..last.len())
        .filter(|&i| i == 0 || last[i] != last[i - 1])
        .collect();
    let view = MatrixView {
        bwt: Symbol::render_string(last),
        runs: m.run_count(),
        rows,
        run_starts,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct Side {
    pub word: String,
    pub bwt: Option<String>,
    pub r: Option<u64>,
    pub bwt_dollar: String,
    pub r_dollar: u64,
}

fn side(w: &[u8]) -> Side {
    let rot = BwtMatrix::rotations(w).ok();
    let dol = BwtMatrix::with_end_marker(w);
    Side {
        word: Symbol::render_string(&Symbol::lift(w)),
        bwt: rot.as_ref().map(|m| Symbol::render_string(m.last_column())),
        r: rot.map(|m| m.run_count()),
        bwt_dollar: Symbol::render_string(dol.last_column()),
        r_dollar: dol.run_count(),
    }
}

#[derive(Debug, Serialize)]
pub struct EditView {
    pub before: Side,
    pub after: Side,
}

/// `op` is `insert`, `delete` or `substitute`; `sym` is ignored for deletions.
pub fn edit_json(word: &str, op: &str, pos: usize, sym: &str) -> Result<String, String> {
    let w = checked_word(word, false, MAX_EDIT_LEN)?;
    let byte = || match sym.as_bytes() {
        [b] => Ok(*b),
        _ => Err("the symbol must be a single byte".to_string()),
    };
    let op = match op {
        "insert" => EditOp::Insert { pos, sym: byte()? },
        "delete" => EditOp::Delete { pos },
        "substitute" => EditOp::Substitute { pos, sym: byte()? },
        other => return Err(format!("unknown edit {other:?}")),
    };
    let edited = apply_edit(&w, op).map_err(|e| e.to_string())?;
    let view = EditView {
        before: side(&w),
        after: side(&edited),
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct SeriesPoint {
    pub k: usize,
    pub length: usize,
    /// Named run counts for this parameter, in a fixed order per family.
    pub values: Vec<(String, u64)>,
}

fn runs(w: &[u8]) -> u64 {
    BwtMatrix::rotations(w).map(|m| m.run_count()).unwrap_or(0)
}

fn runs_dollar(w: &[u8]) -> u64 {
    BwtMatrix::with_end_marker(w).run_count()
}

fn point(family: &str, k: usize) -> Result<SeriesPoint, String> {
    let err = |e: bwtcat_core::Error| e.to_string();
    let (length, values) = match family {
        "wk" => {
            let w = wk_word(k).map_err(err)?;
            let mut values = vec![
                ("r(w_k)".to_string(), runs(&w)),
                ("r_$(w_k)".to_string(), runs_dollar(&w)),
            ];
            for v in [
                WkVariant::AppendA,
                WkVariant::Truncated,
                WkVariant::TruncatedB,
            ] {
                values.push((format!("r({})", v.label()), runs(&v.word(k).map_err(err)?)));
            }
            (w.len(), values)
        }
        "fibonacci" => {
            let s = fibonacci(2 * k);
            let hat = truncate_last(&s).map_err(err)?;
            let mut hat_a = hat.clone();
            hat_a.push(b'a');
            let values = vec![
                ("r(s)".to_string(), runs(&s)),
                ("r(ŝ)".to_string(), runs(&hat)),
                ("r(ŝa)".to_string(), runs(&hat_a)),
                ("r_$(s)".to_string(), runs_dollar(&s)),
            ];
            (s.len(), values)
        }
        "tfam" => {
            let w = t_family_word(k, 2).map_err(err)?;
            (
                w.len(),
                vec![
                    ("r".to_string(), runs(&w)),
                    ("r_$".to_string(), runs_dollar(&w)),
                ],
            )
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    Ok(SeriesPoint { k, length, values })
}

/// Run counts across a parameter range. The Fibonacci family uses order `2k`.
pub fn series_json(family: &str, from: usize, to: usize) -> Result<String, String> {
    let cap = if family == "fibonacci" {
        12
    } else {
        MAX_SERIES_K
    };
    if from > to || to > cap {
        return Err(format!("range must satisfy from <= to <= {cap}"));
    }
    let points = (from..=to)
        .map(|k| point(family, k))
        .collect::<Result<Vec<_>, _>>()?;
    serde_json::to_string(&points).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn bwt_matrix(word: &str, dollar: bool) -> Result<String, JsError> {
    matrix_json(word, dollar).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn edit_effect(word: &str, op: &str, pos: usize, sym: &str) -> Result<String, JsError> {
    edit_json(word, op, pos, sym).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn family_series(family: &str, from: usize, to: usize) -> Result<String, JsError> {
    series_json(family, from, to).map_err(|e| JsError::new(&e))
}
