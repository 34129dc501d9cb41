//! CSV and JSON encoding helpers. Cells are always quoted so exact
//! rationals like `1/2` survive any downstream parser.

use alcove_core::affine::AffineElement;
use alcove_core::chains::Chain;
use alcove_core::exact::fmt_q;
use serde_json::Value;

pub fn csv_cell(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn csv_row<S: AsRef<str>>(cells: &[S]) -> String {
    cells.iter().map(|c| csv_cell(c.as_ref())).collect::<Vec<_>>().join(",")
}

pub fn affine_element_json(w: &AffineElement) -> Value {
    let rows: Vec<Vec<i64>> = (0..w.u.n)
        .map(|i| (0..w.u.n).map(|j| w.u.get(i, j)).collect())
        .collect();
    serde_json::json!({ "translation": w.x, "linear": rows })
}

pub fn chain_json(chain: &Chain) -> Value {
    let terms: Vec<Value> = chain
        .terms
        .iter()
        .map(|(cell, coeff)| {
            serde_json::json!({
                "facet": cell.facet,
                "rep": affine_element_json(&cell.rep),
                "coeff": fmt_q(coeff),
            })
        })
        .collect();
    serde_json::json!({ "degree": chain.degree, "terms": terms })
}
