use serde_json::json;
use wcorr::graphs::{graphs_isomorphic, IsoOptions};

use crate::error::CliError;
use crate::input::load_graph;
use crate::Outcome;

pub fn rigid(arg: &str) -> Result<Outcome, CliError> {
    let (g, _) = load_graph(arg)?;
    let report = g.is_rigid();
    Outcome::json(&report, report.rigid)
}

pub fn iso(a: &str, b: &str, max_vertices: usize) -> Result<Outcome, CliError> {
    let (g1, l1) = load_graph(a)?;
    let (g2, l2) = load_graph(b)?;
    let mapping = graphs_isomorphic(&g1, &g2, Some(&l1), Some(&l2), IsoOptions { max_vertices })?;
    Outcome::json(
        &json!({ "isomorphic": mapping.is_some(), "mapping": mapping }),
        mapping.is_some(),
    )
}
