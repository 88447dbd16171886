use std::path::Path;

use serde::de::DeserializeOwned;
use wcorr::graphs::{parse_dot, GraphDocument, Labels};
use wcorr::qfock::FockBudget;
use wcorr::SimpleGraph;

use crate::error::CliError;
use crate::MATRIX_BUDGET_ENV;

enum Source {
    Inline(String),
    File { text: String, dot: bool },
}

/// An argument is inline JSON when it starts with `{`, otherwise a path.
fn read_source(arg: &str) -> Result<Source, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(Source::Inline(arg.to_string()));
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))?;
    let dot = matches!(path.extension().and_then(|e| e.to_str()), Some("dot" | "gv"));
    Ok(Source::File { text, dot })
}

pub fn load_json<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let text = match read_source(arg)? {
        Source::Inline(text) | Source::File { text, .. } => text,
    };
    Ok(serde_json::from_str(&text)?)
}

/// A graph from a `.dot`/`.gv` file, a JSON file or inline JSON.
pub fn load_graph(arg: &str) -> Result<(SimpleGraph, Labels), CliError> {
    match read_source(arg)? {
        Source::File { text, dot: true } => Ok(parse_dot(&text)?),
        Source::Inline(text) | Source::File { text, dot: false } => {
            let doc: GraphDocument = serde_json::from_str(&text)?;
            Ok(doc.into_graph()?)
        }
    }
}

/// Default budget, with the matrix cap overridable from the environment.
pub fn fock_budget() -> Result<FockBudget, CliError> {
    let mut budget = FockBudget::default();
    if let Ok(raw) = std::env::var(MATRIX_BUDGET_ENV) {
        let bytes: u128 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MATRIX_BUDGET_ENV} must be a positive integer, got {raw:?}")))?;
        if bytes == 0 {
            return Err(CliError::Input(format!("{MATRIX_BUDGET_ENV} must be positive")));
        }
        budget.max_matrix_bytes = bytes;
    }
    Ok(budget)
}
