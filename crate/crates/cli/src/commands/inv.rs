use serde_json::json;
use wcorr::correlation::{gf_distinguish, tensor_match as match_blocks, FactorClassLabel, TensorSignature};

use crate::error::CliError;
use crate::Outcome;

pub fn gf(family: &[usize], family_prime: &[usize]) -> Result<Outcome, CliError> {
    let report = gf_distinguish(family, family_prime)?;
    Outcome::json(&report, true)
}

fn labels<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Vec<FactorClassLabel>, CliError> {
    items
        .into_iter()
        .map(|s| FactorClassLabel::new(s.trim()).map_err(CliError::from))
        .collect()
}

pub fn tensor_match(a: &[String], b: &[String]) -> Result<Outcome, CliError> {
    let a = labels(a.iter().map(String::as_str))?;
    let b = b
        .iter()
        .map(|block| labels(block.split(',')).map(TensorSignature::new))
        .collect::<Result<Vec<_>, _>>()?;
    let partition = match_blocks(&a, &b)?;
    Outcome::json(&json!({ "partition": partition }), true)
}
