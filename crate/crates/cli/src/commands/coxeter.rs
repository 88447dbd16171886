use std::sync::Arc;

use serde_json::json;
use wcorr::coxeter::{enumerate_elements, equal as words_equal, is_reduced, normal_form, CoxeterWord};
use wcorr::Budget;

use crate::error::CliError;
use crate::input::load_graph;
use crate::Outcome;

pub fn reduce(graph: &str, word: &str) -> Result<Outcome, CliError> {
    let (g, _) = load_graph(graph)?;
    let w = CoxeterWord::parse(Arc::new(g), word)?;
    let nf = normal_form(&w);
    Outcome::json(
        &json!({
            "normal_form": nf.word().names(),
            "length": nf.length(),
            "input_reduced": is_reduced(&w),
        }),
        true,
    )
}

pub fn equal(graph: &str, word1: &str, word2: &str) -> Result<Outcome, CliError> {
    let (g, _) = load_graph(graph)?;
    let g = Arc::new(g);
    let w1 = CoxeterWord::parse(g.clone(), word1)?;
    let w2 = CoxeterWord::parse(g, word2)?;
    let eq = words_equal(&w1, &w2)?;
    Outcome::json(
        &json!({
            "equal": eq,
            "normal_form_1": normal_form(&w1).word().names(),
            "normal_form_2": normal_form(&w2).word().names(),
        }),
        eq,
    )
}

pub fn growth(graph: &str, max_length: usize, budget: usize) -> Result<Outcome, CliError> {
    if budget == 0 {
        return Err(CliError::Input("budget must be positive".into()));
    }
    let (g, _) = load_graph(graph)?;
    let layers = enumerate_elements(&Arc::new(g), max_length, &Budget::new(budget))?;
    let mut counts: Vec<usize> = layers.iter().map(Vec::len).collect();
    // a finite group stops early; the remaining spheres are empty
    counts.resize(max_length + 1, 0);
    Outcome::json(&json!({ "counts": counts, "max_length": max_length }), true)
}
