use serde_json::json;
use wcorr::graph_product::{gp_normal_form, GammaPrimeDescriptor, ProductDescriptor};
use wcorr::Budget;

use crate::error::CliError;
use crate::input::load_json;
use crate::Outcome;

pub fn normal_form(arg: &str) -> Result<Outcome, CliError> {
    let desc: ProductDescriptor = load_json(arg)?;
    let product = desc.product()?;
    let raw = desc
        .syllables
        .iter()
        .map(|s| product.syllable_from_doc(s))
        .collect::<Result<Vec<_>, _>>()?;
    let element = gp_normal_form(&product, raw)?;
    Outcome::json(
        &json!({
            "normal_form": element.to_docs(),
            "syllable_length": element.syllable_length(),
            "display": element.to_string(),
        }),
        true,
    )
}

pub fn gamma_prime(arg: &str) -> Result<Outcome, CliError> {
    let desc: GammaPrimeDescriptor = load_json(arg)?;
    let c = desc.build()?;
    let sub = c.subgroup();
    let target = c.target();
    Outcome::json(
        &json!({
            "graph": c.target_document(),
            "vertex_count": target.graph().vertex_count(),
            "expected_vertex_count": c.expected_vertex_count(),
            "source_rigid": c.source().graph().is_rigid().rigid,
            "rigid": target.graph().is_rigid().rigid,
            "s1_label": target.labels().get(c.s1()),
            "index": sub.index(),
            "coset_representatives": sub.coset_representatives(),
            "schreier_generators": sub.schreier_generators(),
            "coset_action": c.coset_action(),
        }),
        true,
    )
}

pub fn verify(
    arg: &str,
    radius: usize,
    pairs: usize,
    pair_radius: usize,
    seed: u64,
    budget: usize,
) -> Result<Outcome, CliError> {
    if budget == 0 {
        return Err(CliError::Input("budget must be positive".into()));
    }
    let desc: GammaPrimeDescriptor = load_json(arg)?;
    let c = desc.build()?;
    let target_graph = c.target().graph();
    let vertex_count_ok = target_graph.vertex_count() == c.expected_vertex_count();
    let source_rigid = c.source().graph().is_rigid().rigid;
    let rigid = target_graph.is_rigid().rigid;
    let rigidity_ok = !source_rigid || rigid;
    let links_ok = c.projection_preserves_links();
    let action = c.coset_action();
    let action_ok = action.transitive && action.index == desc.k && action.phi_generators_stabilize;
    let injectivity = c.verify_phi_injective_on_ball(radius, &Budget::new(budget));
    let homomorphism = c.check_homomorphism(pairs, pair_radius, seed);
    let passed = vertex_count_ok && rigidity_ok && links_ok && action_ok && injectivity.passed && homomorphism.passed;
    Outcome::json(
        &json!({
            "passed": passed,
            "vertex_count_ok": vertex_count_ok,
            "source_rigid": source_rigid,
            "rigid": rigid,
            "projection_preserves_links": links_ok,
            "coset_action": action,
            "injectivity": injectivity,
            "homomorphism": homomorphism,
        }),
        passed,
    )
}
