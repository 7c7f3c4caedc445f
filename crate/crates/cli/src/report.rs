//! JSON renderings of library results.

use majorlab::axioms::{AxiomReport, FaithfulnessReport, OrderEstimate};
use majorlab::catalytic::{TriState, Witness};
use majorlab::json::prob_vec_to_json;
use serde_json::{json, Value};

/// Finite floats as numbers, infinities as `"inf"` / `"-inf"`.
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Alpha { alpha, condition } => json!({ "alpha": real(*alpha), "condition": condition }),
        Witness::Catalyst { r, t } => json!({ "r": prob_vec_to_json(r), "t": prob_vec_to_json(t) }),
    }
}

pub fn tri_state(t: &TriState) -> Value {
    json!({
        "verdict": t.verdict.as_str(),
        "margin": real(t.margin),
        "witness": t.witness.as_ref().map(witness),
    })
}

pub fn axiom_report(r: &AxiomReport) -> Value {
    json!({
        "axiom": r.axiom,
        "passed": r.passed(),
        "instances": r.instances,
        "skipped": r.skipped,
        "worst_margin": real(r.worst_margin),
        "tolerance": r.tolerance,
        "violations": r.violations.iter().map(|v| json!({ "inputs": v.inputs, "margin": real(v.margin) })).collect::<Vec<_>>(),
    })
}

pub fn order(o: &OrderEstimate) -> Value {
    json!({
        "order": real(o.value),
        "estimate": "upper surrogate: minimum over a finite schedule",
        "units": "nats",
        "schedule": o.schedule,
        "ratios": o.ratios.iter().map(|&x| real(x)).collect::<Vec<_>>(),
    })
}

pub fn faithfulness(f: &FaithfulnessReport) -> Value {
    json!({
        "verdict": f.verdict.as_str(),
        "witness": f.witness.as_ref().map(|(p, q)| json!({ "p": prob_vec_to_json(p), "q": prob_vec_to_json(q) })),
        "order": order(&f.order),
        "pairs_tested": f.pairs_tested,
        "smallest_value": real(f.smallest_value),
    })
}
