//! JSON views of reports, verdicts and expressions. Every top-level
//! document carries `"schema": 1`. Objects are emitted with sorted keys, so
//! equal inputs give byte-identical output.

use gfr_core::distinguish::{Evidence, Verdict};
use gfr_core::factor::{FactorExpr, RewriteTrace, Rule};
use gfr_core::internal::{HRigidityReport, LinkWitness};
use gfr_core::{ExtNat, Graph, Label, VertexSet};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

pub fn label(l: &Label) -> Value {
    match l {
        Label::Int(i) => json!(i),
        Label::Name(s) => json!(s),
    }
}

pub fn set(s: &VertexSet) -> Value {
    Value::Array(s.iter().map(label).collect())
}

pub fn ext(n: ExtNat) -> Value {
    match n {
        ExtNat::Fin(k) => json!(k),
        ExtNat::Inf => json!("inf"),
    }
}

pub fn graph(g: &Graph) -> Value {
    json!({
        "vertices": g.labels().iter().map(label).collect::<Vec<_>>(),
        "edges": g.edge_labels().iter().map(|(a, b)| json!([label(a), label(b)])).collect::<Vec<_>>(),
    })
}

fn link_witness(w: &LinkWitness) -> Value {
    json!({ "hub": label(&w.hub), "set": set(&w.set), "middle": label(&w.middle) })
}

/// The rigidity part of a report: `h_rigid`, `conditions`, `witnesses`,
/// `notes`.
pub fn rigidity(r: &HRigidityReport) -> Value {
    json!({
        "h_rigid": r.h_rigid,
        "conditions": {
            "locally_finite": r.locally_finite,
            "internal_sets_are_vertices": r.internal_sets_are_vertices,
            "link_condition": r.link_condition,
            "connected": r.connected,
            "int_graph_well_defined": r.int_graph_well_defined(),
        },
        "witnesses": {
            "internal_set": r.internal_set_witness.as_ref().map(set),
            "link": r.link_witness.as_ref().map(link_witness),
        },
        "notes": r.notes,
    })
}

pub fn trace(t: &RewriteTrace) -> Value {
    Value::Array(
        t.steps
            .iter()
            .map(|s| {
                let mut v = json!({
                    "rule": s.rule.name(),
                    "path": s.path,
                    "before": s.before.to_string(),
                    "after": s.after.to_string(),
                    "extension": s.extension,
                });
                if let Rule::Amplify { left, right, ratio } = &s.rule {
                    v["left"] = json!(left);
                    v["right"] = json!(right);
                    v["ratio"] = json!(ratio.to_string());
                }
                v
            })
            .collect(),
    )
}

pub fn expression(e: &FactorExpr) -> Value {
    json!(e.to_string())
}

pub fn evidence(e: &Evidence) -> Value {
    match e {
        Evidence::Mapping(m) => json!({
            "type": "mapping",
            "mapping": m.iter().map(|(a, b)| json!([label(a), label(b)])).collect::<Vec<_>>(),
        }),
        Evidence::Certificate(c) => json!({
            "type": "certificate",
            "raw": [expression(&c.raw[0]), expression(&c.raw[1])],
            "simplification": [trace(&c.simplification[0]), trace(&c.simplification[1])],
            "normal": [expression(&c.normal[0]), expression(&c.normal[1])],
            "bridge": trace(&c.bridge),
            "replays": c.replays(),
        }),
        Evidence::InternalGraphs {
            internal,
            fingerprints_differ,
        } => json!({
            "type": "internal_graphs",
            "internal": [graph(&internal[0]), graph(&internal[1])],
            "fingerprints_differ": fingerprints_differ,
        }),
        Evidence::Radii { radius, internal } => json!({
            "type": "radii",
            "radius": [ext(radius[0]), ext(radius[1])],
            "internal": [graph(&internal[0]), graph(&internal[1])],
        }),
        Evidence::Hypotheses { failures } => json!({
            "type": "hypotheses",
            "failures": failures,
        }),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": v.kind.as_str(),
        "basis": v.basis.as_str(),
        "evidence": evidence(&v.evidence),
        "reports": { "g1": rigidity(&v.reports[0]), "g2": rigidity(&v.reports[1]) },
    })
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
