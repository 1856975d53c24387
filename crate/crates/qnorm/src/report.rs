//! Machine-readable reports.
//!
//! Reports are `serde_json` values; objects keep their keys sorted, so the
//! serialized form is canonical. Every section carries a `tier` and no
//! report contains timings.

use qnorm_core::engine::{
    C1Result, C2Result, DiagnosisConfig, EvidenceTier, InclusionReport, MembershipVerdict, Normality, QnCertificate,
    RefutationReason, Side, Status,
};
use qnorm_core::{EngineError, GroupDescriptor, GroupElement, Truth};
use serde_json::{json, Value};

pub const EXACT: &str = "exact";
pub const BALL_LIMITED: &str = "ball-limited";
pub const NUMERICAL: &str = "numerical";

pub fn truth(t: Truth) -> &'static str {
    match t {
        Truth::Yes => "yes",
        Truth::No => "no",
        Truth::Unknown => "unknown",
    }
}

pub fn status(s: Status) -> &'static str {
    match s {
        Status::In => "in",
        Status::Out => "out",
        Status::Unknown => "unknown",
    }
}

fn normality(n: Normality) -> &'static str {
    match n {
        Normality::Normalizes => "normalizes",
        Normality::DoesNotNormalize => "does-not-normalize",
        Normality::Unknown => "unknown",
    }
}

fn refutation(r: &RefutationReason) -> String {
    match r {
        RefutationReason::FreeGraph => "intersection with a conjugate has infinite index".into(),
        RefutationReason::ProductComponent(side, inner) => {
            let s = if *side == Side::Left { "left" } else { "right" };
            format!("{s} component: {}", refutation(inner))
        }
    }
}

pub fn certificate(g: &GroupDescriptor, c: &QnCertificate) -> Value {
    json!({
        "element": g.format(&c.element),
        "cover": c.cover.iter().map(|x| g.format(x)).collect::<Vec<_>>(),
        "cover_size": c.cover_size(),
        "generators": c.generators.iter().map(|x| g.format(x)).collect::<Vec<_>>(),
        "transitions": c.transitions,
        "tail_clauses": c.tails.iter().map(|t| json!({
            "path": t.path.iter().map(|s| if *s == Side::Left { "left" } else { "right" }).collect::<Vec<_>>(),
            "subgroup_index": t.n,
            "from_generator": t.from,
        })).collect::<Vec<_>>(),
    })
}

/// Verdict with its tier: certificates and refutations are exact, budget
/// exhaustion is ball-limited.
pub fn verdict(g: &GroupDescriptor, v: &Result<MembershipVerdict, EngineError>, full: bool) -> Value {
    match v {
        Ok(MembershipVerdict::CertifiedIn(c)) => {
            let mut out = json!({ "status": "certified-in", "cover_size": c.cover_size(), "tier": EXACT });
            if full {
                out["certificate"] = certificate(g, c);
            }
            out
        }
        Ok(MembershipVerdict::CertifiedOut(r)) => {
            json!({ "status": "certified-out", "reason": refutation(r), "tier": EXACT })
        }
        Ok(MembershipVerdict::Unknown { budget, orbit_size_reached }) => json!({
            "status": "unknown",
            "budget": budget,
            "orbit_size_reached": orbit_size_reached,
            "tier": BALL_LIMITED,
        }),
        Err(e) => json!({ "status": "unknown", "error": e.to_string(), "tier": BALL_LIMITED }),
    }
}

fn c1_result(g: &GroupDescriptor, r: &Result<C1Result, EngineError>) -> Value {
    match r {
        Ok(C1Result::FiniteConjugates(c)) => json!({
            "result": "finite",
            "conjugates": c.iter().map(|x| g.format(x)).collect::<Vec<_>>(),
            "tier": EXACT,
        }),
        Ok(C1Result::AtLeast(n)) => json!({ "result": "at-least", "count": n, "tier": BALL_LIMITED }),
        Err(e) => json!({ "result": "unknown", "error": e.to_string(), "tier": BALL_LIMITED }),
    }
}

fn optional_tier(t: Option<EvidenceTier>) -> Value {
    match t {
        Some(t) => json!({ "holds": true, "tier": t.as_str() }),
        None => json!({ "holds": false, "tier": EXACT }),
    }
}

fn diagnosis_summary(r: &InclusionReport) -> (&'static str, &'static str) {
    let f = &r.flags;
    let pick = |label: &'static str, t: EvidenceTier| (label, t.as_str());
    if let Some(t) = f.cartan {
        pick("cartan", t)
    } else if let Some(t) = f.singular {
        pick("singular-masa", t)
    } else if let Some(t) = f.masa {
        pick("masa", t)
    } else {
        ("none", BALL_LIMITED)
    }
}

/// Phrase used when the assertion rests on non-exact ingredients.
pub fn evidence_phrase(label: &str, tier: &str) -> String {
    match (label, tier) {
        ("none", _) => "no masa evidence".into(),
        (l, EXACT) => format!("{l} (group-side hypotheses verified exactly)"),
        (l, t) => format!("evidence consistent with {l} ({t})"),
    }
}

pub fn group_report(g: &GroupDescriptor, r: &InclusionReport, config: &DiagnosisConfig) -> Value {
    let fmt = |x: &GroupElement| g.format(x);
    let counts = |st: Status| r.gamma_ball.iter().filter(|e| e.status() == st).count();
    let ball: Vec<Value> = r
        .gamma_ball
        .iter()
        .map(|e| {
            json!({
                "element": fmt(&e.element),
                "in_subgroup": truth(e.in_subgroup),
                "verdict": verdict(g, &e.verdict, false),
            })
        })
        .collect();
    let h1: Vec<Value> =
        r.h1_ball.iter().map(|(x, s)| json!({ "element": fmt(x), "status": status(*s) })).collect();
    let c2 = match &r.c2.result {
        Ok(C2Result::Witness(h)) => json!({ "result": "witness", "h": fmt(h) }),
        Ok(C2Result::NotFoundInWindow { searched }) => json!({ "result": "not-found", "searched": searched }),
        Err(e) => json!({ "result": "unknown", "error": e.to_string() }),
    };
    let probes: Vec<Value> = r
        .probes
        .iter()
        .map(|p| {
            let (h1_status, h1_tier) = match &p.h1 {
                Ok(v) => (status(v.status()), if v.status() == Status::Unknown { BALL_LIMITED } else { EXACT }),
                Err(_) => ("unknown", BALL_LIMITED),
            };
            json!({
                "element": fmt(&p.element),
                "in_subgroup": truth(p.in_subgroup),
                "qn1": verdict(g, &p.qn1, true),
                "h1": { "status": h1_status, "tier": h1_tier },
                "normalizes": match &p.normalizes {
                    Ok(n) => json!({ "value": normality(*n), "tier": if *n == Normality::Unknown { BALL_LIMITED } else { EXACT } }),
                    Err(e) => json!({ "value": "unknown", "error": e.to_string(), "tier": BALL_LIMITED }),
                },
                "c1": p.c1.as_ref().map(|c| c1_result(g, c)),
            })
        })
        .collect();
    let (label, tier) = diagnosis_summary(r);
    json!({
        "kind": "group-inclusion",
        "family": r.family,
        "subgroup_generators": r.subgroup_generators.iter().map(fmt).collect::<Vec<_>>(),
        "config": {
            "budget": config.budget,
            "radius": config.radius,
            "threshold": config.threshold,
            "c2_radius": config.c2_radius,
            "tier": EXACT,
        },
        "gamma_ball": {
            "radius": config.radius,
            "entries": ball,
            "certified_in": counts(Status::In),
            "certified_out": counts(Status::Out),
            "unknown": counts(Status::Unknown),
            "tier": if counts(Status::Unknown) == 0 { EXACT } else { BALL_LIMITED },
        },
        "h1_ball": { "entries": h1, "tier": BALL_LIMITED },
        "h2_witnesses": { "elements": r.h2_witnesses.iter().map(fmt).collect::<Vec<_>>(), "tier": BALL_LIMITED },
        "c1": {
            "holds": truth(r.c1.holds.value),
            "theorem": r.c1.theorem,
            "results": r.c1.results.iter().map(|(x, c)| {
                let mut v = c1_result(g, c);
                v["element"] = json!(fmt(x));
                v
            }).collect::<Vec<_>>(),
            "tier": r.c1.holds.tier.as_str(),
        },
        "c2": {
            "elements": r.c2.elements.iter().map(fmt).collect::<Vec<_>>(),
            "search": c2,
            "tier": r.c2.tier.as_str(),
        },
        "c3": {
            "holds": truth(r.c3.holds.value),
            "theorem": r.c3.theorem,
            "counterexample": r.c3.counterexample.as_ref().map(fmt),
            "checked": r.c3.checked,
            "unknown": r.c3.unknown.iter().map(fmt).collect::<Vec<_>>(),
            "tier": r.c3.holds.tier.as_str(),
        },
        "normality": { "value": normality(r.normality.value), "tier": r.normality.tier.as_str() },
        "abelian": { "value": truth(r.abelian.value), "tier": r.abelian.tier.as_str() },
        "flags": {
            "masa": optional_tier(r.flags.masa),
            "singular": optional_tier(r.flags.singular),
            "cartan": optional_tier(r.flags.cartan),
        },
        "diagnosis": { "label": label, "statement": evidence_phrase(label, tier), "tier": tier },
        "probes": { "entries": probes, "tier": EXACT },
        "inconsistencies": { "messages": r.inconsistencies, "tier": EXACT },
    })
}

/// Canonical serialization.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are plain values");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}: ({} items)\n", items.len()));
                        for i in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render(i, indent + 2, out);
                        }
                    }
                    Value::Array(items) => {
                        let parts: Vec<String> =
                            items.iter().map(|i| if i.is_array() { i.to_string() } else { scalar(i) }).collect();
                        out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for i in items {
                render(i, indent, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

/// Text rendering derived from the JSON document.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_follows_json() {
        let v = json!({ "b": { "tier": "exact", "x": [1, 2] }, "a": "yes", "c": [{ "k": null }] });
        assert_eq!(to_text(&v), "a: yes\nb:\n  tier: exact\n  x: [1, 2]\nc: (1 items)\n  -\n    k: -\n");
        assert!(to_json(&v).starts_with("{\n  \"a\""));
    }

    #[test]
    fn phrases_hedge_inexact_tiers() {
        assert!(evidence_phrase("cartan", EXACT).starts_with("cartan"));
        assert!(evidence_phrase("singular-masa", BALL_LIMITED).starts_with("evidence consistent with"));
    }
}
