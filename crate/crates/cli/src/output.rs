use genusgauge_core::{Condition, EmbedQuery, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// The structured form of every command's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub violated: Vec<String>,
    pub certificate: Option<Value>,
    pub exact: bool,
}

impl Envelope {
    pub fn new(command: &str, inputs: Value, result: Value, exact: bool) -> Self {
        Envelope {
            command: command.into(),
            inputs,
            result,
            violated: vec![],
            certificate: None,
            exact,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }
}

pub fn condition_name(c: Condition) -> String {
    match serde_json::to_value(c) {
        Ok(Value::String(s)) => s,
        _ => unreachable!("conditions serialize as strings"),
    }
}

pub fn verdict_envelope(query: &EmbedQuery, v: &Verdict) -> Envelope {
    Envelope {
        command: "feasible".into(),
        inputs: serde_json::to_value(query).expect("query serializes"),
        result: json!({ "feasible": v.feasible, "witness": v.witness }),
        violated: v.violated.iter().map(|c| condition_name(*c)).collect(),
        certificate: v
            .certificate
            .as_ref()
            .map(|c| serde_json::to_value(c).expect("certificate serializes")),
        exact: v.exact,
    }
}

/// Human-readable verdict.
pub fn verdict_text(query: &EmbedQuery, v: &Verdict) -> String {
    let status = match (v.feasible, v.exact) {
        (false, _) => "infeasible",
        (true, true) => "feasible",
        (true, false) => "feasible (no obstruction applies; not a proof of existence)",
    };
    let mut out = format!("h = {}, e = {}: {status}\n", query.h, query.e);
    for c in &v.violated {
        out.push_str(&format!("violated: {c}\n"));
    }
    if let Some(c) = &v.certificate {
        out.push_str(&format!(
            "certificate: genus {} base surface plus {} copies of RP² (Euler +2) and {} (Euler −2)\n",
            c.base_genus, c.counts[0], c.counts[1]
        ));
    }
    if let Some(w) = &v.witness {
        out.push_str(&format!(
            "witness: k = {}, e′ = {}, σ(Z) = {}, b₂(Z) = {}\n",
            w.k, w.e_prime, w.sigma_z, w.b2_z
        ));
    }
    out
}

/// One-line verdict used by fixtures: `feasible`, `feasible counts=a,b`
/// or `infeasible violated=c1,c2`.
pub fn verdict_summary(v: &Verdict) -> String {
    if v.feasible {
        match &v.certificate {
            Some(c) => format!("feasible counts={},{}", c.counts[0], c.counts[1]),
            None => "feasible".into(),
        }
    } else {
        let names: Vec<String> = v.violated.iter().map(|c| condition_name(*c)).collect();
        format!("infeasible violated={}", names.join(","))
    }
}
