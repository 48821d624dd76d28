use serde_json::{json, Map, Value};

/// Everything a run prints. `elapsed_ms` is only filled in with `--timing`
/// so that reports stay reproducible byte for byte.
pub struct CommandReport {
    pub command: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub field: String,
    pub seed: u64,
    pub result: Value,
    pub elapsed_ms: Option<u128>,
}

impl CommandReport {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|(p, h)| json!({ "path": p, "sha256": h }))
            .collect();
        m.insert("inputs".into(), Value::Array(inputs));
        m.insert("field".into(), json!(self.field));
        m.insert("seed".into(), json!(self.seed));
        m.insert("result".into(), self.result.clone());
        if let Some(t) = self.elapsed_ms {
            m.insert("elapsed_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: algmax {}\n", self.command.join(" ")));
        for (p, h) in &self.inputs {
            out.push_str(&format!("input: {p} sha256={h}\n"));
        }
        out.push_str(&format!("field: {}\nseed: {}\n", self.field, self.seed));
        if let Value::Object(m) = &self.result {
            for (k, v) in m {
                render(&mut out, 0, k, v);
            }
        }
        if let Some(t) = self.elapsed_ms {
            out.push_str(&format!("elapsed_ms: {t}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if s.is_empty() => Some("(none)".into()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{key}: (none)\n")),
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            let s: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", s.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for x in items {
                match x {
                    Value::Object(m) if m.values().all(|y| scalar(y).is_some() || is_flat_list(y)) => {
                        let parts: Vec<String> = m.iter().map(|(k, y)| format!("{k}={}", inline(y))).collect();
                        out.push_str(&format!("{pad}  - {}\n", parts.join(" ")));
                    }
                    Value::Object(m) => {
                        out.push_str(&format!("{pad}  -\n"));
                        for (k, y) in m {
                            render(out, indent + 4, k, y);
                        }
                    }
                    other => out.push_str(&format!("{pad}  - {}\n", inline(other))),
                }
            }
        }
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, y) in m {
                render(out, indent + 2, k, y);
            }
        }
        _ => unreachable!(),
    }
}

fn is_flat_list(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if xs.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(",")),
        other => scalar(other).unwrap_or_else(|| other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let r = CommandReport {
            command: vec!["maxdim".into(), "m3.alg".into()],
            inputs: vec![("m3.alg".into(), "00".into())],
            field: "Q".into(),
            seed: 0,
            result: json!({"dim": 9, "blocks": [3], "basis": ["e11", "e12"], "families": [{"k": 1, "d": [1, 2]}]}),
            elapsed_ms: None,
        };
        assert_eq!(
            r.to_text(),
            "command: algmax maxdim m3.alg\ninput: m3.alg sha256=00\nfield: Q\nseed: 0\ndim: 9\nblocks: [3]\n\
             basis:\n  - e11\n  - e12\nfamilies:\n  - k=1 d=[1,2]\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let r = CommandReport {
            command: vec!["x".into()],
            inputs: vec![],
            field: "F2".into(),
            seed: 3,
            result: json!({"a": [1, 2]}),
            elapsed_ms: None,
        };
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r.to_json());
    }
}
