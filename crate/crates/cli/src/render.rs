//! Plain-text rendering of result documents.
//!
//! Scalars print as `key = value`, flat lists of scalars as `(a, b, c)`,
//! nested objects indent by two spaces and list items start with `- `.

use serde_json::Value;

pub fn text(value: &Value) -> String {
    let mut out = String::new();
    block(value, 0, &mut out);
    out
}

fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|v| match v {
                    Value::Array(_) | Value::Object(_) => None,
                    other => inline(other),
                })
                .collect();
            parts.map(|p| format!("({})", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn block(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match inline(v) {
                    Some(s) => out.push_str(&format!("{pad}{key} = {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        block(v, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        // The first line of the nested block shares the
                        // dash.
                        let mut nested = String::new();
                        block(item, indent + 2, &mut nested);
                        out.push_str(&pad);
                        out.push_str("- ");
                        out.push_str(&nested[indent + 2..]);
                    }
                }
            }
        }
        other => {
            out.push_str(&pad);
            out.push_str(&inline(other).unwrap_or_default());
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn layout() {
        let v = json!({
            "utility": ["0", "1", "2"],
            "oriented": true,
            "points": [["1/2", "0", "1/2"], ["0", "1", "0"]],
            "witness": {"axiom": "independence", "alpha": "1/2"},
            "results": [{"query": ["0", "0", "1"], "result": "indifferent"}]
        });
        assert_eq!(
            text(&v),
            "utility = (0, 1, 2)\noriented = true\npoints:\n  - (1/2, 0, 1/2)\n  - (0, 1, 0)\n\
             witness:\n  axiom = independence\n  alpha = 1/2\n\
             results:\n  - query = (0, 0, 1)\n    result = indifferent\n"
        );
    }
}
