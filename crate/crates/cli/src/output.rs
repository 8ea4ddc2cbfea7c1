//! Report rendering: compact JSON by default, an indented key/value listing with `--pretty`.

use serde_json::Value;
use std::fmt::Write as _;

pub fn render(v: &Value, pretty: bool) -> String {
    if !pretty {
        return format!("{v}\n");
    }
    let mut s = String::new();
    block(&mut s, v, 0);
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(t) => Some(t.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(xs.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn block(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in map {
                match scalar(x) {
                    Some(t) => {
                        let _ = writeln!(s, "{pad}{k:<width$}  {t}");
                    }
                    None => {
                        let _ = writeln!(s, "{pad}{k}:");
                        block(s, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(t) => {
                        let _ = writeln!(s, "{pad}{i:>3}. {t}");
                    }
                    None => {
                        let _ = writeln!(s, "{pad}{i:>3}.");
                        block(s, x, depth + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
