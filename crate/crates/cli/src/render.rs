//! Markdown rendering of a JSON report.

use std::fmt::Write;

use serde_json::{Map, Value};

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[&Map<String, Value>]) {
    let Some(first) = rows.first() else {
        return;
    };
    let keys: Vec<&String> = first.keys().collect();
    let header: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(keys.len()));
    for row in rows {
        let cells: Vec<String> = keys.iter().map(|k| cell(&row[k.as_str()])).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out.push('\n');
}

fn resolution(out: &mut String, r: &Map<String, Value>) {
    let _ = writeln!(
        out,
        "### {} ({}), pd {}\n",
        cell(&r["module"]),
        cell(&r["side"]),
        cell(&r["pd"])
    );
    let Some(steps) = r.get("steps").and_then(Value::as_array) else {
        return;
    };
    for step in steps {
        let terms = match &step["projectives"] {
            Value::Array(vs) => vs.iter().map(cell).collect::<Vec<_>>().join(", "),
            _ => cell(&step["counts"]),
        };
        let _ = writeln!(out, "- P_{}: [{}]", cell(&step["k"]), terms);
    }
    out.push('\n');
}

fn section(out: &mut String, name: &str, v: &Value) {
    match v {
        Value::Null => return,
        Value::Array(a) if a.is_empty() => return,
        Value::Object(o) if o.is_empty() => return,
        _ => {}
    }
    let _ = writeln!(out, "## {name}\n");
    match v {
        Value::Object(o) => {
            let mut scalars = Map::new();
            for (k, x) in o {
                match x {
                    Value::Array(a) if a.iter().all(Value::is_object) && !a.is_empty() => {
                        let _ = writeln!(out, "**{k}**\n");
                        let rows: Vec<&Map<String, Value>> =
                            a.iter().filter_map(Value::as_object).collect();
                        table(out, &rows);
                    }
                    other => {
                        scalars.insert(k.clone(), other.clone());
                    }
                }
            }
            if !scalars.is_empty() {
                let _ = writeln!(out, "| field | value |\n|---|---|");
                for (k, x) in &scalars {
                    let _ = writeln!(out, "| {k} | {} |", cell(x));
                }
                out.push('\n');
            }
        }
        Value::Array(a) if name == "resolutions" => {
            let full: Vec<&Map<String, Value>> = a
                .iter()
                .filter_map(Value::as_object)
                .filter(|r| r.contains_key("steps"))
                .collect();
            if full.is_empty() {
                let rows: Vec<&Map<String, Value>> =
                    a.iter().filter_map(Value::as_object).collect();
                table(out, &rows);
            } else {
                for r in full {
                    resolution(out, r);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{}\n", cell(other));
        }
    }
}

pub fn markdown(report: &Map<String, Value>) -> String {
    let command = report["run"]["command"].as_str().unwrap_or("report");
    let mut out = format!(
        "# quiverdim {command}\n\ntool version {}\n\n",
        cell(&report["tool_version"])
    );
    for (k, v) in report.iter().filter(|(k, _)| k.as_str() != "tool_version") {
        section(&mut out, k, v);
    }
    out
}
