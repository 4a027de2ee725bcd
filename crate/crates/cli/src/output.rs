//! Rendering outcomes as JSON, CSV or a plain table.
//!
//! Non-search values are flattened into `field,value` rows: object keys
//! are joined with `.`, everything that is not an object is a leaf written
//! as compact JSON. [`unflatten`] inverts this.

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::request::Outcome;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// Field name used when the whole value is a leaf.
pub const ROOT_FIELD: &str = "value";

pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&key, x, out);
                }
            }
            _ => {
                let key = if prefix.is_empty() { ROOT_FIELD.to_string() } else { prefix.to_string() };
                out.push((key, v.to_string()));
            }
        }
    }
    let mut out = Vec::new();
    go("", value, &mut out);
    out
}

pub fn unflatten(rows: &[(String, String)]) -> Result<Value> {
    if let [(k, v)] = rows {
        if k == ROOT_FIELD {
            return parse_leaf(v);
        }
    }
    let mut root = Map::new();
    for (key, text) in rows {
        let mut node = &mut root;
        let mut segments: Vec<&str> = key.split('.').collect();
        let last = segments.pop().unwrap_or_default();
        for s in segments {
            node = node
                .entry(s)
                .or_insert_with(|| Value::Object(Map::new()))
                .as_object_mut()
                .ok_or_else(|| CliError::Usage(format!("field {key} nests under a leaf")))?;
        }
        node.insert(last.to_string(), parse_leaf(text)?);
    }
    Ok(Value::Object(root))
}

fn parse_leaf(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad value {text:?}: {e}")))
}

pub fn to_csv(value: &Value) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "value"])?;
    for (k, v) in flatten(value) {
        w.write_record([k, v])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Value> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows = r
        .records()
        .map(|rec| {
            let rec = rec?;
            Ok((rec.get(0).unwrap_or("").to_string(), rec.get(1).unwrap_or("").to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    unflatten(&rows)
}

fn to_table(value: &Value) -> String {
    let rows = flatten(value);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        // runner diagrams read better one level per line
        if let Ok(Value::Array(items)) = serde_json::from_str::<Value>(&v) {
            if !items.is_empty() && items.iter().all(Value::is_string) {
                out.push_str(&format!("{k}\n"));
                for item in items {
                    out.push_str(&format!("  {}\n", item.as_str().unwrap_or_default()));
                }
                continue;
            }
        }
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

pub fn render(outcome: &Outcome, format: Format) -> Result<String> {
    if let Some(report) = &outcome.report {
        return Ok(match format {
            Format::Json => report.to_json() + "\n",
            Format::Csv => report.to_csv()?,
            Format::Table => report.to_table(),
        });
    }
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&outcome.value).expect("values serialize") + "\n",
        Format::Csv => to_csv(&outcome.value)?,
        Format::Table => to_table(&outcome.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_round_trip() {
        for v in [
            json!({"a": {"b": [1, 2], "c": null}, "d": "x,y", "e": {}}),
            json!([4, 4, 4]),
            json!(true),
        ] {
            assert_eq!(from_csv(&to_csv(&v).unwrap()).unwrap(), v);
        }
    }
}
