//! Regression fixtures: requests paired with expected outputs.
//!
//! A fixture's `expect` is matched structurally against the request's JSON
//! output. Objects match when every expected key matches; arrays match
//! element-wise and must have equal length; anything else must be equal.
//! `contains` and `excludes` map dotted paths in the output to patterns
//! that must (resp. must not) match some element of the array found there.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use twistlab_specht::SpechtOptions;

use crate::error::{CliError, Result};
use crate::request::{evaluate, Request};

pub const SCHEMA: &str = "twistlab.fixtures/1";

/// The fixture file shipped with the binary.
pub const BUNDLED: &str = include_str!("../fixtures/reference-values.json");
pub const BUNDLED_NAME: &str = "fixtures/reference-values.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Printed in the literature.
    Published,
    /// Follows from a definition.
    Trivial,
    /// Computed here and cross-checked.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    pub source: Source,
    #[serde(default)]
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub origin: Origin,
    #[serde(flatten)]
    pub request: Request,
    #[serde(default)]
    pub expect: Option<Value>,
    #[serde(default)]
    pub contains: BTreeMap<String, Vec<Value>>,
    #[serde(default)]
    pub excludes: BTreeMap<String, Vec<Value>>,
    /// Substring of the error message the request has to fail with.
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub schema: String,
    pub fixtures: Vec<Fixture>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub id: String,
    pub kind: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub source: String,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<FixtureResult>,
}

/// Parses and validates a fixture file. Blank input is an empty file.
pub fn parse(text: &str) -> Result<FixtureFile> {
    if text.trim().is_empty() {
        return Ok(FixtureFile {
            schema: SCHEMA.into(),
            fixtures: Vec::new(),
        });
    }
    let file: FixtureFile = serde_json::from_str(text).map_err(|e| {
        CliError::Fixtures(format!("parse error at line {} column {}: {e}", e.line(), e.column()))
    })?;
    if file.schema != SCHEMA {
        return Err(CliError::Fixtures(format!(
            "unsupported schema {:?}, expected {SCHEMA:?}",
            file.schema
        )));
    }
    let mut seen = HashSet::new();
    for f in &file.fixtures {
        if !seen.insert(f.id.as_str()) {
            return Err(CliError::Fixtures(format!("duplicate id {:?}", f.id)));
        }
        if f.origin.source == Source::Published && f.origin.reference.trim().is_empty() {
            return Err(CliError::Fixtures(format!("published fixture {:?} has no reference", f.id)));
        }
        if f.expect.is_none() && f.contains.is_empty() && f.excludes.is_empty() && f.error.is_none() {
            return Err(CliError::Fixtures(format!("fixture {:?} checks nothing", f.id)));
        }
    }
    Ok(file)
}

/// Whether `actual` matches the pattern `expected`.
pub fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).is_some_and(|x| matches(v, x))),
        (Value::Array(e), Value::Array(a)) => {
            e.len() == a.len() && e.iter().zip(a).all(|(x, y)| matches(x, y))
        }
        _ => expected == actual,
    }
}

fn lookup<'a>(value: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(value, |v, seg| v.get(seg))
}

fn check(fixture: &Fixture, opts: &SpechtOptions) -> std::result::Result<(), String> {
    let outcome = evaluate(&fixture.request, opts);
    let value = match (outcome, &fixture.error) {
        (Err(e), Some(want)) => {
            let msg = e.to_string();
            return if msg.contains(want.as_str()) {
                Ok(())
            } else {
                Err(format!("error {msg:?} does not mention {want:?}"))
            };
        }
        (Err(e), None) => return Err(e.to_string()),
        (Ok(_), Some(want)) => return Err(format!("expected an error mentioning {want:?}")),
        (Ok(o), None) => o.value,
    };
    if let Some(expect) = &fixture.expect {
        if !matches(expect, &value) {
            return Err(format!("expected {expect}, got {value}"));
        }
    }
    for (path, patterns) in &fixture.contains {
        let items = lookup(&value, path)
            .and_then(Value::as_array)
            .ok_or_else(|| format!("no array at {path}"))?;
        for pat in patterns {
            if !items.iter().any(|x| matches(pat, x)) {
                return Err(format!("{path} has no element matching {pat}"));
            }
        }
    }
    for (path, patterns) in &fixture.excludes {
        let items = lookup(&value, path)
            .and_then(Value::as_array)
            .ok_or_else(|| format!("no array at {path}"))?;
        for pat in patterns {
            if let Some(hit) = items.iter().find(|x| matches(pat, x)) {
                return Err(format!("{path} has {hit}, excluded by {pat}"));
            }
        }
    }
    Ok(())
}

pub fn verify(file: &FixtureFile, source: &str, opts: &SpechtOptions) -> VerifySummary {
    let results: Vec<FixtureResult> = file
        .fixtures
        .iter()
        .map(|f| {
            let outcome = check(f, opts);
            FixtureResult {
                id: f.id.clone(),
                kind: f.request.kind().to_string(),
                pass: outcome.is_ok(),
                detail: outcome.err(),
            }
        })
        .collect();
    let passed = results.iter().filter(|r| r.pass).count();
    VerifySummary {
        source: source.to_string(),
        checked: results.len(),
        passed,
        failed: results.len() - passed,
        results,
    }
}
