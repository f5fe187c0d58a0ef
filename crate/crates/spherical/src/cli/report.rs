//! Reports: one self-describing document per invocation.
//!
//! The structured form is JSON with a fixed key order. The text form is a
//! rendering of the same document, so both carry the same fields.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::checks::{Outcome, Verdict};
use crate::genericity::SampleConfig;

pub const SCHEMA: &str = "sph-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every expectation attached to the case holds.
    Met,
    Mismatch,
    Error,
    /// Present in the catalog but not executable.
    Skipped,
    /// No expectation to compare against.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub case: String,
    pub table: String,
    pub row: String,
    pub quote: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub outcome: Outcome,
    pub numbers: BTreeMap<String, i64>,
    pub failed_sides: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: Option<String>,
    pub citation: Option<Citation>,
    pub check: String,
    pub spec: String,
    pub dims: BTreeMap<String, i64>,
    pub verdicts: Vec<Verdict>,
    pub expected: Option<Expected>,
    pub status: Status,
    pub messages: Vec<String>,
    pub elapsed_ms: u64,
}

impl CaseReport {
    pub fn new(check: &str, spec: impl Into<String>) -> CaseReport {
        CaseReport {
            id: None,
            citation: None,
            check: check.to_string(),
            spec: spec.into(),
            dims: BTreeMap::new(),
            verdicts: Vec::new(),
            expected: None,
            status: Status::Info,
            messages: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn main(&self) -> Option<&Verdict> {
        self.verdicts.first()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub met: usize,
    pub mismatch: usize,
    pub error: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: SampleConfig,
    pub parallel: bool,
    pub results: Vec<CaseReport>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        config: SampleConfig,
        results: Vec<CaseReport>,
    ) -> Report {
        let mut s = Summary {
            total: results.len(),
            ..Default::default()
        };
        for r in &results {
            match r.status {
                Status::Met => s.met += 1,
                Status::Mismatch => s.mismatch += 1,
                Status::Error => s.error += 1,
                Status::Skipped => s.skipped += 1,
                Status::Info => s.info += 1,
            }
        }
        Report {
            schema: SCHEMA,
            command: command.into(),
            config,
            parallel: crate::par::is_parallel(),
            results,
            summary: s,
            elapsed_ms: 0,
        }
    }

    /// 0 when nothing mismatched or failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.mismatch + self.summary.error > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&v, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}- [{i}]");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Removes every `elapsed_ms` entry, leaving the deterministic part of a report.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(o) => {
            o.remove("elapsed_ms");
            o.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

const OUTCOMES: &[&str] = &[
    "SPHERICAL",
    "NOT_SPHERICAL_PROBABLE",
    "FACTORIZATION",
    "NO_FACTORIZATION_PROBABLE",
    "PREHOMOGENEOUS",
    "NOT_PREHOMOGENEOUS_PROBABLE",
    "PASS",
    "FAIL",
];

fn keys(o: &serde_json::Map<String, Value>, want: &[&str], at: &str) -> Result<(), String> {
    let got: Vec<&str> = o.keys().map(String::as_str).collect();
    let mut w = want.to_vec();
    w.sort_unstable();
    let mut g = got.clone();
    g.sort_unstable();
    if w != g {
        return Err(format!("{at}: keys {got:?}, expected {want:?}"));
    }
    Ok(())
}

fn obj<'a>(v: &'a Value, at: &str) -> Result<&'a serde_json::Map<String, Value>, String> {
    v.as_object()
        .ok_or_else(|| format!("{at}: expected an object"))
}

fn arr<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, String> {
    v.as_array()
        .ok_or_else(|| format!("{at}: expected an array"))
}

fn uint(v: &Value, at: &str) -> Result<(), String> {
    v.as_u64()
        .map(|_| ())
        .ok_or_else(|| format!("{at}: expected a non-negative integer"))
}

fn string(v: &Value, at: &str) -> Result<(), String> {
    v.as_str()
        .map(|_| ())
        .ok_or_else(|| format!("{at}: expected a string"))
}

fn int_map(v: &Value, at: &str) -> Result<(), String> {
    for (k, x) in obj(v, at)? {
        x.as_i64()
            .ok_or_else(|| format!("{at}.{k}: expected an integer"))?;
    }
    Ok(())
}

fn strings(v: &Value, at: &str) -> Result<(), String> {
    for (i, x) in arr(v, at)?.iter().enumerate() {
        string(x, &format!("{at}[{i}]"))?;
    }
    Ok(())
}

fn outcome(v: &Value, at: &str) -> Result<(), String> {
    match v.as_str() {
        Some(s) if OUTCOMES.contains(&s) => Ok(()),
        _ => Err(format!("{at}: not an outcome")),
    }
}

fn verdict(v: &Value, at: &str) -> Result<(), String> {
    let o = obj(v, at)?;
    keys(
        o,
        &["check", "outcome", "numbers", "evidence", "notes", "also"],
        at,
    )?;
    string(&o["check"], &format!("{at}.check"))?;
    outcome(&o["outcome"], &format!("{at}.outcome"))?;
    int_map(&o["numbers"], &format!("{at}.numbers"))?;
    strings(&o["notes"], &format!("{at}.notes"))?;
    let e = obj(&o["evidence"], &format!("{at}.evidence"))?;
    let ek = format!("{at}.evidence");
    match e.get("kind").and_then(Value::as_str) {
        Some("none") => keys(e, &["kind"], &ek)?,
        Some("witness") => {
            keys(e, &["kind", "cell", "index", "z", "y", "exact_rank"], &ek)?;
            strings(&e["z"], &ek)?;
            strings(&e["y"], &ek)?;
            for k in ["cell", "index", "exact_rank"] {
                uint(&e[k], &ek)?;
            }
        }
        Some("vector") => {
            keys(e, &["kind", "v", "exact_rank"], &ek)?;
            strings(&e["v"], &ek)?;
            uint(&e["exact_rank"], &ek)?;
        }
        Some("defect") => {
            keys(e, &["kind", "defect", "samples", "cells"], &ek)?;
            for k in ["defect", "samples", "cells"] {
                uint(&e[k], &ek)?;
            }
        }
        _ => return Err(format!("{ek}: unknown evidence kind")),
    }
    for (i, x) in arr(&o["also"], &format!("{at}.also"))?.iter().enumerate() {
        verdict(x, &format!("{at}.also[{i}]"))?;
    }
    Ok(())
}

fn case(v: &Value, at: &str) -> Result<(), String> {
    let o = obj(v, at)?;
    keys(
        o,
        &[
            "id",
            "citation",
            "check",
            "spec",
            "dims",
            "verdicts",
            "expected",
            "status",
            "messages",
            "elapsed_ms",
        ],
        at,
    )?;
    if !o["id"].is_null() {
        string(&o["id"], &format!("{at}.id"))?;
    }
    if !o["citation"].is_null() {
        let c = obj(&o["citation"], &format!("{at}.citation"))?;
        keys(
            c,
            &["case", "table", "row", "quote"],
            &format!("{at}.citation"),
        )?;
        for k in ["case", "table", "row", "quote"] {
            string(&c[k], &format!("{at}.citation.{k}"))?;
        }
    }
    string(&o["check"], &format!("{at}.check"))?;
    string(&o["spec"], &format!("{at}.spec"))?;
    int_map(&o["dims"], &format!("{at}.dims"))?;
    for (i, x) in arr(&o["verdicts"], &format!("{at}.verdicts"))?
        .iter()
        .enumerate()
    {
        verdict(x, &format!("{at}.verdicts[{i}]"))?;
    }
    if !o["expected"].is_null() {
        let e = obj(&o["expected"], &format!("{at}.expected"))?;
        keys(
            e,
            &["outcome", "numbers", "failed_sides"],
            &format!("{at}.expected"),
        )?;
        outcome(&e["outcome"], &format!("{at}.expected.outcome"))?;
        int_map(&e["numbers"], &format!("{at}.expected.numbers"))?;
        strings(&e["failed_sides"], &format!("{at}.expected.failed_sides"))?;
    }
    match o["status"].as_str() {
        Some("met" | "mismatch" | "error" | "skipped" | "info") => {}
        _ => return Err(format!("{at}.status: unknown status")),
    }
    strings(&o["messages"], &format!("{at}.messages"))?;
    uint(&o["elapsed_ms"], &format!("{at}.elapsed_ms"))
}

/// Checks a structured report against the published schema (docs/report-schema.md).
pub fn validate(v: &Value) -> Result<(), String> {
    let o = obj(v, "report")?;
    keys(
        o,
        &[
            "schema",
            "command",
            "config",
            "parallel",
            "results",
            "summary",
            "elapsed_ms",
        ],
        "report",
    )?;
    if o["schema"] != SCHEMA {
        return Err(format!("report.schema: expected {SCHEMA}"));
    }
    string(&o["command"], "report.command")?;
    let c = obj(&o["config"], "report.config")?;
    keys(
        c,
        &["seed", "samples", "height", "weyl_cells"],
        "report.config",
    )?;
    for k in ["seed", "samples", "height", "weyl_cells"] {
        uint(&c[k], &format!("report.config.{k}"))?;
    }
    o["parallel"]
        .as_bool()
        .ok_or("report.parallel: expected a boolean")?;
    let results = arr(&o["results"], "report.results")?;
    for (i, x) in results.iter().enumerate() {
        case(x, &format!("report.results[{i}]"))?;
    }
    let s = obj(&o["summary"], "report.summary")?;
    let names = ["total", "met", "mismatch", "error", "skipped", "info"];
    keys(s, &names, "report.summary")?;
    for k in names {
        uint(&s[k], &format!("report.summary.{k}"))?;
    }
    if s["total"].as_u64() != Some(results.len() as u64) {
        return Err("report.summary.total does not match results".into());
    }
    uint(&o["elapsed_ms"], "report.elapsed_ms")
}
