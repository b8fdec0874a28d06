use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

pub const TOOL: &str = "branchforge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skipped",
        }
    }
}

/// `true`, `false` or `"skipped"`.
impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Pass => s.serialize_bool(true),
            Verdict::Fail => s.serialize_bool(false),
            Verdict::Skipped => s.serialize_str("skipped"),
        }
    }
}

/// Output of one run. Everything except `timing` is a pure function of the
/// inputs.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub results: Value,
    pub verdicts: BTreeMap<String, Verdict>,
    /// Why a verdict was skipped or failed, keyed like `verdicts`.
    pub notes: BTreeMap<String, String>,
    pub timing: BTreeMap<String, f64>,
    /// Human-readable summary lines.
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Self {
            command: command.to_string(),
            input,
            results: json!({}),
            verdicts: BTreeMap::new(),
            notes: BTreeMap::new(),
            timing: BTreeMap::new(),
            text: Vec::new(),
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, v: Verdict) {
        self.verdicts.insert(name.into(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.verdict(name, Verdict::from_bool(ok));
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        let name = name.into();
        self.notes.insert(name.clone(), why.into());
        self.verdict(name, Verdict::Skipped);
    }

    pub fn note(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.notes.insert(name.into(), why.into());
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|v| *v != Verdict::Fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|(_, v)| **v == Verdict::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Merges a sub-report, prefixing its verdict and timing keys.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.verdicts {
            self.verdicts.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.notes {
            self.notes.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.timing {
            self.timing.insert(format!("{prefix}.{k}"), v);
        }
        self.text.push(format!("[{prefix}]"));
        self.text.extend(other.text.into_iter().map(|l| format!("  {l}")));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "input": self.input,
            "results": self.results,
            "verdicts": self.verdicts,
            "notes": self.notes,
            "timing": self.timing,
        })
    }

    /// JSON without the `timing` field; byte-identical for identical inputs.
    pub fn deterministic_json(&self) -> String {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string_pretty(&v).unwrap()
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).unwrap()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{TOOL} {VERSION} {}", self.command).unwrap();
        for line in &self.text {
            writeln!(out, "{line}").unwrap();
        }
        if !self.verdicts.is_empty() {
            writeln!(out, "verdicts:").unwrap();
            for (k, v) in &self.verdicts {
                match self.notes.get(k) {
                    Some(n) => writeln!(out, "  {:<8} {k} ({n})", v.label()).unwrap(),
                    None => writeln!(out, "  {:<8} {k}", v.label()).unwrap(),
                }
            }
        }
        let total: f64 = self.timing.get("total_ms").copied().unwrap_or(0.0);
        writeln!(out, "time: {total:.1} ms").unwrap();
        let failed = self.failures();
        if failed.is_empty() {
            writeln!(out, "result: ok").unwrap();
        } else {
            writeln!(out, "result: {} verdict(s) failed", failed.len()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_serialize_as_tristate() {
        let v = serde_json::to_value([Verdict::Pass, Verdict::Fail, Verdict::Skipped]).unwrap();
        assert_eq!(v, json!([true, false, "skipped"]));
    }

    #[test]
    fn skipped_does_not_fail() {
        let mut r = Report::new("x", json!({}));
        r.check("a", true);
        r.skip("b", "not applicable");
        assert!(r.passed());
        r.check("c", false);
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["c"]);
    }

    #[test]
    fn timing_is_excluded_from_deterministic_json() {
        let mut a = Report::new("x", json!({"k": 1}));
        let mut b = a.clone();
        a.timing.insert("total_ms".into(), 1.0);
        b.timing.insert("total_ms".into(), 2.0);
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert_ne!(a.render_json(), b.render_json());
    }
}
