//! Command output: a flat list of keyed values, each tagged with where its
//! value comes from, rendered as text or JSON.

use serde::Serialize;
use serde_json::Value;

use crate::reproduce::CriterionResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Echo of the job's input.
    Input,
    /// Computed here, checked against an independent in-repo oracle or
    /// not checked at all.
    Derived,
    /// Compared against a value stated in the literature.
    Stated,
}

impl Provenance {
    fn tag(self) -> &'static str {
        match self {
            Provenance::Input => "input",
            Provenance::Derived => "derived",
            Provenance::Stated => "stated",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub key: String,
    pub value: Value,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub items: Vec<Item>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checklist: Vec<CriterionResult>,
    pub pass: bool,
    /// Printed as the last line of the text output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    #[serde(skip)]
    pub timings: bool,
}

impl Report {
    pub fn new(command: &str, field: impl ToString, seed: u64) -> Report {
        Report {
            command: command.to_string(),
            field: field.to_string(),
            seed,
            items: Vec::new(),
            checklist: Vec::new(),
            pass: true,
            summary: None,
            timings: false,
        }
    }

    fn push(&mut self, key: &str, value: Value, provenance: Provenance) {
        self.items.push(Item {
            key: key.to_string(),
            value,
            provenance,
            expected: None,
            pass: None,
        });
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.push(key, value.into(), Provenance::Input);
    }

    pub fn derived(&mut self, key: &str, value: impl Into<Value>) {
        self.push(key, value.into(), Provenance::Derived);
    }

    /// A value compared against an expectation; a mismatch fails the job.
    pub fn check(&mut self, key: &str, value: impl Into<Value>, expected: impl Into<Value>, provenance: Provenance) {
        let (value, expected) = (value.into(), expected.into());
        let pass = value == expected;
        self.judged(key, value, expected, pass, provenance);
    }

    /// Like `check`, for values whose equality is decided elsewhere (e.g.
    /// polynomials printed in different term orders).
    pub fn judged(&mut self, key: &str, value: impl Into<Value>, expected: impl Into<Value>, pass: bool, provenance: Provenance) {
        let (value, expected) = (value.into(), expected.into());
        self.pass &= pass;
        self.items.push(Item {
            key: key.to_string(),
            value,
            provenance,
            expected: Some(expected),
            pass: Some(pass),
        });
    }

    /// A certificate that either holds or does not.
    pub fn certify(&mut self, key: &str, holds: bool, provenance: Provenance) {
        self.check(key, holds, true, provenance);
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("serializable");
            s.push('\n');
            return s;
        }
        let mut out = format!("command: {}\nfield: {}\nseed: {}\n", self.command, self.field, self.seed);
        for it in &self.items {
            let value = text(&it.value);
            let mut line = if value.contains('\n') {
                format!("{}:\n{}", it.key, indent(&value))
            } else {
                format!("{}: {}", it.key, value)
            };
            if let (Some(e), Some(p)) = (&it.expected, it.pass) {
                if !p {
                    line.push_str(&format!(" (expected {}: MISMATCH)", text(e)));
                }
            }
            line.push_str(&format!(" [{}]", it.provenance.tag()));
            out.push_str(&line);
            out.push('\n');
        }
        for c in &self.checklist {
            out.push_str(&c.line(self.timings));
            out.push('\n');
        }
        out.push_str(if self.pass { "status: pass\n" } else { "status: FAIL\n" });
        if let Some(s) = &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        out
    }
}

fn indent(s: &str) -> String {
    s.trim_end_matches('\n')
        .lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Numbers as themselves, numeric lists as `(a,b,c)`, string lists one
/// per line when long.
fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(Value::is_number) => {
            let parts: Vec<String> = a.iter().map(Value::to_string).collect();
            format!("({})", parts.join(","))
        }
        Value::Array(a) if a.iter().all(Value::is_string) => {
            let parts: Vec<String> = a.iter().map(text).collect();
            let joined = parts.join(", ");
            if joined.len() > 72 {
                parts.join("\n")
            } else {
                joined
            }
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_mismatches() {
        let mut r = Report::new("hilbert", "GF(7)", 3);
        r.check("h", vec![1, 2, 1], vec![1, 2, 1], Provenance::Derived);
        r.check("rank", 9, 10, Provenance::Stated);
        let t = r.render(false);
        assert!(t.contains("h: (1,2,1) [derived]\n"));
        assert!(t.contains("rank: 9 (expected 10: MISMATCH) [stated]\n"));
        assert!(t.ends_with("status: FAIL\n"));
        assert!(!r.pass);
    }

    #[test]
    fn multiline_values_are_indented() {
        let mut r = Report::new("betti", "Q", 0);
        r.derived("table", "1 - -\n- 3 2\n");
        assert!(r.render(false).contains("table:\n  1 - -\n  - 3 2 [derived]\n"));
    }
}
