use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::relcat::{Leg, Relation};

/// Every relation composite exists in the category of finite relations;
/// diagram entries record this in place of a transversality check.
pub const COMPOSITION_TOTAL: &str = "composition total: yes";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Named pass/fail results with counterexamples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            entries: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, tag: impl Into<String>, outcome: Result<(), String>) {
        self.entries.push(CheckEntry {
            name: name.into(),
            passed: outcome.is_ok(),
            witness: outcome.err(),
            tag: tag.into(),
            note: None,
        });
    }

    /// Records an exact equality between two relations.
    pub fn record_equal(
        &mut self,
        name: impl Into<String>,
        tag: impl Into<String>,
        left: &Relation,
        right: &Relation,
    ) {
        let outcome = match left.first_difference(right) {
            None => Ok(()),
            Some(w) => Err(w),
        };
        self.record(name, tag, outcome);
        self.annotate_last(COMPOSITION_TOTAL);
    }

    /// Records a commutative square given by two legs; a leg that fails to
    /// typecheck counts as a failure.
    pub fn record_legs(
        &mut self,
        name: impl Into<String>,
        tag: impl Into<String>,
        left: crate::error::Result<Leg>,
        right: crate::error::Result<Leg>,
    ) {
        match (left, right) {
            (Ok(l), Ok(r)) => self.record_equal(name, tag, &l.eval(), &r.eval()),
            (Err(e), _) | (_, Err(e)) => self.record(name, tag, Err(format!("ill-typed leg: {e}"))),
        }
    }

    /// Records one entry for several diagrams; the witness names the first
    /// diagram that does not commute.
    pub fn record_diagrams(
        &mut self,
        name: impl Into<String>,
        tag: impl Into<String>,
        diagrams: Vec<(&str, crate::error::Result<Leg>, crate::error::Result<Leg>)>,
    ) {
        let mut outcome = Ok(());
        for (label, left, right) in diagrams {
            let diff = match (left, right) {
                (Ok(l), Ok(r)) => l.eval().first_difference(&r.eval()),
                (Err(e), _) | (_, Err(e)) => Some(format!("ill-typed leg: {e}")),
            };
            if let Some(w) = diff {
                outcome = Err(format!("{label}: {w}"));
                break;
            }
        }
        self.record(name, tag, outcome);
        self.annotate_last(COMPOSITION_TOTAL);
    }

    fn annotate_last(&mut self, note: &str) {
        if let Some(e) = self.entries.last_mut() {
            e.note = Some(note.to_owned());
        }
    }

    /// Appends another report's entries with `prefix.` on their names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.name = format!("{prefix}.{}", e.name);
            self.entries.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.failures().map(|e| e.name.as_str()).collect();
        if failed.is_empty() {
            format!("{}: all {} checks pass", self.subject, self.entries.len())
        } else {
            format!(
                "{}: {} of {} checks fail ({})",
                self.subject,
                failed.len(),
                self.entries.len(),
                failed.join(", ")
            )
        }
    }

    pub fn render_text(&self) -> String {
        let width = self.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.subject);
        for e in &self.entries {
            let pad = width - e.name.chars().count();
            let _ = write!(
                out,
                "  {} {}{}  {}",
                if e.passed { "PASS" } else { "FAIL" },
                e.name,
                " ".repeat(pad),
                e.tag
            );
            if let Some(w) = &e.witness {
                let _ = write!(out, "  witness: {w}");
            }
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}
