//! Deterministic check reports shared by the verification suites.
//!
//! Every verification routine summarizes its work as a [`CheckReport`]: how
//! many tuples were examined, how many violated the property under test, a
//! histogram of evidence margins (meaningful for ball-based checks, empty
//! otherwise), and a bounded list of counterexample descriptions.  All
//! containers are ordered, so serializing the same report twice yields
//! byte-identical JSON.

use std::collections::BTreeMap;

use serde::Serialize;

/// Maximum number of counterexamples retained in a single report.
pub const COUNTEREXAMPLE_CAP: usize = 16;

/// Outcome summary of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Stable identifier of the check, e.g. `"partial_order_ball"`.
    pub name: String,
    /// Number of tuples (pairs, triples, cycles, ...) examined.
    pub checked_count: u64,
    /// Number of tuples that violated the property.
    pub violation_count: u64,
    /// Distribution of the evidence margin over all examined tuples; empty
    /// when the check has no margin notion.
    pub margin_histogram: BTreeMap<i64, u64>,
    /// Up to [`COUNTEREXAMPLE_CAP`] structured descriptions of violations,
    /// in discovery order.
    pub counterexamples: Vec<serde_json::Value>,
}

impl CheckReport {
    /// Creates an empty report for the named check.
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            checked_count: 0,
            violation_count: 0,
            margin_histogram: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    /// Records one examined tuple; `margin` is the smallest margin among the
    /// vertices involved, when the check tracks margins.
    pub fn record(&mut self, margin: Option<i64>) {
        self.checked_count += 1;
        if let Some(m) = margin {
            *self.margin_histogram.entry(m).or_insert(0) += 1;
        }
    }

    /// Records one examined tuple that violated the property, keeping the
    /// witness if the counterexample list is not yet full.
    pub fn violation(&mut self, margin: Option<i64>, witness: serde_json::Value) {
        self.record(margin);
        self.violation_count += 1;
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(witness);
        }
    }

    /// Folds another report of the same check into this one, keeping counts,
    /// histograms, and as many counterexamples as the cap allows.  Merging
    /// partial reports in a fixed order keeps results deterministic.
    pub fn merge(&mut self, other: CheckReport) {
        debug_assert_eq!(self.name, other.name, "only merge reports of one check");
        self.checked_count += other.checked_count;
        self.violation_count += other.violation_count;
        for (m, c) in other.margin_histogram {
            *self.margin_histogram.entry(m).or_insert(0) += c;
        }
        for witness in other.counterexamples {
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.counterexamples.push(witness);
            }
        }
    }

    /// True when no violation was recorded.
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// One-line human-readable summary.
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} checked, {} violations{}",
            self.name,
            self.checked_count,
            self.violation_count,
            if self.passed() { " (pass)" } else { " (FAIL)" }
        )
    }
}

/// A bundle of check reports produced by one verification run, together with
/// the parameters that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Name of the producing tool.
    pub tool: String,
    /// Verification suite that ran.
    pub suite: String,
    /// Parameters of the run, stringified, in sorted key order.
    pub parameters: BTreeMap<String, String>,
    /// Reports of the individual checks, in execution order.
    pub reports: Vec<CheckReport>,
}

impl RunReport {
    /// Creates an empty run report for the given suite.
    pub fn new(suite: &str) -> Self {
        RunReport {
            tool: "arrkpi".to_string(),
            suite: suite.to_string(),
            parameters: BTreeMap::new(),
            reports: Vec::new(),
        }
    }

    /// Records a run parameter.
    pub fn set_parameter(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    /// Appends a check report.
    pub fn push(&mut self, report: CheckReport) {
        self.reports.push(report);
    }

    /// True when every contained check passed.
    pub fn passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    /// Pretty JSON with deterministic field and key order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Human-readable multi-line summary, one line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.summary_line());
            out.push('\n');
        }
        out
    }
}
