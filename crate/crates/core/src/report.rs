//! Outcomes of individual checks and the report format shared by all suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Verified,
    Falsified,
    NotApplicable,
    Indeterminate,
}

/// One named statement checked on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    pub fn holds(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            outcome: if ok { Outcome::Verified } else { Outcome::Falsified },
            detail: detail.into(),
        }
    }

    pub fn not_applicable(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            outcome: Outcome::NotApplicable,
            detail: detail.into(),
        }
    }

    pub fn indeterminate(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            outcome: Outcome::Indeterminate,
            detail: detail.into(),
        }
    }

    pub fn ok(&self) -> bool {
        self.outcome != Outcome::Falsified
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub statement_id: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall time; excluded from the determinism contract.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub falsified: usize,
    pub not_applicable: usize,
    pub indeterminate: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub samples: usize,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts cases by id and parameters and recomputes the summary.
    pub fn new(suite: &str, seed: u64, samples: usize, mut cases: Vec<CaseResult>) -> VerificationReport {
        cases.sort_by(|a, b| {
            (&a.statement_id, &a.parameters).cmp(&(&b.statement_id, &b.parameters))
        });
        let mut summary = Summary {
            total: cases.len(),
            ..Summary::default()
        };
        for c in &cases {
            match c.verdict {
                Outcome::Verified => summary.verified += 1,
                Outcome::Falsified => summary.falsified += 1,
                Outcome::NotApplicable => summary.not_applicable += 1,
                Outcome::Indeterminate => summary.indeterminate += 1,
            }
        }
        VerificationReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            samples,
            cases,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.falsified == 0
    }

    /// Drops every `elapsed_ms`, leaving only deterministic content.
    pub fn without_timing(mut self) -> VerificationReport {
        for c in &mut self.cases {
            c.elapsed_ms = None;
        }
        self
    }

    /// Fixed-width table: verdict, statement, parameters.
    pub fn render_table(&self) -> String {
        let width = self
            .cases
            .iter()
            .map(|c| c.statement_id.len())
            .max()
            .unwrap_or(0)
            .max(9);
        let mut out = format!("{:<14} {:<width$} parameters\n", "verdict", "statement");
        for c in &self.cases {
            let verdict = serde_json::to_value(c.verdict)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("{:<14} {:<width$} {}\n", verdict, c.statement_id, params.join(" ")));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "total {}: {} verified, {} falsified, {} not applicable, {} indeterminate\n",
            s.total, s.verified, s.falsified, s.not_applicable, s.indeterminate
        ));
        out
    }
}
