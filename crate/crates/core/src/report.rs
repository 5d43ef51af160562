//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped { reason: String },
}

/// One recorded check with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub holds: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub counterexample: Option<Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn skipped(claim: &str, anchor: &str, reason: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            anchor: anchor.into(),
            verdict: Verdict::Skipped { reason: reason.into() },
            witnesses: Vec::new(),
            counterexample: None,
        }
    }

    /// `fail` carries a counterexample and `pass` carries at least one witness.
    pub fn is_well_formed(&self) -> bool {
        match self.verdict {
            Verdict::Pass => !self.witnesses.is_empty() && self.witnesses.iter().all(|w| w.holds),
            Verdict::Fail => self.counterexample.is_some(),
            Verdict::Skipped { .. } => true,
        }
    }

    pub fn witness(&self, label: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.label == label)
    }
}

/// Accumulates checks; the first failing check becomes the counterexample.
#[derive(Debug)]
pub struct ReportBuilder {
    claim: String,
    anchor: String,
    witnesses: Vec<Witness>,
    counterexample: Option<Value>,
}

impl ReportBuilder {
    pub fn new(claim: &str, anchor: &str) -> Self {
        ReportBuilder { claim: claim.into(), anchor: anchor.into(), witnesses: Vec::new(), counterexample: None }
    }

    pub fn check(&mut self, label: impl Into<String>, holds: bool, detail: Value) -> bool {
        let label = label.into();
        if !holds && self.counterexample.is_none() {
            self.counterexample = Some(serde_json::json!({ "check": label, "detail": detail }));
        }
        self.witnesses.push(Witness { label, holds, detail });
        holds
    }

    pub fn note(&mut self, label: impl Into<String>, detail: Value) {
        self.witnesses.push(Witness { label: label.into(), holds: true, detail });
    }

    pub fn all_hold(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn skip(self, reason: impl Into<String>) -> VerificationReport {
        VerificationReport {
            claim: self.claim,
            anchor: self.anchor,
            verdict: Verdict::Skipped { reason: reason.into() },
            witnesses: self.witnesses,
            counterexample: None,
        }
    }

    pub fn finish(self) -> VerificationReport {
        let verdict = if self.counterexample.is_some() || self.witnesses.is_empty() { Verdict::Fail } else { Verdict::Pass };
        let counterexample = match (&verdict, self.counterexample) {
            (Verdict::Fail, None) => Some(Value::String("no checks were recorded".into())),
            (_, c) => c,
        };
        VerificationReport { claim: self.claim, anchor: self.anchor, verdict, witnesses: self.witnesses, counterexample }
    }
}
