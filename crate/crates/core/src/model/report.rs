use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

/// Result of a finite check. A failing report always carries a counterexample.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub n: u32,
    pub bump: u32,
    pub result: Outcome,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>, n: u32, bump: u32) -> Self {
        CheckReport {
            subject: subject.into(),
            n,
            bump,
            result: Outcome::Unknown,
            cases: 0,
            counterexample: None,
            seed: None,
            elapsed_ms: 0,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    pub(crate) fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub(crate) fn fail<K: Into<String>>(
        mut self,
        start: Instant,
        assignment: impl IntoIterator<Item = (K, String)>,
    ) -> Self {
        self.result = Outcome::Fail;
        self.counterexample = Some(assignment.into_iter().map(|(k, v)| (k.into(), v)).collect());
        self.finish(start)
    }

    /// Sets the outcome from a tally: any failure wins, then any undecided case.
    pub(crate) fn settle(mut self, start: Instant, undecided: u64) -> Self {
        if self.result != Outcome::Fail {
            self.result = if undecided == 0 {
                Outcome::Pass
            } else {
                Outcome::Unknown
            };
        }
        self.finish(start)
    }
}
