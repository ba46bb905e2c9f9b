//! Known disagreements between closed forms and computed ground truth.
//! A registered mismatch is reported as such and does not fail a run.

use serde::{Deserialize, Serialize};

use super::claims::{Claim, ClaimValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedMismatch {
    pub claim: String,
    pub ring: String,
    pub predicted: ClaimValue,
    pub computed: ClaimValue,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Registry {
    pub entries: Vec<ExpectedMismatch>,
}

const BUILTIN: &str = include_str!("expected_mismatches.json");

impl Registry {
    pub fn builtin() -> Self {
        Registry::from_json(BUILTIN).expect("builtin registry parses")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Matches on ring name, claim id and both values exactly.
    pub fn covers(&self, ring: &str, claim: &Claim) -> bool {
        self.entries.iter().any(|e| {
            e.ring == ring
                && e.claim == claim.id
                && Some(&e.predicted) == claim.predicted.as_ref()
                && Some(&e.computed) == claim.computed.as_ref()
        })
    }
}
