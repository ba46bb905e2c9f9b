//! JSON and CSV serialization of verification reports.
//!
//! JSON: an array with one object per ring:
//! `{ring, inventory, error, claims: [{id, predicted, computed, status,
//! note, witness, registered}]}`. Values are integers, booleans or strings;
//! `predicted`/`computed` are null for skipped claims.
//!
//! CSV: header `ring,claim_id,predicted,computed,status`, one row per claim.
//! Registered mismatches carry status `MISMATCH` like any other; the JSON
//! `registered` flag tells them apart. Rings that failed to build get one
//! row with claim id `build` and status `ERROR`.

use std::io::Write;

use super::claims::{ClaimStatus, VerificationReport};

pub fn to_json(reports: &[VerificationReport]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(reports)
}

pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["ring", "claim_id", "predicted", "computed", "status"])?;
    for r in reports {
        if let Some(err) = &r.error {
            w.write_record([r.ring.as_str(), "build", "", err.as_str(), "ERROR"])?;
        }
        for c in &r.claims {
            let show = |v: &Option<_>| v.as_ref().map(ToString::to_string).unwrap_or_default();
            w.write_record([
                r.ring.clone(),
                c.id.to_string(),
                show(&c.predicted),
                show(&c.computed),
                c.status.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Counts of (match, mismatch, registered mismatch, skipped, build errors).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub registered: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.errors += usize::from(r.error.is_some());
            for c in &r.claims {
                match c.status {
                    ClaimStatus::Match => s.matched += 1,
                    ClaimStatus::Skipped => s.skipped += 1,
                    ClaimStatus::Mismatch if c.registered => s.registered += 1,
                    ClaimStatus::Mismatch => s.mismatched += 1,
                }
            }
        }
        s
    }

    /// No unregistered mismatches.
    pub fn passed(&self) -> bool {
        self.mismatched == 0
    }
}
