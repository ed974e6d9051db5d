//! Typed verification reports shared by the verifiers and the CLI renderer.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of one checked entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    /// Every instantiation checked and passed.
    Ok,
    /// At least one instantiation is numerically wrong.
    Fail,
    /// Nothing could be checked (unsupported corner cases), with reasons.
    Skipped,
    /// The entry itself is malformed (bad symbol, bad range, arithmetic).
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "OK",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Error => "ERROR",
        })
    }
}

/// Report for a single data entry or suite item.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EntryReport {
    /// Stable identifier, e.g. `embeddings.txt:12` or `item (4)`.
    pub source_id: String,
    pub status: Status,
    /// One-line human-readable outcome with exact rationals.
    pub summary: String,
    /// Per-instantiation details (failures, skip reasons).
    pub details: Vec<String>,
}

/// An ordered collection of entry reports; order is the deterministic
/// processing order (source order), which makes rendering reproducible.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerificationReport {
    pub entries: Vec<EntryReport>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { entries: Vec::new() }
    }

    pub fn push(&mut self, entry: EntryReport) {
        self.entries.push(entry);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn has_fail_or_error(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e.status, Status::Fail | Status::Error))
    }

    pub fn has_skipped(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Skipped)
    }
}
