//! Verdicts returned by both testers, plus their text and JSON renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Hull2D, LatticePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Convex,
    NotConvex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// A quickhull step kept more than half of its candidates.
    EarlyStop,
    /// The hull holds more lattice points than the input.
    CountMismatch,
    /// A lattice point of the hull missing from the input was found.
    GapPoint,
    /// Counts agree.
    Confirmed,
}

/// Counters specific to the dilated-neighborhood tester.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraversalStats {
    /// Points of the dilated set visited (all of it unless the run exited early).
    pub s_prime_size: u64,
    pub lp_calls: u64,
    pub peak_frontier: u64,
}

/// Outcome of a digital convexity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    pub reason: Reason,
    /// Input cardinality after deduplication.
    pub n: u64,
    /// Hull edge count, when a planar hull was computed.
    pub h: Option<u64>,
    /// `|conv(S) ∩ Z^d|`, when it was counted.
    pub lattice_count: Option<u128>,
    /// Candidate scans for the planar tester, membership tests for the other.
    pub work: u64,
    /// Quickhull steps (planar tester only).
    pub steps: Option<u64>,
    pub duplicates_dropped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<Hull2D>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_point: Option<LatticePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traversal: Option<TraversalStats>,
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        self.verdict == Verdict::Convex
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl fmt::Display for ConvexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Convex => "convex",
            Verdict::NotConvex => "not_convex",
        };
        let reason = match self.reason {
            Reason::EarlyStop => "early_stop",
            Reason::CountMismatch => "count_mismatch",
            Reason::GapPoint => "gap_point",
            Reason::Confirmed => "confirmed",
        };
        writeln!(f, "verdict: {verdict}")?;
        writeln!(f, "reason: {reason}")?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "h: {}", opt(&self.h))?;
        writeln!(f, "lattice_count: {}", opt(&self.lattice_count))?;
        writeln!(f, "work: {}", self.work)?;
        writeln!(f, "steps: {}", opt(&self.steps))?;
        if self.duplicates_dropped {
            writeln!(f, "duplicates_dropped: true")?;
        }
        if let Some(p) = &self.gap_point {
            writeln!(f, "gap_point: {p}")?;
        }
        if let Some(t) = &self.traversal {
            writeln!(f, "s_prime_size: {}", t.s_prime_size)?;
            writeln!(f, "lp_calls: {}", t.lp_calls)?;
            writeln!(f, "peak_frontier: {}", t.peak_frontier)?;
        }
        Ok(())
    }
}
