//! Linear-time digital convexity test for planar sets.

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::pick::lattice_count;
use crate::quickhull::{quickhull_traced, QuickhullOutcome};
use crate::report::{ConvexityReport, Reason, Verdict};

/// Runs quickhull with the half-discard early stop; if it completes, the set
/// is digital convex iff Pick's count of the hull equals `|S|`.
///
/// Collinear inputs and sets of at most two points end at quickhull's
/// initialization with a segment or point hull, whose lattice points are
/// counted directly.
pub fn is_digital_convex_2d(set: &PointSet) -> Result<ConvexityReport> {
    if set.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: set.dim() });
    }
    let n = set.len() as u64;
    let mut report = ConvexityReport {
        verdict: Verdict::Convex,
        reason: Reason::Confirmed,
        n,
        h: None,
        lattice_count: None,
        work: 0,
        steps: None,
        duplicates_dropped: set.had_duplicates(),
        hull: None,
        gap_point: None,
        traversal: None,
    };
    if set.is_empty() {
        report.h = Some(0);
        report.lattice_count = Some(0);
        report.steps = Some(0);
        return Ok(report);
    }

    let outcome = quickhull_traced(set, true)?;
    let trace = outcome.trace();
    report.work = trace.total_candidate_scans();
    report.steps = Some(trace.steps.len() as u64);
    let hull = match outcome {
        QuickhullOutcome::EarlyStopped { .. } => {
            report.verdict = Verdict::NotConvex;
            report.reason = Reason::EarlyStop;
            return Ok(report);
        }
        QuickhullOutcome::Complete { hull, .. } => hull,
    };
    let count = lattice_count(&hull)?;
    report.h = Some(hull.edge_count() as u64);
    report.lattice_count = Some(count);
    report.hull = Some(hull);
    if count != n as u128 {
        report.verdict = Verdict::NotConvex;
        report.reason = Reason::CountMismatch;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(rows: &[[i64; 2]]) -> ConvexityReport {
        is_digital_convex_2d(&PointSet::new(2, rows).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        let r = check(&[[0, 0], [1, 0], [2, 0], [1, 1]]);
        assert!(r.is_convex());
        assert_eq!(r.lattice_count, Some(4));
        assert_eq!(r.h, Some(3));

        let r = check(&[[0, 0], [2, 0], [1, 1]]);
        assert_eq!((r.verdict, r.reason), (Verdict::NotConvex, Reason::CountMismatch));
        assert_eq!(r.lattice_count, Some(4));

        let r = check(&[[0, 0], [2, 2]]);
        assert_eq!((r.verdict, r.reason), (Verdict::NotConvex, Reason::CountMismatch));
        assert_eq!(r.lattice_count, Some(3));

        assert!(check(&[[0, 0], [1, 4]]).is_convex());
    }

    #[test]
    fn empty_and_singleton_are_convex() {
        assert!(is_digital_convex_2d(&PointSet::empty(2).unwrap()).unwrap().is_convex());
        assert!(check(&[[4, -9]]).is_convex());
    }

    #[test]
    fn duplicates_are_flagged() {
        let r = check(&[[0, 0], [0, 0], [1, 0]]);
        assert!(r.is_convex());
        assert!(r.duplicates_dropped);
        assert_eq!(r.n, 2);
    }

    #[test]
    fn sparse_ring_stops_early() {
        // Points on a circle with the interior missing: the first steps keep
        // nearly every candidate.
        let mut rows = Vec::new();
        for x in -30i64..=30 {
            for y in -30i64..=30 {
                let r2 = x * x + y * y;
                if (800..=900).contains(&r2) {
                    rows.push([x, y]);
                }
            }
        }
        let r = check(&rows);
        assert_eq!(r.verdict, Verdict::NotConvex);
        assert!(r.hull.is_none() || r.reason == Reason::CountMismatch);
    }

    #[test]
    fn rejects_other_dimensions() {
        let set = PointSet::new(3, [[0, 0, 0]]).unwrap();
        assert!(is_digital_convex_2d(&set).is_err());
    }

    #[test]
    fn report_renders_stable_keys() {
        let text = check(&[[0, 0], [2, 2]]).to_string();
        for key in ["verdict:", "reason:", "n:", "h:", "lattice_count:", "work:", "steps:"] {
            assert!(text.contains(key), "missing {key} in {text}");
        }
    }
}
