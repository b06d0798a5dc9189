//! Quickhull on planar lattice sets with per-step tracing.
//!
//! A *step* finds the farthest candidate of every active edge of the current
//! partial hull at once. On digital convex inputs each step discards at least
//! as many candidates as it keeps, which bounds the total work by `2n` and is
//! what lets the convexity tester abort a run early.
//!
//! Two lattice-specific rules keep that pairing intact:
//! * candidates lying on a new partial-hull edge are discarded immediately;
//! * when several candidates tie for the farthest distance (they then share a
//!   line parallel to the edge) the first and last of them along the edge are
//!   both promoted and the ones in between discarded.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{cross, cross_vec, Hull2D, Point2, PointSet};

/// A partial-hull vertex together with the direction of a line through it
/// that no input point lies strictly beyond.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportedVertex {
    pub point: Point2,
    pub support: (i64, i64),
}

#[derive(Clone, Debug)]
struct Edge {
    a: SupportedVertex,
    b: SupportedVertex,
    bucket: Vec<Point2>,
    confirmed: bool,
}

impl Edge {
    fn new(a: SupportedVertex, b: SupportedVertex, bucket: Vec<Point2>) -> Self {
        let confirmed = bucket.is_empty();
        Self { a, b, bucket, confirmed }
    }
}

/// Convex polygon maintained by quickhull: a counterclockwise cycle of edges,
/// each either confirmed as a hull edge or carrying the candidates that lie
/// strictly outside it.
#[derive(Clone, Debug)]
pub struct PartialHull {
    edges: Vec<Edge>,
}

/// Counters from the initialization pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitRecord {
    pub input: usize,
    pub vertices: usize,
    pub discarded: usize,
    pub remaining: usize,
}

/// Result of initialization: either the hull is already known (empty
/// buckets or a degenerate input), or there is work left.
#[derive(Clone, Debug)]
pub enum Initialized {
    Done(Hull2D),
    Partial(PartialHull),
}

/// Exact doubled areas around one promotion on edge `ab`.
///
/// `discarded` is the region absorbed into the partial hull (triangle `abd`,
/// or quadrilateral `a d_a d_b b` when two tied vertices are promoted).
/// `preserved_a` / `preserved_b` are the triangles `a d e` and `b d f` cut off
/// by the supporting lines through `a` and `b` and the line through the
/// promoted vertices parallel to `ab`. Their corners `e`, `f` need not be
/// lattice points, hence the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Promotion {
    pub edge: (Point2, Point2),
    pub vertices: Vec<Point2>,
    pub discarded_twice_area: BigRational,
    pub preserved_a_twice_area: BigRational,
    pub preserved_b_twice_area: BigRational,
}

impl Promotion {
    /// Whether the discarded area is at least the preserved area.
    pub fn area_inequality_holds(&self) -> bool {
        self.discarded_twice_area >= &self.preserved_a_twice_area + &self.preserved_b_twice_area
    }
}

/// One quickhull step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub remaining_before: usize,
    pub discarded: usize,
    pub promoted: usize,
    pub remaining_after: usize,
    pub promotions: Vec<Promotion>,
}

impl StepRecord {
    /// `2 * remaining_after <= remaining_before`.
    pub fn discards_at_least_half(&self) -> bool {
        2 * self.remaining_after <= self.remaining_before
    }
}

/// Per-step ledger of a quickhull run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuickhullTrace {
    pub init: InitRecord,
    pub steps: Vec<StepRecord>,
}

impl QuickhullTrace {
    /// Candidates examined across all steps (initialization excluded).
    pub fn total_candidate_scans(&self) -> u64 {
        self.steps.iter().map(|s| s.remaining_before as u64).sum()
    }

    pub fn promotions(&self) -> impl Iterator<Item = &Promotion> {
        self.steps.iter().flat_map(|s| s.promotions.iter())
    }

    /// Line-oriented export: one `remaining_before discarded promoted
    /// remaining_after` line per step, preceded by a `#` header.
    pub fn to_records(&self) -> String {
        let mut out = String::from("# remaining_before discarded promoted remaining_after\n");
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                s.remaining_before, s.discarded, s.promoted, s.remaining_after
            );
        }
        out
    }

    /// Parses the output of [`to_records`](Self::to_records) back into
    /// `(remaining_before, discarded, promoted, remaining_after)` tuples.
    pub fn parse_records(text: &str) -> Result<Vec<[usize; 4]>> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: i + 1, message: format!("{e}") })?;
            let row: [usize; 4] = fields.try_into().map_err(|f: Vec<usize>| Error::Parse {
                line: i + 1,
                message: format!("expected 4 fields, found {}", f.len()),
            })?;
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Outcome of [`quickhull_traced`].
#[derive(Clone, Debug)]
pub enum QuickhullOutcome {
    Complete { hull: Hull2D, trace: QuickhullTrace },
    EarlyStopped { trace: QuickhullTrace },
}

impl QuickhullOutcome {
    pub fn trace(&self) -> &QuickhullTrace {
        match self {
            QuickhullOutcome::Complete { trace, .. } | QuickhullOutcome::EarlyStopped { trace } => {
                trace
            }
        }
    }

    pub fn hull(&self) -> Option<&Hull2D> {
        match self {
            QuickhullOutcome::Complete { hull, .. } => Some(hull),
            QuickhullOutcome::EarlyStopped { .. } => None,
        }
    }
}

const HORIZONTAL: (i64, i64) = (1, 0);

fn direction(from: Point2, to: Point2) -> (i64, i64) {
    (to.x - from.x, to.y - from.y)
}

/// Builds the initial partial hull from the topmost, bottommost and the two
/// extreme points normal to the line joining them.
///
/// Ties: the leftmost topmost point, the rightmost bottommost point, and the
/// lexicographically smallest extreme point on each side.
pub fn initialize_partial_hull(points: &[Point2]) -> Result<(Initialized, InitRecord)> {
    let first = *points.first().ok_or(Error::EmptySet)?;
    let mut top = first;
    let mut bottom = first;
    for &p in &points[1..] {
        if p.y > top.y || (p.y == top.y && p.x < top.x) {
            top = p;
        }
        if p.y < bottom.y || (p.y == bottom.y && p.x > bottom.x) {
            bottom = p;
        }
    }
    let n = points.len();
    if top == bottom {
        let record = InitRecord { input: n, vertices: 1, discarded: n - 1, remaining: 0 };
        return Ok((Initialized::Done(Hull2D::from_ccw(vec![top])?), record));
    }

    // Signed distances from the top-bottom line; negative is to the west.
    let mut west: Option<(i128, Point2)> = None;
    let mut east: Option<(i128, Point2)> = None;
    for &p in points {
        let c = cross(top, bottom, p);
        if c < 0 && west.is_none_or(|(best, q)| c < best || (c == best && p < q)) {
            west = Some((c, p));
        }
        if c > 0 && east.is_none_or(|(best, q)| c > best || (c == best && p < q)) {
            east = Some((c, p));
        }
    }
    if west.is_none() && east.is_none() {
        let record = InitRecord { input: n, vertices: 2, discarded: n - 2, remaining: 0 };
        return Ok((Initialized::Done(Hull2D::from_ccw(vec![top, bottom])?), record));
    }

    let side = direction(top, bottom);
    let mut cycle = vec![SupportedVertex { point: top, support: HORIZONTAL }];
    if let Some((_, w)) = west {
        cycle.push(SupportedVertex { point: w, support: side });
    }
    cycle.push(SupportedVertex { point: bottom, support: HORIZONTAL });
    if let Some((_, e)) = east {
        cycle.push(SupportedVertex { point: e, support: side });
    }

    let k = cycle.len();
    let mut buckets: Vec<Vec<Point2>> = vec![Vec::new(); k];
    let mut discarded = 0;
    for &p in points {
        if cycle.iter().any(|v| v.point == p) {
            continue;
        }
        match (0..k).find(|&i| cross(cycle[i].point, cycle[(i + 1) % k].point, p) < 0) {
            Some(i) => buckets[i].push(p),
            None => discarded += 1,
        }
    }
    let remaining = n - k - discarded;
    let edges: Vec<Edge> = buckets
        .into_iter()
        .enumerate()
        .map(|(i, bucket)| Edge::new(cycle[i], cycle[(i + 1) % k], bucket))
        .collect();
    let ph = PartialHull { edges };
    let record = InitRecord { input: n, vertices: k, discarded, remaining };
    if ph.is_complete() {
        Ok((Initialized::Done(ph.to_hull()?), record))
    } else {
        Ok((Initialized::Partial(ph), record))
    }
}

/// Twice the area of the triangle with corners `a`, `d` and the point where
/// the supporting line through `a` meets the line through `d` parallel to
/// `edge_dir`. Zero when the two lines are parallel.
fn preserved_twice_area(a: SupportedVertex, d: Point2, edge_dir: (i64, i64)) -> BigRational {
    let ad = direction(a.point, d);
    let denom = cross_vec(a.support, edge_dir);
    if denom == 0 {
        return BigRational::zero();
    }
    let num = BigInt::from(cross_vec(ad, edge_dir).abs()) * BigInt::from(cross_vec(ad, a.support).abs());
    BigRational::new(num, BigInt::from(denom.abs()))
}

fn shoelace_twice_area(poly: &[Point2]) -> BigRational {
    let n = poly.len();
    let sum: i128 = (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum();
    BigRational::from_integer(BigInt::from(sum.abs()))
}

impl PartialHull {
    /// True once every edge is confirmed.
    pub fn is_complete(&self) -> bool {
        self.edges.iter().all(|e| e.confirmed)
    }

    pub fn vertices(&self) -> Vec<Point2> {
        self.edges.iter().map(|e| e.a.point).collect()
    }

    /// Number of candidates still waiting in edge buckets.
    pub fn remaining(&self) -> usize {
        self.edges.iter().map(|e| e.bucket.len()).sum()
    }

    pub fn active_edges(&self) -> usize {
        self.edges.iter().filter(|e| !e.confirmed).count()
    }

    fn to_hull(&self) -> Result<Hull2D> {
        Hull2D::from_ccw(self.vertices())
    }

    /// Checks the structural invariants: the vertex cycle is strictly convex,
    /// and every bucketed candidate is strictly outside its edge and not
    /// beyond either endpoint's supporting line.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        self.to_hull().map_err(|e| e.to_string())?;
        for edge in &self.edges {
            let (a, b) = (edge.a, edge.b);
            for &p in &edge.bucket {
                if cross(a.point, b.point, p) >= 0 {
                    return Err(format!("{p} is not outside edge {}-{}", a.point, b.point));
                }
                for (v, other) in [(a, b.point), (b, a.point)] {
                    let side_other = cross_vec(v.support, direction(v.point, other)).signum();
                    let side_p = cross_vec(v.support, direction(v.point, p)).signum();
                    if side_other * side_p < 0 {
                        return Err(format!("{p} lies beyond the supporting line at {}", v.point));
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs one step over every active edge.
    pub fn run_step(&mut self) -> StepRecord {
        let remaining_before = self.remaining();
        let mut discarded = 0;
        let mut promoted = 0;
        let mut promotions = Vec::new();
        let mut next = Vec::with_capacity(self.edges.len() * 2);

        for edge in std::mem::take(&mut self.edges) {
            if edge.confirmed {
                next.push(edge);
                continue;
            }
            let Edge { a, b, bucket, .. } = edge;
            let (pa, pb) = (a.point, b.point);
            let edge_dir = direction(pa, pb);

            let mut depth = 0i128;
            let mut first = pa;
            let mut last = pa;
            let mut first_t = i128::MAX;
            let mut last_t = i128::MIN;
            for &p in &bucket {
                let dp = -cross(pa, pb, p);
                let t = edge_dir.0 as i128 * (p.x - pa.x) as i128
                    + edge_dir.1 as i128 * (p.y - pa.y) as i128;
                if dp > depth {
                    depth = dp;
                    (first, last, first_t, last_t) = (p, p, t, t);
                } else if dp == depth {
                    if t < first_t {
                        (first, first_t) = (p, t);
                    }
                    if t > last_t {
                        (last, last_t) = (p, t);
                    }
                }
            }

            let support = edge_dir;
            let da = SupportedVertex { point: first, support };
            let db = SupportedVertex { point: last, support };
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut step_discarded = 0;

            if first == last {
                for &p in &bucket {
                    if p == first {
                        continue;
                    }
                    if cross(pa, first, p) < 0 {
                        left.push(p);
                    } else if cross(first, pb, p) < 0 {
                        right.push(p);
                    } else {
                        step_discarded += 1;
                    }
                }
                promoted += 1;
                promotions.push(Promotion {
                    edge: (pa, pb),
                    vertices: vec![first],
                    discarded_twice_area: shoelace_twice_area(&[pa, pb, first]),
                    preserved_a_twice_area: preserved_twice_area(a, first, edge_dir),
                    preserved_b_twice_area: preserved_twice_area(b, first, edge_dir),
                });
                next.push(Edge::new(a, da, left));
                next.push(Edge::new(da, b, right));
            } else {
                for &p in &bucket {
                    if p == first || p == last {
                        continue;
                    }
                    if -cross(pa, pb, p) == depth {
                        step_discarded += 1;
                    } else if cross(pa, first, p) < 0 {
                        left.push(p);
                    } else if cross(last, pb, p) < 0 {
                        right.push(p);
                    } else {
                        step_discarded += 1;
                    }
                }
                promoted += 2;
                promotions.push(Promotion {
                    edge: (pa, pb),
                    vertices: vec![first, last],
                    discarded_twice_area: shoelace_twice_area(&[pa, pb, last, first]),
                    preserved_a_twice_area: preserved_twice_area(a, first, edge_dir),
                    preserved_b_twice_area: preserved_twice_area(b, last, edge_dir),
                });
                next.push(Edge::new(a, da, left));
                next.push(Edge::new(da, db, Vec::new()));
                next.push(Edge::new(db, b, right));
            }
            discarded += step_discarded;
        }

        self.edges = next;
        StepRecord {
            remaining_before,
            discarded,
            promoted,
            remaining_after: self.remaining(),
            promotions,
        }
    }

    /// Runs steps until the hull is complete, or until a step keeps more than
    /// half of its candidates when `early_stop` is set.
    pub fn finish(mut self, init: InitRecord, early_stop: bool) -> Result<QuickhullOutcome> {
        let mut steps = Vec::new();
        while !self.is_complete() {
            let step = self.run_step();
            let stop = early_stop && !step.discards_at_least_half();
            steps.push(step);
            if stop {
                return Ok(QuickhullOutcome::EarlyStopped { trace: QuickhullTrace { init, steps } });
            }
        }
        let hull = self.to_hull()?;
        Ok(QuickhullOutcome::Complete { hull, trace: QuickhullTrace { init, steps } })
    }
}

/// Quickhull over a planar point set. Initialization is never subject to the
/// half-discard rule.
pub fn quickhull_traced(set: &PointSet, early_stop: bool) -> Result<QuickhullOutcome> {
    quickhull_points(&set.points2()?, early_stop)
}

/// [`quickhull_traced`] over distinct points given directly.
pub fn quickhull_points(points: &[Point2], early_stop: bool) -> Result<QuickhullOutcome> {
    let (init, record) = initialize_partial_hull(points)?;
    match init {
        Initialized::Done(hull) => Ok(QuickhullOutcome::Complete {
            hull,
            trace: QuickhullTrace { init: record, steps: Vec::new() },
        }),
        Initialized::Partial(ph) => ph.finish(record, early_stop),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point2> {
        v.iter().copied().map(Point2::from).collect()
    }

    fn lone_edge(a: (i64, i64), b: (i64, i64), bucket: &[(i64, i64)]) -> PartialHull {
        // Supports perpendicular to the edge at both ends.
        let dir = (b.0 - a.0, b.1 - a.1);
        let normal = (-dir.1, dir.0);
        let sa = SupportedVertex { point: a.into(), support: normal };
        let sb = SupportedVertex { point: b.into(), support: normal };
        PartialHull { edges: vec![Edge::new(sa, sb, pts(bucket)), Edge::new(sb, sa, Vec::new())] }
    }

    #[test]
    fn init_discards_center_of_square() {
        let p = pts(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]);
        let (init, record) = initialize_partial_hull(&p).unwrap();
        assert_eq!(record, InitRecord { input: 5, vertices: 4, discarded: 1, remaining: 0 });
        let Initialized::Done(hull) = init else { panic!("square should finish at init") };
        assert_eq!(hull.vertices(), pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]).as_slice());
        // (1,1) is strictly inside every edge of the partial hull.
        for i in 0..4 {
            let vs = hull.vertices();
            assert!(cross(vs[i], vs[(i + 1) % 4], Point2::new(1, 1)) > 0);
        }
    }

    #[test]
    fn init_collinear_and_single() {
        let (init, _) = initialize_partial_hull(&pts(&[(0, 0), (1, 1), (2, 2)])).unwrap();
        let Initialized::Done(hull) = init else { panic!() };
        assert_eq!(hull.vertices(), pts(&[(0, 0), (2, 2)]).as_slice());

        let (init, _) = initialize_partial_hull(&pts(&[(0, 0)])).unwrap();
        let Initialized::Done(hull) = init else { panic!() };
        assert_eq!(hull.vertices(), pts(&[(0, 0)]).as_slice());

        let (init, _) = initialize_partial_hull(&pts(&[(5, 1), (0, 1), (3, 1)])).unwrap();
        let Initialized::Done(hull) = init else { panic!() };
        assert_eq!(hull.vertices(), pts(&[(0, 1), (5, 1)]).as_slice());

        assert_eq!(initialize_partial_hull(&[]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn init_tie_rules() {
        // Top row ties resolve to the leftmost, bottom row to the rightmost.
        let p = pts(&[(0, 0), (1, 0), (2, 0), (0, 2), (1, 2), (2, 2), (1, 1)]);
        let (init, record) = initialize_partial_hull(&p).unwrap();
        let Initialized::Done(hull) = init else { panic!() };
        assert_eq!(hull.vertices(), pts(&[(0, 0), (2, 0), (2, 2), (0, 2)]).as_slice());
        assert_eq!(record.vertices, 4);
        assert_eq!(record.discarded, 3);
    }

    #[test]
    fn step_unique_farthest_discards_points_on_new_edges() {
        // Edge runs (4,0) -> (0,0) so that its outside is y > 0.
        let mut ph = lone_edge((4, 0), (0, 0), &[(1, 1), (2, 2), (3, 1)]);
        let step = ph.run_step();
        assert_eq!(step.remaining_before, 3);
        assert_eq!(step.promoted, 1);
        // (3,1) is the midpoint of (4,0)-(2,2), (1,1) of (2,2)-(0,0).
        assert_eq!(step.discarded, 2);
        assert_eq!(step.remaining_after, 0);
        assert_eq!(step.promotions[0].vertices, pts(&[(2, 2)]));
        assert!(ph.is_complete());
    }

    #[test]
    fn step_unique_farthest_splits_survivors() {
        let mut ph = lone_edge((6, 0), (0, 0), &[(1, 2), (3, 3), (5, 2), (3, 1)]);
        let step = ph.run_step();
        assert_eq!((step.promoted, step.discarded, step.remaining_after), (1, 1, 2));
        ph.check_invariants().unwrap();
        let next = ph.run_step();
        assert_eq!((next.promoted, next.remaining_after), (2, 0));
        assert!(ph.is_complete());
    }

    #[test]
    fn step_collinear_farthest_promotes_first_and_last() {
        let mut ph = lone_edge((4, 0), (0, 0), &[(1, 2), (2, 2), (3, 2)]);
        let step = ph.run_step();
        assert_eq!(step.promoted, 2);
        assert_eq!(step.discarded, 1);
        assert_eq!(step.remaining_after, 0);
        // Along the edge direction (4,0)->(0,0), (3,2) comes first.
        assert_eq!(step.promotions[0].vertices, pts(&[(3, 2), (1, 2)]));
        assert!(ph.is_complete());
        assert_eq!(ph.vertices(), pts(&[(4, 0), (3, 2), (1, 2), (0, 0)]));
    }

    #[test]
    fn edge_without_outside_candidates_is_confirmed() {
        let ph = lone_edge((4, 0), (0, 0), &[]);
        assert!(ph.is_complete());
    }

    #[test]
    fn disk_of_radius_two() {
        let mut p = Vec::new();
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                if x * x + y * y <= 4 {
                    p.push(Point2::new(x, y));
                }
            }
        }
        assert_eq!(p.len(), 13);
        let out = quickhull_points(&p, true).unwrap();
        let hull = out.hull().expect("disk is digital convex");
        // (±1, ±1) sit on the hull boundary but are not vertices.
        let expected = pts(&[(-2, 0), (0, -2), (2, 0), (0, 2)]);
        assert_eq!(hull.vertices(), expected.as_slice());
    }

    #[test]
    fn corners_finish_at_init() {
        let out = quickhull_points(&pts(&[(0, 0), (3, 0), (0, 3), (3, 3)]), false).unwrap();
        assert_eq!(out.hull().unwrap().vertices().len(), 4);
        assert!(out.trace().steps.iter().all(|s| s.remaining_after == 0));
    }

    #[test]
    fn three_points_with_early_stop() {
        let out = quickhull_points(&pts(&[(0, 0), (10, 1), (20, 0)]), true).unwrap();
        let hull = out.hull().expect("must complete");
        assert_eq!(hull.vertices(), pts(&[(0, 0), (20, 0), (10, 1)]).as_slice());
    }

    #[test]
    fn records_round_trip() {
        let mut p = Vec::new();
        for x in 0..20i64 {
            p.push(Point2::new(x, (x * x) % 17));
        }
        let out = quickhull_points(&p, false).unwrap();
        let text = out.trace().to_records();
        let rows = QuickhullTrace::parse_records(&text).unwrap();
        assert_eq!(rows.len(), out.trace().steps.len());
        for (row, s) in rows.iter().zip(&out.trace().steps) {
            assert_eq!(*row, [s.remaining_before, s.discarded, s.promoted, s.remaining_after]);
        }
        assert!(QuickhullTrace::parse_records("1 2 3").is_err());
    }
}
