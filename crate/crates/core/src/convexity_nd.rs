//! Digital convexity in any fixed dimension.
//!
//! Let `S'` be the lattice points `x` whose cube `x + [-1/2, 1/2]^d` meets
//! `conv(S)`. `S'` contains `conv(S) ∩ Z^d`, contains `S`, and is connected
//! under the `2d` axis-neighbor relation, so a stack walk seeded with `S`
//! that only expands into `S'` visits all of it. Each visited point is then
//! tested for membership in `conv(S)` by exact linear programming.
//!
//! The walk costs `O(n |S'|)`, and `|S'| / |S|` is unbounded: the pair
//! `{(0,0), (1,2k)}` already forces `|S'| >= 2k`.

use std::collections::HashSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LatticePoint, PointSet};
use crate::lp;
use crate::report::{ConvexityReport, Reason, TraversalStats, Verdict};

/// Environment variable overriding [`NdOptions::volume_cap`].
pub const VOLUME_CAP_ENV: &str = "DIGICONVEX_VOLUME_CAP";

pub const DEFAULT_VOLUME_CAP: u128 = 100_000_000;

const LP_SEED: u64 = 0x5EED_C0DE;

/// A point with exact rational coordinates, each reduced with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint(Vec<Ratio<i64>>);

impl RationalPoint {
    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn new(coords: &[(i64, i64)]) -> Result<Self> {
        coords
            .iter()
            .map(|&(num, den)| {
                if den == 0 {
                    Err(Error::ZeroDenominator)
                } else {
                    Ok(Ratio::new(num, den))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Ratio<i64>] {
        &self.0
    }
}

impl From<&LatticePoint> for RationalPoint {
    fn from(p: &LatticePoint) -> Self {
        Self(p.coords().iter().map(|&c| Ratio::from_integer(c)).collect())
    }
}

impl From<&[i64]> for RationalPoint {
    fn from(p: &[i64]) -> Self {
        Self(p.iter().map(|&c| Ratio::from_integer(c)).collect())
    }
}

fn check_query(dim: usize, set: &PointSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if dim != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: dim });
    }
    Ok(())
}

/// Membership tests against one point set, with an LP call counter.
#[derive(Debug)]
pub struct HullMembership<'a> {
    set: &'a PointSet,
    members: HashSet<&'a [i64]>,
    lp_calls: u64,
    // Rows that decided the previous query of each kind, tried first next time.
    contains_hint: Vec<usize>,
    cube_hint: Vec<usize>,
}

impl<'a> HullMembership<'a> {
    pub fn new(set: &'a PointSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Self {
            set,
            members: set.iter().collect(),
            lp_calls: 0,
            contains_hint: Vec::new(),
            cube_hint: Vec::new(),
        })
    }

    pub fn lp_calls(&self) -> u64 {
        self.lp_calls
    }

    /// Whether `x` lies in the closed hull of the set.
    pub fn contains(&mut self, x: &RationalPoint) -> Result<bool> {
        let set = self.set;
        check_query(x.dim(), set)?;
        let bbox = set.bbox().ok_or(Error::EmptySet)?;
        let outside_box = x.coords().iter().enumerate().any(|(k, c)| {
            let (num, den) = (*c.numer() as i128, *c.denom() as i128);
            num < bbox.min[k] as i128 * den || num > bbox.max[k] as i128 * den
        });
        if outside_box {
            return Ok(false);
        }
        if x.coords().iter().all(|c| c.is_integer()) {
            let integral: Vec<i64> = x.coords().iter().map(|c| c.to_integer()).collect();
            if self.members.contains(integral.as_slice()) {
                return Ok(true);
            }
        }
        // Scale everything by the common denominator so rows are integral.
        let common = x.coords().iter().fold(1i128, |l, c| l.lcm(&(*c.denom() as i128)));
        let scaled: Vec<i128> =
            x.coords().iter().map(|c| *c.numer() as i128 * (common / *c.denom() as i128)).collect();
        let dim = set.dim();
        self.lp_calls += 1;
        let fill = |i: usize, out: &mut [i128]| {
            for (k, (o, s)) in out.iter_mut().zip(set.point(i)).enumerate() {
                *o = common * *s as i128 - scaled[k];
            }
        };
        Ok(!lp::separated_with_hint(dim, set.len(), LP_SEED, fill, &mut self.contains_hint))
    }

    /// Whether the cube `x + [-1/2, 1/2]^d` meets the hull, i.e. whether
    /// `2x` lies in the hull of `{2s + v : s in S, v in {-1, 1}^d}`. Those
    /// `2^d n` points are generated row by row inside the LP.
    pub fn cube_meets(&mut self, x: &[i64]) -> Result<bool> {
        let set = self.set;
        check_query(x.len(), set)?;
        // S' lies inside the bounding box of S (cubes reach only 1/2 out).
        if !set.bbox().is_some_and(|b| b.contains(x)) {
            return Ok(false);
        }
        if self.members.contains(x) {
            return Ok(true);
        }
        let dim = set.dim();
        let corners = 1usize << dim;
        self.lp_calls += 1;
        let fill = |idx: usize, out: &mut [i128]| {
            let (i, mask) = (idx / corners, idx % corners);
            for (k, (o, s)) in out.iter_mut().zip(set.point(i)).enumerate() {
                let v = if mask >> k & 1 == 1 { 1 } else { -1 };
                *o = 2 * (*s as i128 - x[k] as i128) + v;
            }
        };
        Ok(!lp::separated_with_hint(dim, set.len() * corners, LP_SEED, fill, &mut self.cube_hint))
    }
}

/// Whether `x` lies in `conv(S)`.
pub fn in_convex_hull(x: &RationalPoint, set: &PointSet) -> Result<bool> {
    HullMembership::new(set)?.contains(x)
}

/// Whether `x` lies in `conv(S) + [-1/2, 1/2]^d`, i.e. whether `x ∈ S'`.
pub fn cube_intersects_hull(x: &LatticePoint, set: &PointSet) -> Result<bool> {
    HullMembership::new(set)?.cube_meets(x.coords())
}

/// Limits for the dilated walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdOptions {
    /// Refuse inputs whose bounding box grown by one holds more lattice
    /// points than this, since that volume bounds `|S'|`.
    pub volume_cap: u128,
}

impl Default for NdOptions {
    fn default() -> Self {
        Self { volume_cap: DEFAULT_VOLUME_CAP }
    }
}

impl NdOptions {
    /// Defaults, with the cap taken from [`VOLUME_CAP_ENV`] when it parses.
    pub fn from_env() -> Self {
        let volume_cap = std::env::var(VOLUME_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_VOLUME_CAP);
        Self { volume_cap }
    }
}

/// Stack walk over `S'`, seeded with `S`.
///
/// Points are marked seen when pushed, so the stack never holds a point
/// twice. Neighbors are pushed in the order `+e1, -e1, +e2, -e2, ...`.
#[derive(Debug)]
pub struct DilatedTraversal<'a> {
    membership: HullMembership<'a>,
    members: HashSet<&'a [i64]>,
    frontier: Vec<Vec<i64>>,
    seen: HashSet<Vec<i64>>,
    visited: u64,
    peak_frontier: u64,
}

impl<'a> DilatedTraversal<'a> {
    pub fn new(set: &'a PointSet, options: &NdOptions) -> Result<Self> {
        let bbox = set.bbox().ok_or(Error::EmptySet)?;
        let volume = bbox.volume_with_margin(1);
        if volume > options.volume_cap {
            return Err(Error::VolumeCapExceeded { volume, cap: options.volume_cap });
        }
        let members: HashSet<&[i64]> = set.iter().collect();
        let frontier: Vec<Vec<i64>> = set.iter().map(<[i64]>::to_vec).collect();
        let seen: HashSet<Vec<i64>> = frontier.iter().cloned().collect();
        let peak_frontier = frontier.len() as u64;
        Ok(Self {
            membership: HullMembership::new(set)?,
            members,
            frontier,
            seen,
            visited: 0,
            peak_frontier,
        })
    }

    /// Pops the next point of `S'`, pushing its unseen neighbors that are in
    /// `S'`. Returns the point and whether it belongs to `S`.
    pub fn next_point(&mut self) -> Result<Option<(Vec<i64>, bool)>> {
        let Some(x) = self.frontier.pop() else {
            return Ok(None);
        };
        self.visited += 1;
        let mut y = x.clone();
        for k in 0..x.len() {
            for delta in [1, -1] {
                y[k] = x[k] + delta;
                if !self.seen.contains(&y) && self.membership.cube_meets(&y)? {
                    self.seen.insert(y.clone());
                    self.frontier.push(y.clone());
                }
            }
            y[k] = x[k];
        }
        self.peak_frontier = self.peak_frontier.max(self.frontier.len() as u64);
        let in_set = self.members.contains(x.as_slice());
        Ok(Some((x, in_set)))
    }

    /// Hull membership for a visited point not in `S`.
    pub fn in_hull(&mut self, x: &[i64]) -> Result<bool> {
        self.membership.contains(&RationalPoint::from(x))
    }

    /// Every point discovered so far (visited or still on the stack).
    pub fn discovered(&self) -> &HashSet<Vec<i64>> {
        &self.seen
    }

    pub fn stats(&self) -> TraversalStats {
        TraversalStats {
            s_prime_size: self.visited,
            lp_calls: self.membership.lp_calls(),
            peak_frontier: self.peak_frontier,
        }
    }

    /// Walks the rest of `S'` and returns all of it.
    pub fn collect_all(mut self) -> Result<HashSet<Vec<i64>>> {
        while self.next_point()?.is_some() {}
        Ok(self.seen)
    }
}

/// Which flavor of the dilated walk to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NdVariant {
    /// Count every point of `S'` inside `conv(S)` and compare with `|S|`.
    Count,
    /// Stop at the first point of `S' \ S` inside `conv(S)`.
    EarlyExit,
}

/// Tests digital convexity by walking `S'`.
pub fn is_digital_convex_nd(set: &PointSet, variant: NdVariant) -> Result<ConvexityReport> {
    is_digital_convex_nd_with(set, variant, &NdOptions::default())
}

pub fn is_digital_convex_nd_with(
    set: &PointSet,
    variant: NdVariant,
    options: &NdOptions,
) -> Result<ConvexityReport> {
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
        report.lattice_count = Some(0);
        report.traversal = Some(TraversalStats::default());
        return Ok(report);
    }

    let mut walk = DilatedTraversal::new(set, options)?;
    let mut tally: u128 = 0;
    let mut membership_tests = 0;
    while let Some((x, in_set)) = walk.next_point()? {
        if in_set {
            tally += 1;
            continue;
        }
        membership_tests += 1;
        if walk.in_hull(&x)? {
            tally += 1;
            if variant == NdVariant::EarlyExit {
                report.verdict = Verdict::NotConvex;
                report.reason = Reason::GapPoint;
                report.gap_point = Some(LatticePoint::new(x));
                break;
            }
        }
    }
    report.work = membership_tests;
    report.traversal = Some(walk.stats());
    // Without an early exit every hull point of S' was tallied.
    if report.gap_point.is_none() {
        report.lattice_count = Some(tally);
        if tally != n as u128 {
            report.verdict = Verdict::NotConvex;
            report.reason = Reason::CountMismatch;
        }
    }
    Ok(report)
}

/// The lattice points of `conv(S)` missing from `S`, sorted.
pub fn enumerate_missing(set: &PointSet) -> Result<Vec<LatticePoint>> {
    enumerate_missing_with(set, &NdOptions::default())
}

pub fn enumerate_missing_with(set: &PointSet, options: &NdOptions) -> Result<Vec<LatticePoint>> {
    if set.is_empty() {
        return Ok(Vec::new());
    }
    let mut walk = DilatedTraversal::new(set, options)?;
    let mut missing = Vec::new();
    while let Some((x, in_set)) = walk.next_point()? {
        if !in_set && walk.in_hull(&x)? {
            missing.push(LatticePoint::new(x));
        }
    }
    missing.sort();
    Ok(missing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set2(rows: &[[i64; 2]]) -> PointSet {
        PointSet::new(2, rows).unwrap()
    }

    #[test]
    fn in_convex_hull_examples() {
        let square = set2(&[[0, 0], [2, 0], [0, 2], [2, 2]]);
        assert!(in_convex_hull(&RationalPoint::new(&[(1, 1), (1, 1)]).unwrap(), &square).unwrap());
        let tri = set2(&[[0, 0], [1, 0], [0, 1]]);
        assert!(in_convex_hull(&RationalPoint::new(&[(1, 2), (1, 2)]).unwrap(), &tri).unwrap());
        assert!(!in_convex_hull(&RationalPoint::new(&[(1, 2), (2, 3)]).unwrap(), &tri).unwrap());
        let tri2 = set2(&[[0, 0], [2, 0], [0, 2]]);
        assert!(!in_convex_hull(&RationalPoint::new(&[(3, 1), (0, 1)]).unwrap(), &tri2).unwrap());
    }

    #[test]
    fn in_convex_hull_errors() {
        let empty = PointSet::empty(2).unwrap();
        let x = RationalPoint::new(&[(0, 1), (0, 1)]).unwrap();
        assert_eq!(in_convex_hull(&x, &empty), Err(Error::EmptySet));
        let x3 = RationalPoint::new(&[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(matches!(in_convex_hull(&x3, &set2(&[[0, 0]])), Err(Error::DimensionMismatch { .. })));
        assert!(RationalPoint::new(&[(1, 0)]).is_err());
    }

    #[test]
    fn cube_examples() {
        let seg = set2(&[[0, 0], [1, 4]]);
        assert!(cube_intersects_hull(&LatticePoint::new(vec![1, 2]), &seg).unwrap());
        let unit = set2(&[[0, 0], [1, 0]]);
        assert!(!cube_intersects_hull(&LatticePoint::new(vec![2, 0]), &unit).unwrap());
        for p in seg.to_lattice_points() {
            assert!(cube_intersects_hull(&p, &seg).unwrap());
        }
    }

    #[test]
    fn nd_examples() {
        let pair = PointSet::new(3, [[0, 0, 0], [2, 0, 0]]).unwrap();
        for variant in [NdVariant::Count, NdVariant::EarlyExit] {
            assert!(!is_digital_convex_nd(&pair, variant).unwrap().is_convex());
        }
        let r = is_digital_convex_nd(&pair, NdVariant::EarlyExit).unwrap();
        assert_eq!(r.gap_point, Some(LatticePoint::new(vec![1, 0, 0])));

        let skew = set2(&[[0, 0], [1, 4]]);
        let r = is_digital_convex_nd(&skew, NdVariant::Count).unwrap();
        assert!(r.is_convex());
        assert!(r.traversal.unwrap().s_prime_size >= 4);
    }

    #[test]
    fn one_dimensional_sets() {
        let run = PointSet::new(1, [[3], [4], [5]]).unwrap();
        assert!(is_digital_convex_nd(&run, NdVariant::Count).unwrap().is_convex());
        let gap = PointSet::new(1, [[3], [5]]).unwrap();
        assert_eq!(enumerate_missing(&gap).unwrap(), vec![LatticePoint::new(vec![4])]);
    }

    #[test]
    fn missing_points_examples() {
        assert_eq!(enumerate_missing(&set2(&[[0, 0], [2, 2]])).unwrap(), vec![LatticePoint::new(vec![1, 1])]);
        assert!(enumerate_missing(&set2(&[[0, 0], [1, 0], [0, 1], [1, 1]])).unwrap().is_empty());
        let missing = enumerate_missing(&set2(&[[0, 0], [4, 0], [0, 4]])).unwrap();
        // 15 lattice points in the triangle, 3 of them given.
        assert_eq!(missing.len(), 12);
    }

    #[test]
    fn volume_cap_is_enforced() {
        let far = set2(&[[0, 0], [1000, 1000]]);
        let opts = NdOptions { volume_cap: 1000 };
        assert!(matches!(
            is_digital_convex_nd_with(&far, NdVariant::Count, &opts),
            Err(Error::VolumeCapExceeded { .. })
        ));
    }
}
