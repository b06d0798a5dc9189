//! Seeded instance families: digital convex sets, punctured negatives, and
//! the skewed pair that inflates `S'`.
//!
//! All randomness comes from [`SplitMix64`], so every instance is a pure
//! function of its parameters and seed.

use crate::convexity_nd::{HullMembership, RationalPoint};
use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, LatticePoint, PointSet, COORD_BOUND};
use crate::oracle::for_each_in_box;
use crate::rng::SplitMix64;

/// Denominator of the random polytope generators.
pub const GENERATOR_DENOMINATOR: i64 = 4;

/// How many consecutive seeds the polytope generator tries before giving up.
const MAX_RESEEDS: u64 = 1000;

/// All lattice points within Euclidean distance `sqrt(radius_squared)` of
/// `center`.
pub fn gen_ball(d: usize, radius_squared: u64, center: &[i64]) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if center.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: center.len() });
    }
    let r = radius_squared.isqrt() as i64;
    let mut rows: Vec<i64> = Vec::new();
    let mut offset = vec![-r; d];
    // Odometer over the offset cube with the partial squared norm pruned.
    fn walk(k: usize, left: i64, r: i64, offset: &mut [i64], center: &[i64], rows: &mut Vec<i64>) {
        if k == offset.len() {
            rows.extend(offset.iter().zip(center).map(|(o, c)| o + c));
            return;
        }
        let reach = left.isqrt().min(r);
        for v in -reach..=reach {
            offset[k] = v;
            walk(k + 1, left - v * v, r, offset, center, rows);
        }
    }
    walk(0, radius_squared as i64, r, &mut offset, center, &mut rows);
    PointSet::new(d, rows.chunks_exact(d))
}

/// Exact rank of a small integer matrix by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let (p, q) = (rows[rank][col], rows[r][col]);
                let g = num_integer::gcd(p, q);
                for c in 0..cols {
                    rows[r][c] = rows[r][c] * (p / g) - rows[rank][c] * (q / g);
                }
                let h = rows[r].iter().fold(0i128, |h, &v| num_integer::gcd(h, v));
                if h > 1 {
                    rows[r].iter_mut().for_each(|v| *v /= h);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Lattice points inside the hull of `num_generators` random rational points
/// (denominator [`GENERATOR_DENOMINATOR`]) drawn in `[-half_width,
/// half_width]^d`. Degenerate samples (hull not full-dimensional, or holding
/// no lattice point) are redrawn with the next seed.
pub fn gen_random_polytope_points(d: usize, num_generators: usize, half_width: i64, seed: u64) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if num_generators < d + 1 {
        return Err(Error::Generation(format!("need at least {} generators in dimension {d}", d + 1)));
    }
    if half_width <= 0 || half_width > COORD_BOUND / GENERATOR_DENOMINATOR {
        return Err(Error::Generation(format!("half width {half_width} out of range")));
    }
    let den = GENERATOR_DENOMINATOR;
    for attempt in 0..MAX_RESEEDS {
        let mut rng = SplitMix64::new(seed.wrapping_add(attempt));
        let raw: Vec<Vec<i64>> = (0..num_generators)
            .map(|_| (0..d).map(|_| rng.range_inclusive(-half_width * den, half_width * den)).collect())
            .collect();
        let diffs: Vec<Vec<i128>> =
            raw[1..].iter().map(|g| g.iter().zip(&raw[0]).map(|(a, b)| (a - b) as i128).collect()).collect();
        if rank(diffs) < d {
            continue;
        }
        let generators = PointSet::new(d, &raw)?;
        let scaled = generators.bbox().ok_or(Error::EmptySet)?;
        let bbox = BoundingBox {
            min: scaled.min.iter().map(|&c| c.div_euclid(den) + (c.rem_euclid(den) != 0) as i64).collect(),
            max: scaled.max.iter().map(|&c| c.div_euclid(den)).collect(),
        };
        if bbox.min.iter().zip(&bbox.max).any(|(lo, hi)| lo > hi) {
            continue;
        }
        let mut membership = HullMembership::new(&generators)?;
        let mut rows: Vec<i64> = Vec::new();
        for_each_in_box(&bbox, |x| {
            let q: Vec<(i64, i64)> = x.iter().map(|&c| (c * den, 1)).collect();
            if membership.contains(&RationalPoint::new(&q)?)? {
                rows.extend_from_slice(x);
            }
            Ok(())
        })?;
        if !rows.is_empty() {
            return PointSet::new(d, rows.chunks_exact(d));
        }
    }
    Err(Error::Generation(format!("no usable sample after {MAX_RESEEDS} seeds")))
}

/// Removes one point `p` of `base` with `p ∈ conv(base \ {p})`, so the
/// result is not digital convex. Candidates are tried in a seeded order.
pub fn gen_punctured(base: &PointSet, seed: u64) -> Result<PointSet> {
    let mut order: Vec<usize> = (0..base.len()).collect();
    SplitMix64::new(seed).shuffle(&mut order);
    for i in order {
        let rest = PointSet::new(
            base.dim(),
            base.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p),
        )?;
        if rest.is_empty() {
            continue;
        }
        if HullMembership::new(&rest)?.contains(&RationalPoint::from(base.point(i)))? {
            return Ok(rest);
        }
    }
    Err(Error::Generation("every point is a hull vertex; nothing to remove".into()))
}

/// The pair `{(0,0), (1,2k)}`, whose `S'` has at least `2k` points.
pub fn gen_skewed_pair(k: i64) -> Result<PointSet> {
    if k < 1 {
        return Err(Error::Generation(format!("k must be at least 1, got {k}")));
    }
    PointSet::new(2, [[0, 0], [1, 2 * k]])
}

/// Convenience: the same set as lattice points, sorted.
pub fn sorted_points(set: &PointSet) -> Vec<LatticePoint> {
    let mut pts = set.to_lattice_points();
    pts.sort();
    pts
}
