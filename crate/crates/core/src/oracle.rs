//! Brute-force references. Nothing here shares code with the fast testers
//! beyond the orientation predicate and LP hull membership.

use std::collections::HashSet;

use crate::convexity_nd::{HullMembership, RationalPoint, DEFAULT_VOLUME_CAP};
use crate::error::{Error, Result};
use crate::geometry::{cross, within_box, BoundingBox, Hull2D, LatticePoint, Point2, PointSet};

/// Planar hull by exhaustive edge testing, `O(n^3)`.
///
/// `p -> q` is a counterclockwise hull edge iff every other point is strictly
/// left of it or on the closed segment `[p, q]`.
pub fn brute_hull_2d(set: &PointSet) -> Result<Hull2D> {
    let pts = set.points2()?;
    match pts.len() {
        0 => return Ok(Hull2D::empty()),
        1 => return Hull2D::from_ccw(pts),
        _ => {}
    }
    let (a, b) = (pts[0], pts[1]);
    if pts.iter().all(|&r| cross(a, b, r) == 0) {
        let lo = *pts.iter().min().unwrap_or(&a);
        let hi = *pts.iter().max().unwrap_or(&b);
        return Hull2D::from_ccw(vec![lo, hi]);
    }

    let mut next: Vec<(Point2, Point2)> = Vec::new();
    for &p in &pts {
        for &q in &pts {
            if p == q {
                continue;
            }
            let is_edge = pts.iter().all(|&r| {
                let c = cross(p, q, r);
                c > 0 || (c == 0 && within_box(p, q, r))
            });
            if is_edge {
                next.push((p, q));
            }
        }
    }
    let start = next.iter().map(|e| e.0).min().ok_or_else(|| Error::Invariant("no hull edges".into()))?;
    let mut cycle = vec![start];
    let mut cur = start;
    loop {
        let (_, q) = *next
            .iter()
            .find(|e| e.0 == cur)
            .ok_or_else(|| Error::Invariant(format!("hull chain broken at {cur}")))?;
        if q == start {
            break;
        }
        if cycle.len() > next.len() {
            return Err(Error::Invariant("hull chain does not close".into()));
        }
        cycle.push(q);
        cur = q;
    }
    Hull2D::from_ccw(cycle)
}

/// Calls `f` on every lattice point of the box, in lexicographic order.
pub(crate) fn for_each_in_box(bbox: &BoundingBox, mut f: impl FnMut(&[i64]) -> Result<()>) -> Result<()> {
    let mut x = bbox.min.clone();
    loop {
        f(&x)?;
        let mut k = x.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            if x[k] < bbox.max[k] {
                x[k] += 1;
                break;
            }
            x[k] = bbox.min[k];
        }
    }
}

fn check_volume(bbox: &BoundingBox, cap: u128) -> Result<()> {
    let volume = bbox.volume();
    if volume > cap {
        return Err(Error::VolumeCapExceeded { volume, cap });
    }
    Ok(())
}

/// `conv(S) ∩ Z^d` by scanning the bounding box.
///
/// Planar sets are tested against the half-planes of [`brute_hull_2d`];
/// other dimensions use LP hull membership.
pub fn brute_lattice_points(set: &PointSet) -> Result<Vec<LatticePoint>> {
    brute_lattice_points_with_cap(set, DEFAULT_VOLUME_CAP)
}

pub fn brute_lattice_points_with_cap(set: &PointSet, cap: u128) -> Result<Vec<LatticePoint>> {
    let Some(bbox) = set.bbox() else {
        return Ok(Vec::new());
    };
    check_volume(bbox, cap)?;
    let mut found = Vec::new();
    if set.dim() == 2 {
        let hull = brute_hull_2d(set)?;
        for_each_in_box(bbox, |x| {
            if hull.contains(Point2::new(x[0], x[1])) {
                found.push(LatticePoint::new(x.to_vec()));
            }
            Ok(())
        })?;
    } else {
        let mut membership = HullMembership::new(set)?;
        for_each_in_box(bbox, |x| {
            if membership.contains(&RationalPoint::from(x))? {
                found.push(LatticePoint::new(x.to_vec()));
            }
            Ok(())
        })?;
    }
    Ok(found)
}

/// `|conv(S) ∩ Z^d| == |S|`.
pub fn brute_is_convex(set: &PointSet) -> Result<bool> {
    Ok(brute_lattice_points(set)?.len() == set.len())
}

/// `S'` by filtering the bounding box grown by one with the cube test.
pub fn brute_dilated_set(set: &PointSet) -> Result<HashSet<Vec<i64>>> {
    let bbox = set.bbox().ok_or(Error::EmptySet)?;
    let grown = BoundingBox {
        min: bbox.min.iter().map(|c| c - 1).collect(),
        max: bbox.max.iter().map(|c| c + 1).collect(),
    };
    check_volume(&grown, DEFAULT_VOLUME_CAP)?;
    let mut membership = HullMembership::new(set)?;
    let mut out = HashSet::new();
    for_each_in_box(&grown, |x| {
        if membership.cube_meets(x)? {
            out.insert(x.to_vec());
        }
        Ok(())
    })?;
    Ok(out)
}
