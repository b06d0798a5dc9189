//! Lattice point counts of planar lattice polygons via Pick's formula.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::{segment_lattice_count_2d, Hull2D, HullKind};

/// Twice the area of the hull (shoelace sum); zero for degenerate hulls.
pub fn twice_area(hull: &Hull2D) -> u128 {
    let vs = hull.vertices();
    if hull.kind() != HullKind::Full {
        return 0;
    }
    let n = vs.len();
    let sum: i128 = (0..n)
        .map(|i| {
            let (p, q) = (vs[i], vs[(i + 1) % n]);
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum();
    sum.unsigned_abs()
}

/// Lattice points on the hull boundary.
pub fn boundary_count(hull: &Hull2D) -> Result<u128> {
    let vs = hull.vertices();
    match hull.kind() {
        HullKind::Empty => Err(Error::EmptySet),
        HullKind::Point => Ok(1),
        HullKind::Segment => Ok(segment_lattice_count_2d(vs[0], vs[1]) as u128),
        HullKind::Full => {
            let n = vs.len();
            Ok((0..n)
                .map(|i| {
                    let (p, q) = (vs[i], vs[(i + 1) % n]);
                    (p.x - q.x).unsigned_abs().gcd(&(p.y - q.y).unsigned_abs()) as u128
                })
                .sum())
        }
    }
}

/// Lattice points in the closed hull. With `A = I + B/2 - 1`, the total
/// `I + B` equals `(2A + B) / 2 + 1`.
pub fn lattice_count(hull: &Hull2D) -> Result<u128> {
    let boundary = boundary_count(hull)?;
    if hull.kind() != HullKind::Full {
        return Ok(boundary);
    }
    let doubled = twice_area(hull);
    let sum = doubled + boundary;
    if !sum.is_multiple_of(2) {
        return Err(Error::Invariant(format!(
            "twice area {doubled} plus boundary count {boundary} is odd"
        )));
    }
    Ok(sum / 2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;

    fn hull(v: &[(i64, i64)]) -> Hull2D {
        Hull2D::from_ccw(v.iter().copied().map(Point2::from).collect()).unwrap()
    }

    #[test]
    fn twice_area_examples() {
        assert_eq!(twice_area(&hull(&[(0, 0), (1, 0), (1, 1), (0, 1)])), 2);
        assert_eq!(twice_area(&hull(&[(0, 0), (4, 0), (0, 4)])), 16);
        assert_eq!(twice_area(&hull(&[(0, 0), (5, 2)])), 0);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_count(&hull(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap(), 4);
        assert_eq!(boundary_count(&hull(&[(0, 0), (4, 0), (0, 4)])).unwrap(), 12);
        assert_eq!(boundary_count(&hull(&[(0, 0), (2, 2)])).unwrap(), 3);
        assert_eq!(boundary_count(&hull(&[(7, -3)])).unwrap(), 1);
        assert_eq!(boundary_count(&Hull2D::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn lattice_count_examples() {
        assert_eq!(lattice_count(&hull(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap(), 4);
        assert_eq!(lattice_count(&hull(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap(), 9);
        assert_eq!(lattice_count(&hull(&[(0, 0), (4, 0), (0, 4)])).unwrap(), 15);
        assert_eq!(lattice_count(&hull(&[(0, 0), (1, 4)])).unwrap(), 2);
        assert_eq!(lattice_count(&hull(&[(3, 3)])).unwrap(), 1);
    }

    #[test]
    fn large_coordinates_do_not_overflow() {
        let m = crate::geometry::COORD_BOUND;
        let h = hull(&[(-m, -m), (m, -m), (m, m), (-m, m)]);
        let side = 2 * m as u128;
        assert_eq!(lattice_count(&h).unwrap(), (side + 1) * (side + 1));
    }
}
