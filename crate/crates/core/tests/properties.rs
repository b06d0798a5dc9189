use std::collections::HashSet;

use digiconvex::convexity_nd::{in_convex_hull, DilatedTraversal, NdOptions, RationalPoint};
use digiconvex::oracle::{brute_dilated_set, brute_hull_2d, brute_lattice_points};
use digiconvex::pick::lattice_count;
use digiconvex::quickhull::{initialize_partial_hull, quickhull_traced, Initialized};
use digiconvex::{orientation, segment_lattice_count, LatticePoint, Point2, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn lp(c: &[i64]) -> LatticePoint {
    LatticePoint::new(c.to_vec())
}

fn points2(range: i64, max: usize) -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec(prop::array::uniform2(-range..=range), 1..=max)
}

fn hull_count(set: &PointSet) -> u128 {
    let outcome = quickhull_traced(set, false).unwrap();
    lattice_count(outcome.hull().unwrap()).unwrap()
}

/// Whether `x` is a convex combination of some affinely independent subset of
/// at most `d + 1` points, by exact elimination on every such subset.
fn caratheodory_contains(x: &[BigRational], pts: &[Vec<i64>]) -> bool {
    let mut chosen = Vec::new();
    fn rec(start: usize, chosen: &mut Vec<usize>, x: &[BigRational], pts: &[Vec<i64>]) -> bool {
        if !chosen.is_empty() && solves(chosen, x, pts) {
            return true;
        }
        if chosen.len() == x.len() + 1 {
            return false;
        }
        for i in start..pts.len() {
            chosen.push(i);
            let hit = rec(i + 1, chosen, x, pts);
            chosen.pop();
            if hit {
                return true;
            }
        }
        false
    }
    fn solves(chosen: &[usize], x: &[BigRational], pts: &[Vec<i64>]) -> bool {
        let d = x.len();
        let k = chosen.len();
        let int = |v: i64| BigRational::from_integer(BigInt::from(v));
        // Augmented (d + 1) x (k + 1) system [p_i; 1] lambda = [x; 1].
        let mut m: Vec<Vec<BigRational>> = (0..=d)
            .map(|r| {
                let mut row: Vec<BigRational> = chosen
                    .iter()
                    .map(|&i| if r < d { int(pts[i][r]) } else { int(1) })
                    .collect();
                row.push(if r < d { x[r].clone() } else { int(1) });
                row
            })
            .collect();
        let mut row = 0;
        for col in 0..k {
            let Some(p) = (row..=d).find(|&r| !m[r][col].is_zero()) else {
                return false; // dependent columns; a smaller subset covers it
            };
            m.swap(row, p);
            let inv = m[row][col].clone();
            for c in 0..=k {
                m[row][c] = &m[row][c] / &inv;
            }
            for r in 0..=d {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=k {
                        let delta = &f * &m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            row += 1;
        }
        if (row..=d).any(|r| !m[r][k].is_zero()) {
            return false;
        }
        (0..k).all(|r| !m[r][k].is_negative())
    }
    rec(0, &mut chosen, x, pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orientation_antisymmetric_and_translation_invariant(
        a in prop::array::uniform2(-1000i64..=1000),
        b in prop::array::uniform2(-1000i64..=1000),
        c in prop::array::uniform2(-1000i64..=1000),
        t in prop::array::uniform2(-1000i64..=1000),
    ) {
        let o = orientation(&lp(&a), &lp(&b), &lp(&c)).unwrap();
        prop_assert_eq!(o.as_sign(), -orientation(&lp(&b), &lp(&a), &lp(&c)).unwrap().as_sign());
        prop_assert_eq!(o, orientation(&lp(&b), &lp(&c), &lp(&a)).unwrap());
        let shift = |p: [i64; 2]| lp(&[p[0] + t[0], p[1] + t[1]]);
        prop_assert_eq!(o, orientation(&shift(a), &shift(b), &shift(c)).unwrap());
    }

    #[test]
    fn segment_count_matches_enumeration_2d(a in prop::array::uniform2(-20i64..=20), b in prop::array::uniform2(-20i64..=20)) {
        let mut count = 0;
        for x in a[0].min(b[0])..=a[0].max(b[0]) {
            for y in a[1].min(b[1])..=a[1].max(b[1]) {
                if (b[0] - a[0]) * (y - a[1]) == (b[1] - a[1]) * (x - a[0]) {
                    count += 1;
                }
            }
        }
        prop_assert_eq!(segment_lattice_count(&a, &b).unwrap(), count);
    }

    #[test]
    fn segment_count_matches_enumeration_3d(a in prop::array::uniform3(-6i64..=6), b in prop::array::uniform3(-6i64..=6)) {
        let delta = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let mut count = 0;
        for x in a[0].min(b[0])..=a[0].max(b[0]) {
            for y in a[1].min(b[1])..=a[1].max(b[1]) {
                for z in a[2].min(b[2])..=a[2].max(b[2]) {
                    let v = [x - a[0], y - a[1], z - a[2]];
                    let parallel = (0..3).all(|i| {
                        let j = (i + 1) % 3;
                        delta[i] * v[j] == delta[j] * v[i]
                    });
                    if parallel {
                        count += 1;
                    }
                }
            }
        }
        prop_assert_eq!(segment_lattice_count(&a, &b).unwrap(), count);
    }

    #[test]
    fn partial_hull_invariants_hold_every_step(pts in points2(40, 60)) {
        let points: Vec<Point2> = pts.iter().map(|p| Point2::new(p[0], p[1])).collect();
        let set = PointSet::from_points2(&points).unwrap();
        let (init, _) = initialize_partial_hull(&set.points2().unwrap()).unwrap();
        if let Initialized::Partial(mut partial) = init {
            prop_assert!(partial.check_invariants().is_ok(), "{:?}", partial.check_invariants());
            while !partial.is_complete() {
                partial.run_step();
                prop_assert!(partial.check_invariants().is_ok(), "{:?}", partial.check_invariants());
            }
            let brute = brute_hull_2d(&set).unwrap();
            let mut got = partial.vertices();
            let mut want = brute.vertices().to_vec();
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn pick_matches_oracle_and_is_monotone(pts in points2(30, 20), extra in prop::array::uniform2(-30i64..=30)) {
        let set = PointSet::new(2, &pts).unwrap();
        let count = hull_count(&set);
        prop_assert_eq!(count, brute_lattice_points(&set).unwrap().len() as u128);
        let mut grown = pts.clone();
        grown.push(extra);
        prop_assert!(hull_count(&PointSet::new(2, &grown).unwrap()) >= count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_membership_matches_caratheodory(
        d in 1usize..=3,
        raw in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=12),
        num in prop::collection::vec(-12i64..=12, 3),
        den in 1i64..=3,
    ) {
        let pts: Vec<Vec<i64>> = raw.iter().map(|r| r[..d].to_vec()).collect();
        let set = PointSet::new(d, &pts).unwrap();
        let q: Vec<(i64, i64)> = num[..d].iter().map(|&n| (n, den)).collect();
        let x = RationalPoint::new(&q).unwrap();
        let exact: Vec<BigRational> =
            q.iter().map(|&(n, dd)| BigRational::new(BigInt::from(n), BigInt::from(dd))).collect();
        let uniq: Vec<Vec<i64>> = set.iter().map(<[i64]>::to_vec).collect();
        prop_assert_eq!(in_convex_hull(&x, &set).unwrap(), caratheodory_contains(&exact, &uniq));
    }

    #[test]
    fn traversal_visits_exactly_the_dilated_set(
        d in 1usize..=3,
        raw in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=6),
    ) {
        let pts: Vec<Vec<i64>> = raw.iter().map(|r| r[..d].to_vec()).collect();
        let set = PointSet::new(d, &pts).unwrap();
        let walked: HashSet<Vec<i64>> =
            DilatedTraversal::new(&set, &NdOptions::default()).unwrap().collect_all().unwrap();
        prop_assert_eq!(walked, brute_dilated_set(&set).unwrap());
    }
}
