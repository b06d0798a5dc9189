//! Digital convexity testing for finite lattice point sets.
//!
//! A set `S` of lattice points is digital convex when the lattice points of
//! its convex hull are exactly `S`. Two testers are provided:
//!
//! * [`convexity2d::is_digital_convex_2d`] runs quickhull with an early stop
//!   and counts hull lattice points with Pick's formula, in time linear in
//!   `|S|` plus `h log r`;
//! * [`convexity_nd::is_digital_convex_nd`] works in any dimension by walking
//!   the lattice points whose unit cube meets the hull and deciding hull
//!   membership with exact linear programming.
//!
//! [`oracle`] holds brute-force references and [`generators`] seeded
//! instance families.

pub mod bench;
pub mod convexity2d;
pub mod convexity_nd;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub(crate) mod lp;
pub mod oracle;
pub mod pick;
pub mod quickhull;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{
    diameter_linf, orientation, segment_lattice_count, validate_input, BoundingBox, Hull2D, HullKind,
    LatticePoint, Orientation, Point2, PointSet,
};
pub use report::{ConvexityReport, Reason, Verdict};
