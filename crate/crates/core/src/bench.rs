//! Benchmark suites producing one [`BenchRow`] per (size, seed) instance.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::convexity2d::is_digital_convex_2d;
use crate::convexity_nd::{is_digital_convex_nd_with, NdOptions, NdVariant};
use crate::error::{Error, Result};
use crate::generators::{gen_ball, gen_punctured, gen_skewed_pair};
use crate::geometry::{diameter_linf, PointSet};
use crate::report::ConvexityReport;
use crate::rng::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Digital disks of about `n` points, planar tester.
    Convex2dScaling,
    /// Digital disks with one interior point removed, planar tester.
    Negative2d,
    /// Digital 3D balls of about `n` points, dilated tester.
    NdScaling,
    /// `gen_skewed_pair(k)` with `k` taken from the size list, dilated tester.
    SkewedPair,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Convex2dScaling, Suite::Negative2d, Suite::NdScaling, Suite::SkewedPair];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Convex2dScaling => "convex-2d-scaling",
            Suite::Negative2d => "negative-2d",
            Suite::NdScaling => "nd-scaling",
            Suite::SkewedPair => "skewed-pair",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Generation(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    /// The dilated tester refused the instance because of the volume cap.
    Capped,
}

/// One CSV row. Fields a tester does not produce are left empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub suite: Suite,
    pub n: u64,
    pub h: Option<u64>,
    /// L-infinity diameter of the input.
    pub r: u64,
    pub steps: Option<u64>,
    pub total_candidate_scans: Option<u64>,
    pub lp_calls: Option<u64>,
    pub s_prime_size: Option<u64>,
    pub wall_ns: u64,
    pub status: RowStatus,
    pub convex: Option<bool>,
}

/// Disk radius squared giving about `n` lattice points.
fn disk_radius_squared(n: u64) -> u64 {
    ((n as f64) / std::f64::consts::PI).round() as u64
}

/// Ball radius squared giving about `n` lattice points in 3D.
fn ball_radius_squared(n: u64) -> u64 {
    let r = (3.0 * n as f64 / (4.0 * std::f64::consts::PI)).cbrt();
    (r * r).round() as u64
}

fn random_center(d: usize, seed: u64) -> Vec<i64> {
    let mut rng = SplitMix64::new(seed);
    (0..d).map(|_| rng.range_inclusive(-1000, 1000)).collect()
}

/// Planar instances are timed this many times; the row keeps the fastest.
pub const PLANAR_TIMING_REPS: usize = 3;

fn planar_row(suite: Suite, set: &PointSet) -> Result<BenchRow> {
    let mut wall_ns = u64::MAX;
    let mut report = None;
    for _ in 0..PLANAR_TIMING_REPS {
        let start = Instant::now();
        let r = is_digital_convex_2d(set)?;
        wall_ns = wall_ns.min(start.elapsed().as_nanos() as u64);
        report = Some(r);
    }
    let report = report.expect("at least one repetition");
    Ok(BenchRow {
        suite,
        n: report.n,
        h: report.h,
        r: diameter_linf(set)?,
        steps: report.steps,
        total_candidate_scans: Some(report.work),
        lp_calls: None,
        s_prime_size: None,
        wall_ns,
        status: RowStatus::Ok,
        convex: Some(report.is_convex()),
    })
}

fn nd_row(suite: Suite, set: &PointSet, options: &NdOptions) -> Result<BenchRow> {
    let start = Instant::now();
    let outcome = is_digital_convex_nd_with(set, NdVariant::EarlyExit, options);
    let wall_ns = start.elapsed().as_nanos() as u64;
    let mut row = BenchRow {
        suite,
        n: set.len() as u64,
        h: None,
        r: diameter_linf(set)?,
        steps: None,
        total_candidate_scans: None,
        lp_calls: None,
        s_prime_size: None,
        wall_ns,
        status: RowStatus::Ok,
        convex: None,
    };
    match outcome {
        Ok(ConvexityReport { traversal, verdict, .. }) => {
            let stats = traversal.unwrap_or_default();
            row.lp_calls = Some(stats.lp_calls);
            row.s_prime_size = Some(stats.s_prime_size);
            row.convex = Some(verdict == crate::report::Verdict::Convex);
        }
        Err(Error::VolumeCapExceeded { .. }) => row.status = RowStatus::Capped,
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// Runs one instance of `suite`.
pub fn run_instance(suite: Suite, size: u64, seed: u64, options: &NdOptions) -> Result<BenchRow> {
    match suite {
        Suite::Convex2dScaling => {
            let set = gen_ball(2, disk_radius_squared(size), &random_center(2, seed))?;
            planar_row(suite, &set)
        }
        Suite::Negative2d => {
            let disk = gen_ball(2, disk_radius_squared(size).max(1), &random_center(2, seed))?;
            planar_row(suite, &gen_punctured(&disk, seed)?)
        }
        Suite::NdScaling => {
            let set = gen_ball(3, ball_radius_squared(size), &random_center(3, seed))?;
            nd_row(suite, &set, options)
        }
        Suite::SkewedPair => {
            let k = i64::try_from(size).map_err(|_| Error::Generation(format!("k = {size} too large")))?;
            nd_row(suite, &gen_skewed_pair(k)?, options)
        }
    }
}

/// Runs every (size, seed) combination in order.
pub fn run_suite(suite: Suite, sizes: &[u64], seeds: &[u64], options: &NdOptions) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len() * seeds.len());
    for &size in sizes {
        for &seed in seeds {
            rows.push(run_instance(suite, size, seed, options)?);
        }
    }
    Ok(rows)
}

/// Coefficient of determination of the least-squares line through the points.
/// Returns `None` with fewer than two points or constant `xs`.
pub fn linear_fit_r2(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let m = xs.len().min(ys.len());
    if m < 2 {
        return None;
    }
    let mean = |v: &[f64]| v[..m].iter().sum::<f64>() / m as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let sxx: f64 = xs[..m].iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs[..m].iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys[..m].iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    if syy == 0.0 {
        return Some(1.0);
    }
    Some(sxy * sxy / (sxx * syy))
}
