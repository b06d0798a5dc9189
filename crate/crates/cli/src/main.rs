use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use digiconvex::bench::{self, Suite};
use digiconvex::convexity2d::is_digital_convex_2d;
use digiconvex::convexity_nd::{is_digital_convex_nd_with, NdOptions, NdVariant, VOLUME_CAP_ENV};
use digiconvex::generators::{gen_ball, gen_punctured, gen_random_polytope_points, gen_skewed_pair};
use digiconvex::io::{read_point_set, write_point_set};
use digiconvex::oracle::brute_lattice_points_with_cap;
use digiconvex::pick::lattice_count;
use digiconvex::quickhull::{quickhull_traced, QuickhullOutcome};
use digiconvex::{ConvexityReport, Error, HullKind, PointSet};

const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "digiconvex", version, about = "Digital convexity testing for lattice point sets")]
#[command(after_help = format!(
    "Exit codes: 0 convex (or success), 1 not convex, 2 input or resource error.\n\
     The lattice volume cap for the n-dimensional tester is read from {VOLUME_CAP_ENV}."
))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the point set in FILE is digital convex.
    Check {
        file: PathBuf,
        /// Read rows with this dimension instead of the header's.
        #[arg(long)]
        dim_override: Option<usize>,
        #[arg(long, value_enum, default_value_t = Variant::Auto)]
        variant: Variant,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the convex hull of a planar point set and its quickhull trace.
    Hull { file: PathBuf },
    /// Print the number of lattice points in the convex hull.
    Count { file: PathBuf },
    /// Write a generated point set.
    Gen(GenArgs),
    /// Run a benchmark suite and write CSV rows.
    Bench {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Comma-separated instance sizes (k values for skewed-pair).
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        /// Comma-separated seeds.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// `2d` for planar input, `nd-early` otherwise.
    Auto,
    #[value(name = "2d")]
    Planar,
    NdCount,
    NdEarly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Ball,
    Polytope,
    Punctured,
    SkewedPair,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Squared radius (ball, and the base ball of punctured).
    #[arg(long, default_value_t = 4)]
    radius_squared: u64,
    /// Comma-separated center; the origin when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<i64>>,
    /// Number of random generators (polytope).
    #[arg(long, default_value_t = 8)]
    generators: usize,
    /// Generators are drawn from [-w, w]^d (polytope).
    #[arg(long, default_value_t = 10)]
    half_width: i64,
    /// Base set to puncture instead of a ball (punctured).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    k: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(io::Error),
    Csv(csv::Error),
    Usage(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o: {e}"),
            Failure::Csv(e) => write!(f, "csv: {e}"),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Csv(e)
    }
}

type Outcome = Result<u8, Failure>;

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check(file: &Path, dim_override: Option<usize>, variant: Variant, json: bool) -> Outcome {
    let set = read_point_set(file, dim_override)?;
    let planar = match variant {
        Variant::Auto => set.dim() == 2,
        Variant::Planar => true,
        _ => false,
    };
    let report: ConvexityReport = if planar {
        is_digital_convex_2d(&set)?
    } else {
        let nd = if variant == Variant::NdCount { NdVariant::Count } else { NdVariant::EarlyExit };
        is_digital_convex_nd_with(&set, nd, &NdOptions::from_env())?
    };
    if json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
        println!("{text}");
    } else {
        print!("{report}");
    }
    Ok(if report.is_convex() { 0 } else { 1 })
}

fn hull(file: &Path) -> Outcome {
    let set = read_point_set(file, None)?;
    let QuickhullOutcome::Complete { hull, trace } = quickhull_traced(&set, false)? else {
        return Err(Failure::Usage("quickhull stopped early without the early-stop rule".into()));
    };
    let mut out = output(None)?;
    writeln!(out, "vertices:")?;
    for v in hull.vertices() {
        writeln!(out, "  {v}")?;
    }
    writeln!(out, "h: {}", hull.edge_count())?;
    match hull.kind() {
        HullKind::Empty => writeln!(out, "note: empty input")?,
        HullKind::Point => writeln!(out, "note: degenerate hull (single point)")?,
        HullKind::Segment => writeln!(out, "note: degenerate hull (collinear input, endpoints shown)")?,
        HullKind::Full => {}
    }
    writeln!(out, "steps: {}", trace.steps.len())?;
    writeln!(out, "total_candidate_scans: {}", trace.total_candidate_scans())?;
    for (i, s) in trace.steps.iter().enumerate() {
        let ratio = if s.remaining_before == 0 { 0.0 } else { s.discarded as f64 / s.remaining_before as f64 };
        writeln!(
            out,
            "step {}: remaining_before={} discarded={} promoted={} remaining_after={} discard_ratio={ratio:.3}",
            i + 1,
            s.remaining_before,
            s.discarded,
            s.promoted,
            s.remaining_after
        )?;
    }
    out.flush()?;
    Ok(0)
}

fn count(file: &Path) -> Outcome {
    let set = read_point_set(file, None)?;
    let total = if set.dim() == 2 {
        match quickhull_traced(&set, false)?.hull() {
            Some(h) => lattice_count(h)?,
            None => return Err(Failure::Usage("quickhull did not complete".into())),
        }
    } else {
        brute_lattice_points_with_cap(&set, NdOptions::from_env().volume_cap)?.len() as u128
    };
    println!("{total}");
    Ok(0)
}

fn gen(args: &GenArgs) -> Outcome {
    let center = args.center.clone().unwrap_or_else(|| vec![0; args.dim]);
    let set: PointSet = match args.kind {
        GenKind::Ball => gen_ball(args.dim, args.radius_squared, &center)?,
        GenKind::Polytope => gen_random_polytope_points(args.dim, args.generators, args.half_width, args.seed)?,
        GenKind::Punctured => {
            let base = match &args.input {
                Some(path) => read_point_set(path, None)?,
                None => gen_ball(args.dim, args.radius_squared, &center)?,
            };
            gen_punctured(&base, args.seed)?
        }
        GenKind::SkewedPair => gen_skewed_pair(args.k)?,
    };
    let mut out = output(args.out.as_deref())?;
    write_point_set(&set, &mut out)?;
    out.flush()?;
    Ok(0)
}

fn run_bench(suite: Suite, sizes: &[u64], seeds: &[u64], out: Option<&Path>) -> Outcome {
    let rows = bench::run_suite(suite, sizes, seeds, &NdOptions::from_env())?;
    let mut writer = csv::Writer::from_writer(output(out)?);
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file, dim_override, variant, json } => check(file, *dim_override, *variant, *json),
        Command::Hull { file } => hull(file),
        Command::Count { file } => count(file),
        Command::Gen(args) => gen(args),
        Command::Bench { suite, sizes, seeds, out } => run_bench(*suite, sizes, seeds, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
