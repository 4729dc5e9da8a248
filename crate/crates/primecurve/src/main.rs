//! `primecurve` — command-line surface over the prime-arithmetic, Fourier
//! series, circulant polygon, and box-counting crates.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain/estimation/io error,
//! 3 cross-check mismatch (`bsum --method both`).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use prime_arith::{
    asymptotic_table, build_sieve_with_budget, sopfr, summatory_decomposed, summatory_direct,
    ArithError, SieveTable, DEFAULT_MEMORY_BUDGET,
};
use prime_series::{build_spectrum, norm_check, sample_curve, SeriesError};

const MEMORY_BUDGET_VAR: &str = "PRIMECURVE_MEMORY_BUDGET";
const BOXDIM_NOTE: &str =
    "experimental box-counting estimate; not a Hausdorff or Minkowski dimension claim";

#[derive(Parser)]
#[command(
    name = "primecurve",
    version,
    about = "Sum-of-prime-factors statistics, prime-frequency curves, circulant polygons, \
             and box-counting estimates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Worker threads for sieve sweeps and curve sampling.
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..=4096))]
    threads: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Sieve table bound (default: auto-sized from the arguments).
    #[arg(long, global = true, value_parser = parse_count)]
    limit: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sum of prime factors with multiplicity, for one n or a range.
    Sopfr(SopfrArgs),
    /// Summatory value B(x) = Σ_{n≤x} sopfr(n), by one or both exact routes.
    Bsum(BsumArgs),
    /// Normalized ratio 12·B(x)·ln(x)/(π²x²) along a ladder of x values.
    Asymptotic(AsymptoticArgs),
    /// Sample the prime-frequency series F_n on a uniform grid.
    Curve(CurveArgs),
    /// Quadrature check of the squared-norm identity for F_n.
    Normcheck(NormcheckArgs),
    /// Polygon with vertices F_n(2πj/N), the prime spectrum folded mod N.
    Polygon(PolygonArgs),
    /// Discrete Fourier mode k of dimension N as a unit polygon.
    Eigenpolygon(EigenpolygonArgs),
    /// Box-counting ladder and log-log slope for a sampled curve.
    Boxdim(BoxdimArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["n", "range"]))]
struct SopfrArgs {
    /// Single integer to evaluate.
    #[arg(value_parser = parse_count)]
    n: Option<u64>,
    /// Inclusive range A..B of integers to evaluate.
    #[arg(long, value_parser = parse_range, value_name = "A..B")]
    range: Option<(u64, u64)>,
}

#[derive(Args)]
struct BsumArgs {
    #[arg(value_parser = parse_count)]
    x: u64,
    /// Computation route; `both` cross-checks them and exits 3 on mismatch.
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
}

#[derive(Args)]
struct AsymptoticArgs {
    /// One or more x values (scientific notation like 1e6 is accepted).
    #[arg(required = true, value_parser = parse_count)]
    xs: Vec<u64>,
}

#[derive(Args)]
struct CurveArgs {
    /// Series index n: frequencies are the primes ≤ n.
    #[arg(value_parser = parse_count)]
    n: u64,
    /// Number of uniform grid samples on [0, 2π).
    #[arg(long, default_value_t = 4096, value_parser = parse_count)]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct NormcheckArgs {
    #[arg(value_parser = parse_count)]
    n: u64,
    /// Grid samples; default max(4096, 2·maxprime+2) keeps the rule exact.
    #[arg(long, value_parser = parse_count)]
    samples: Option<u64>,
}

#[derive(Args)]
struct PolygonArgs {
    #[arg(value_parser = parse_count)]
    n: u64,
    /// Vertex count N; frequencies are reduced mod N.
    #[arg(value_parser = parse_count)]
    vertices: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct EigenpolygonArgs {
    /// Polygon dimension N.
    #[arg(value_parser = parse_count)]
    dim: u64,
    /// Fourier mode index k, 0 ≤ k < N.
    #[arg(value_parser = parse_count)]
    mode: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source")
    .required(true)
    .args(["n", "input", "fixture"]))]
struct BoxdimArgs {
    /// Sample F_n and measure the resulting curve.
    #[arg(long, value_parser = parse_count)]
    n: Option<u64>,
    /// Read a curve from a CSV file with header t,re,im.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Measure a calibration fixture of known slope.
    #[arg(long, value_enum)]
    fixture: Option<FixtureArg>,
    /// Grid samples when the source is --n.
    #[arg(long, default_value_t = 4096, value_parser = parse_count)]
    samples: u64,
    /// Point budget for --fixture (segment: count; square: side = ⌊√P⌋).
    #[arg(long, default_value_t = 10_000, value_parser = parse_count)]
    fixture_points: u64,
    /// Dyadic ladder depth K.
    #[arg(long, default_value_t = 8, value_parser = parse_count)]
    depth: u64,
    /// Coarsest cell size ε₀ (default: largest bounding-box side / 4).
    #[arg(long)]
    epsilon0: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Decomposed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureArg {
    Segment,
    Square,
}

/// Integer argument, scientific notation allowed: "250", "1e6", "2.5e3".
fn parse_count(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("`{s}` is not a non-negative integer"));
    }
    if v.fract() != 0.0 {
        return Err(format!("`{s}` is not an integer"));
    }
    if v > 9.007_199_254_740_992e15 {
        return Err(format!("`{s}` is too large to represent exactly"));
    }
    Ok(v as u64)
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("`{s}` is not a range of the form A..B"))?;
    let lo = parse_count(a)?;
    let hi = parse_count(b)?;
    if lo > hi {
        return Err(format!("range `{s}` is reversed"));
    }
    Ok((lo, hi))
}

enum CliError {
    Domain(String),
    CrossCheck(String),
}

macro_rules! from_domain {
    ($t:ty) => {
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    };
}
from_domain!(ArithError);
from_domain!(SeriesError);
from_domain!(circulant_polygon::PolygonError);
from_domain!(boxcount::BoxError);
from_domain!(std::io::Error);

struct Ctx {
    out: Option<PathBuf>,
    limit: Option<u64>,
}

impl Ctx {
    /// Sieve sized by --limit, or auto-sized to max(need, 2) + headroom of 1.
    fn sieve(&self, need: u64) -> Result<SieveTable, CliError> {
        let limit = self.limit.unwrap_or_else(|| need.max(1).saturating_add(1));
        let budget = match std::env::var(MEMORY_BUDGET_VAR) {
            Ok(v) => v.trim().parse::<u64>().map_err(|_| {
                CliError::Domain(format!("{MEMORY_BUDGET_VAR} must be a byte count, got `{v}`"))
            })?,
            Err(_) => DEFAULT_MEMORY_BUDGET,
        };
        Ok(build_sieve_with_budget(limit, budget)?)
    }

    fn emit(&self, content: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, content)?,
            None => print!("{content}"),
        }
        Ok(())
    }
}

/// 17 significant digits: enough to round-trip any f64 exactly.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // Single global pool; sweep chunking is fixed, so results are
    // bit-identical for any thread count.
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build_global()
        .expect("rayon pool is built once, before any parallel work");
    let ctx = Ctx {
        out: cli.out,
        limit: cli.limit,
    };
    let result = match cli.cmd {
        Cmd::Sopfr(a) => cmd_sopfr(&ctx, &a),
        Cmd::Bsum(a) => cmd_bsum(&ctx, &a),
        Cmd::Asymptotic(a) => cmd_asymptotic(&ctx, &a),
        Cmd::Curve(a) => cmd_curve(&ctx, &a),
        Cmd::Normcheck(a) => cmd_normcheck(&ctx, &a),
        Cmd::Polygon(a) => cmd_polygon(&ctx, &a),
        Cmd::Eigenpolygon(a) => cmd_eigenpolygon(&ctx, &a),
        Cmd::Boxdim(a) => cmd_boxdim(&ctx, &a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::CrossCheck(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn cmd_sopfr(ctx: &Ctx, args: &SopfrArgs) -> Result<(), CliError> {
    let (lo, hi) = match (args.n, args.range) {
        (Some(n), None) => (n, n),
        (None, Some(r)) => r,
        _ => unreachable!("clap group guarantees exactly one source"),
    };
    let table = ctx.sieve(hi)?;
    let mut out = String::new();
    for n in lo..=hi {
        let _ = writeln!(out, "{},{}", n, sopfr(n, &table)?);
    }
    ctx.emit(&out)
}

fn cmd_bsum(ctx: &Ctx, args: &BsumArgs) -> Result<(), CliError> {
    let table = ctx.sieve(args.x)?;
    let mut out = String::from("x,B,method\n");
    let mut row = |r: &prime_arith::SummatoryResult| {
        let _ = writeln!(out, "{},{},{}", r.x, r.value, r.method);
    };
    match args.method {
        MethodArg::Direct => row(&summatory_direct(args.x, &table)?),
        MethodArg::Decomposed => row(&summatory_decomposed(args.x, &table)?),
        MethodArg::Both => {
            let d = summatory_direct(args.x, &table)?;
            let e = summatory_decomposed(args.x, &table)?;
            row(&d);
            row(&e);
            if d.value != e.value {
                ctx.emit(&out)?;
                return Err(CliError::CrossCheck(format!(
                    "B({}) mismatch: direct {} vs decomposed {}",
                    args.x, d.value, e.value
                )));
            }
        }
    }
    ctx.emit(&out)
}

fn cmd_asymptotic(ctx: &Ctx, args: &AsymptoticArgs) -> Result<(), CliError> {
    let need = args.xs.iter().copied().max().unwrap_or(0);
    let table = ctx.sieve(need)?;
    let rows = asymptotic_table(&args.xs, &table)?;
    let mut out = String::from("x,B,ratio\n");
    for r in &rows {
        let _ = writeln!(out, "{},{},{}", r.x, r.b_value, fmt17(r.ratio));
    }
    ctx.emit(&out)
}

fn cmd_curve(ctx: &Ctx, args: &CurveArgs) -> Result<(), CliError> {
    let table = ctx.sieve(args.n)?;
    let spectrum = build_spectrum(args.n, &table)?;
    let curve = sample_curve(&spectrum, args.samples as usize)?;
    let out = match args.format {
        Format::Csv => {
            let mut out = String::from("t,re,im\n");
            for (t, z) in curve.ts.iter().zip(&curve.points) {
                let _ = writeln!(out, "{},{},{}", fmt17(*t), fmt17(z.re), fmt17(z.im));
            }
            out
        }
        Format::Json => {
            let points: Vec<_> = curve
                .ts
                .iter()
                .zip(&curve.points)
                .map(|(t, z)| serde_json::json!({"t": t, "re": z.re, "im": z.im}))
                .collect();
            let doc = serde_json::json!({
                "n": curve.n,
                "samples": curve.samples(),
                "points": points,
            });
            format!("{doc:#}\n")
        }
        Format::Svg => svg_path(&curve.points, false),
    };
    ctx.emit(&out)
}

fn cmd_normcheck(ctx: &Ctx, args: &NormcheckArgs) -> Result<(), CliError> {
    let table = ctx.sieve(args.n)?;
    let spectrum = build_spectrum(args.n, &table)?;
    let samples = args.samples.unwrap_or_else(|| {
        // Smallest grid that makes the quadrature exact, floored at the
        // default sample count.
        4096.max(2 * spectrum.max_prime().unwrap_or(0) + 2)
    });
    let report = norm_check(&spectrum, samples as usize)?;
    let doc = serde_json::json!({
        "n": report.n,
        "samples": report.samples,
        "analytic": report.analytic,
        "quadrature": report.quadrature,
        "abs_error": report.abs_error,
    });
    ctx.emit(&format!("{doc:#}\n"))
}

fn polygon_output(vertices: &[Complex64], format: Format, head: serde_json::Value) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("j,re,im\n");
            for (j, z) in vertices.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", j, fmt17(z.re), fmt17(z.im));
            }
            out
        }
        Format::Json => {
            let points: Vec<_> = vertices
                .iter()
                .enumerate()
                .map(|(j, z)| serde_json::json!({"j": j, "re": z.re, "im": z.im}))
                .collect();
            let mut doc = head;
            doc["points"] = serde_json::Value::Array(points);
            format!("{doc:#}\n")
        }
        Format::Svg => svg_path(vertices, true),
    }
}

fn cmd_polygon(ctx: &Ctx, args: &PolygonArgs) -> Result<(), CliError> {
    let table = ctx.sieve(args.n)?;
    let poly = circulant_polygon::prime_polygon(args.n, args.vertices as usize, &table)?;
    let head = serde_json::json!({"n": args.n, "vertices": poly.vertex_count()});
    ctx.emit(&polygon_output(poly.vertices(), args.format, head))
}

fn cmd_eigenpolygon(ctx: &Ctx, args: &EigenpolygonArgs) -> Result<(), CliError> {
    let poly = circulant_polygon::eigenpolygon(args.dim as usize, args.mode as usize)?;
    let head = serde_json::json!({"dim": args.dim, "mode": args.mode});
    ctx.emit(&polygon_output(poly.vertices(), args.format, head))
}

fn cmd_boxdim(ctx: &Ctx, args: &BoxdimArgs) -> Result<(), CliError> {
    let (points, source) = match (args.n, &args.input, args.fixture) {
        (Some(n), None, None) => {
            let table = ctx.sieve(n)?;
            let spectrum = build_spectrum(n, &table)?;
            let curve = sample_curve(&spectrum, args.samples as usize)?;
            (curve.points, format!("series n={n} samples={}", args.samples))
        }
        (None, Some(path), None) => {
            let points = read_curve_csv(path)?;
            (points, format!("file {}", path.display()))
        }
        (None, None, Some(FixtureArg::Segment)) => {
            let count = args.fixture_points as usize;
            (
                boxcount::segment_fixture(count),
                format!("fixture segment ({count} points)"),
            )
        }
        (None, None, Some(FixtureArg::Square)) => {
            let side = (args.fixture_points as f64).sqrt().floor() as usize;
            (
                boxcount::square_fixture(side),
                format!("fixture square ({side}x{side} points)"),
            )
        }
        _ => unreachable!("clap group guarantees exactly one source"),
    };
    let epsilon0 = args.epsilon0.unwrap_or_else(|| {
        let side = boxcount::bounding_box(&points)
            .map(|b| b.max_side())
            .unwrap_or(0.0);
        if side > 0.0 {
            side / 4.0
        } else {
            0.25
        }
    });
    let report = boxcount::box_dimension_fit(&points, epsilon0, args.depth as usize)?;
    let ladder: Vec<_> = report
        .ladder
        .iter()
        .map(|r| serde_json::json!({"epsilon": r.epsilon, "count": r.count}))
        .collect();
    let doc = serde_json::json!({
        "source": source,
        "epsilon0": epsilon0,
        "depth": args.depth,
        "report": {
            "ladder": ladder,
            "fit_range": report.fit_range,
            "slope": report.slope,
            "r_squared": report.r_squared,
            "samples": report.samples,
        },
        "note": BOXDIM_NOTE,
    });
    ctx.emit(&format!("{doc:#}\n"))
}

fn read_curve_csv(path: &std::path::Path) -> Result<Vec<Complex64>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some("t,re,im") => {}
        _ => {
            return Err(CliError::Domain(format!(
                "{}: expected a curve CSV starting with header `t,re,im`",
                path.display()
            )))
        }
    }
    let mut points = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &str| -> Result<f64, CliError> {
            fields
                .next()
                .and_then(|f| f.parse::<f64>().ok())
                .ok_or_else(|| {
                    CliError::Domain(format!(
                        "{} line {}: bad {name} field in `{line}`",
                        path.display(),
                        idx + 2
                    ))
                })
        };
        let _t = next("t")?;
        let re = next("re")?;
        let im = next("im")?;
        points.push(Complex64::new(re, im));
    }
    Ok(points)
}

/// Plot-only SVG: a single polyline (open) or closed path, viewBox fitted
/// to the bounding box with a 5% margin. The y axis is flipped so the
/// positive imaginary direction points up.
fn svg_path(points: &[Complex64], closed: bool) -> String {
    let flipped: Vec<(f64, f64)> = points.iter().map(|z| (z.re, -z.im)).collect();
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &flipped {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    if flipped.is_empty() {
        (min_x, max_x, min_y, max_y) = (0.0, 0.0, 0.0, 0.0);
    }
    let extent = (max_x - min_x).max(max_y - min_y);
    let base = if extent > 0.0 { extent } else { 1.0 };
    let margin = 0.05 * base;
    let vb = format!(
        "{:.6} {:.6} {:.6} {:.6}",
        min_x - margin,
        min_y - margin,
        (max_x - min_x) + 2.0 * margin,
        (max_y - min_y) + 2.0 * margin
    );
    let stroke = format!("{:.6}", base / 200.0);
    let coords: Vec<String> = flipped
        .iter()
        .map(|(x, y)| format!("{x:.6},{y:.6}"))
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{vb}\">"
    );
    if closed {
        let d = coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let cmd = if i == 0 { "M" } else { "L" };
                format!("{cmd} {}", c.replace(',', " "))
            })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "  <path d=\"{d} Z\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>"
        );
    } else {
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>",
            coords.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}
