//! The `pmn` command line: `gen`, `build`, `verify` and `compare`.
//!
//! Exit codes: 0 when everything passes, 1 when a verification check fails,
//! 2 for usage, IO and input errors.

pub mod formats;
pub mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::baseline::build_baseline;
use crate::builder::build_network;
use crate::error::Error;
use crate::generators::{
    build_square_network, build_staircase_network, gen_diagonal, gen_random_convex, gen_square_boundary,
};
use crate::geometry::{canonicalize, Point};
use crate::network::Network;
use crate::verify::{verify, Check, VerificationReport};

pub use formats::{graph_from_json, graph_to_json, parse_points, write_points, FormatError};
pub use render::{to_dot, to_svg};

/// Violations listed per failing Manhattan check.
const SHOWN_VIOLATIONS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Input(#[from] Error),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "pmn", version, about = "Planar Manhattan networks for convex point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a point set to a points file.
    Gen(GenArgs),
    /// Build a network from a points file and write it as graph JSON.
    Build(BuildArgs),
    /// Check a graph JSON file against a points file.
    Verify(VerifyArgs),
    /// Build with the planar and the divide-and-conquer algorithm side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Square,
    Diagonal,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Linear-size planar construction for points in convex position.
    Planar,
    /// Divide-and-conquer construction for arbitrary points.
    Baseline,
    /// Explicit network for the square-boundary family.
    Square,
    /// Corner staircase for points increasing in both coordinates.
    Staircase,
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Side length of the square family; defaults to n.
    #[arg(long)]
    scale: Option<i64>,
    #[arg(long, default_value_t = 1_000_000)]
    radius: i64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BuildArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Planar)]
    algo: Algo,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    points: PathBuf,
    /// Comma-separated subset of manhattan, planarity, size, spanner.
    #[arg(long, value_delimiter = ',', default_value = "manhattan,planarity,size,spanner", value_parser = parse_check)]
    checks: Vec<Check>,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct CompareArgs {
    #[arg(long)]
    input: PathBuf,
}

fn parse_check(s: &str) -> Result<Check, String> {
    Check::parse(s).ok_or_else(|| format!("unknown check {s:?}"))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Build(a) => cmd_build(&a),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "pmn: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source }
}

pub fn read_points(path: &Path) -> CliResult<Vec<Point>> {
    parse_points(&read(path)?).map_err(|source| CliError::Format { path: path.into(), source })
}

pub fn read_graph(path: &Path) -> CliResult<Network> {
    graph_from_json(&read(path)?).map_err(|source| CliError::Format { path: path.into(), source })
}

pub fn generate(family: Family, n: usize, seed: u64, scale: Option<i64>, radius: i64) -> Result<Vec<Point>, Error> {
    match family {
        Family::Square => gen_square_boundary(n, scale.unwrap_or(n as i64)),
        Family::Diagonal if n == 0 => Err(Error::BadParams("n must be positive".into())),
        Family::Diagonal => Ok(gen_diagonal(n)),
        Family::Random => gen_random_convex(n, seed, radius),
    }
}

/// Builds a network on `points` with the chosen algorithm.
pub fn build_with(algo: Algo, points: &[Point]) -> Result<Network, Error> {
    match algo {
        Algo::Planar => build_network(&canonicalize(points)?),
        Algo::Baseline => build_baseline(points),
        Algo::Square => {
            let (n, scale) = square_parameters(points)?;
            build_square_network(n, scale)
        }
        Algo::Staircase => build_staircase_network(points),
    }
}

/// Recovers `(n, scale)` from a square-boundary point set.
fn square_parameters(points: &[Point]) -> Result<(usize, i64), Error> {
    let bad = || Error::BadParams("points are not a square-boundary set".into());
    if points.is_empty() || !points.len().is_multiple_of(4) {
        return Err(bad());
    }
    let n = points.len() / 4 + 1;
    let scale = points.iter().map(|p| p.x.max(p.y)).max().ok_or_else(bad)?;
    let mut expected = gen_square_boundary(n, scale).map_err(|_| bad())?;
    let mut given = points.to_vec();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(bad());
    }
    Ok((n, scale))
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = generate(a.family, a.n, a.seed, a.scale, a.radius)?;
    let text = write_points(&points);
    match &a.out {
        Some(path) => write(path, &text),
        None => out.write_all(text.as_bytes()).map_err(stdout_err),
    }
}

fn cmd_build(a: &BuildArgs) -> CliResult<()> {
    let points = read_points(&a.input)?;
    let net = build_with(a.algo, &points)?;
    write(&a.out, &graph_to_json(&net))?;
    if let Some(path) = &a.svg {
        write(path, &to_svg(&net))?;
    }
    if let Some(path) = &a.dot {
        write(path, &to_dot(&net))?;
    }
    Ok(())
}

/// Human-readable report, one line per check plus counterexamples.
pub fn format_report(report: &VerificationReport) -> String {
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let mut s = String::new();
    if let Some(m) = &report.manhattan {
        s += &format!("manhattan  {}  {} pairs, {} violations\n", verdict(m.ok), m.pairs, m.violations.len());
        for v in m.violations.iter().take(SHOWN_VIOLATIONS) {
            let found = v.found.map_or("unreachable".to_string(), |d| d.to_string());
            s += &format!("  {} - {}: graph {found}, L1 {}\n", v.p, v.q, v.required);
        }
    }
    if let Some(p) = &report.planarity {
        let ok = p.planar && p.certified == Some(true);
        let detail = match (p.planar, p.certified, p.face_count) {
            (false, _, _) => "nonplanar".to_string(),
            (true, Some(true), Some(f)) => format!("planar, {f} faces, Euler certificate holds"),
            _ => "planar, Euler certificate fails".to_string(),
        };
        s += &format!("planarity  {}  {detail}\n", verdict(ok));
    }
    if let Some(z) = &report.size {
        s += &format!(
            "size       {}  |V| = {} (bound {}), |E| = {} (bound {})\n",
            verdict(z.ok),
            z.vertices,
            4 * z.n,
            z.edges,
            5 * z.n
        );
    }
    if let Some(t) = &report.spanner {
        let detail = t.max_stretch_sq.as_deref().unwrap_or("disconnected");
        s += &format!("spanner    {}  max squared L2 stretch {detail} (bound 2)\n", verdict(t.ok));
    }
    s
}

fn failed_checks(report: &VerificationReport) -> Vec<&'static str> {
    let mut failed = Vec::new();
    if report.manhattan.as_ref().is_some_and(|m| !m.ok) {
        failed.push("manhattan");
    }
    if report.planarity.as_ref().is_some_and(|p| !(p.planar && p.certified == Some(true))) {
        failed.push("planarity");
    }
    if report.size.as_ref().is_some_and(|z| !z.ok) {
        failed.push("size");
    }
    if report.spanner.as_ref().is_some_and(|t| !t.ok) {
        failed.push("spanner");
    }
    failed
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let net = read_graph(&a.graph)?;
    let points = read_points(&a.points)?;
    let report = verify(&net, &points, &a.checks)?;
    out.write_all(format_report(&report).as_bytes()).map_err(stdout_err)?;
    if let Some(path) = &a.json {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["passed"] = report.passed().into();
        write(path, &format!("{value}\n"))?;
    }
    let failed = failed_checks(&report);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join(", ")))
    }
}

fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> CliResult<()> {
    let points = read_points(&a.input)?;
    let mut table = format!(
        "{:<9} {:>7} {:>8} {:>8} {:>8} {:>10} {:>7} {:>9}\n",
        "algo", "n", "|V|", "|E|", "steiner", "build_ms", "planar", "manhattan"
    );
    for algo in [Algo::Planar, Algo::Baseline] {
        let start = Instant::now();
        let net = build_with(algo, &points)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let report = verify(&net, &points, &[Check::Manhattan, Check::Planarity])?;
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let planar = report.planarity.as_ref().is_some_and(|p| p.planar);
        let manhattan = report.manhattan.as_ref().is_some_and(|m| m.ok);
        let name = if algo == Algo::Planar { "planar" } else { "baseline" };
        table += &format!(
            "{name:<9} {:>7} {:>8} {:>8} {:>8} {ms:>10.2} {:>7} {:>9}\n",
            points.len(),
            net.vertex_count(),
            net.edge_count(),
            net.steiner_count(),
            yes_no(planar),
            yes_no(manhattan)
        );
    }
    out.write_all(table.as_bytes()).map_err(stdout_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_parameters_round_trip() {
        let p = gen_square_boundary(4, 8).unwrap();
        assert_eq!(square_parameters(&p).unwrap(), (4, 8));
        assert!(square_parameters(&p[..4]).is_err());
        assert!(square_parameters(&[]).is_err());
    }

    #[test]
    fn check_list_parses() {
        assert_eq!(parse_check("size"), Ok(Check::Size));
        assert!(parse_check("speed").is_err());
    }
}
