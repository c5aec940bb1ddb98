mod commands;
mod session;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use surfclust::bases::{BasisBound, Variant};

use session::{sha256_hex, CliError, RunManifest, Session};
use suites::Suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Bangles (parallel copies of loops).
    Bcirc,
    /// Bracelets.
    B,
}

#[derive(Debug, Parser)]
#[command(name = "surfbasis", version, about = "Cluster algebra bases from triangulated surfaces")]
struct Cli {
    /// Surface description (JSON).
    #[arg(long, global = true)]
    surface: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240101)]
    seed: u64,
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Laurent expansion of an arc or closed loop.
    Expand {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 0)]
        kinks: u32,
        /// The curve is contractible (arc: 0, loop: -2).
        #[arg(long)]
        contractible: bool,
    },
    /// Mutate the principal-coefficient seed along a path of 1-based directions.
    Mutate {
        /// Comma-separated directions, e.g. `1,2,1`.
        #[arg(long, allow_hyphen_values = true)]
        path: Option<String>,
        /// Compare a cluster variable of the final seed with the expansion of this curve.
        #[arg(long)]
        check_against_curve: Option<PathBuf>,
        /// Cluster slot (1-based) to compare; defaults to the last direction.
        #[arg(long)]
        slot: Option<usize>,
    },
    /// Matching lattice of a curve's snake or band graph.
    Lattice {
        #[arg(long)]
        curve: PathBuf,
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Maximal crossing number of catalog arcs.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Maximal number of arcs in a basis collection.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Flip depth for Ptolemy checks on nearby triangulations.
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        max_tiles: usize,
        /// Number of random mutation paths.
        #[arg(long, default_value_t = 100)]
        paths: usize,
        /// Maximal random path length.
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// A closed loop to test instead of the surface's core loop.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Arcs and loops of a family surface up to a crossing bound.
    Catalog {
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Basis elements of a family surface within a bound.
    Bases {
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::B)]
        variant: VariantArg,
    },
}

pub struct Output {
    pub stdout: String,
    pub passed: bool,
    pub summary: serde_json::Value,
}

impl Output {
    pub fn pass(stdout: String, summary: serde_json::Value) -> Output {
        Output { stdout, passed: true, summary }
    }
}

fn dispatch(cli: &Cli, s: &Session) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Expand { curve, kinks, contractible } => commands::expand(s, format, curve, *kinks, *contractible),
        Command::Mutate { path, check_against_curve, slot } => {
            commands::mutate(s, format, path.as_deref(), check_against_curve.as_deref(), *slot)
        }
        Command::Lattice { curve, dot } => commands::lattice(s, if *dot { Format::Dot } else { format }, curve),
        Command::Verify { suite, k, bound, degree, depth, max_tiles, paths, length, curve } => {
            if format == Format::Dot {
                return Err(CliError::Usage("verify has no DOT output".into()));
            }
            let o = suites::Options {
                k: *k,
                bound: *bound,
                degree: *degree,
                depth: *depth,
                max_tiles: *max_tiles,
                paths: *paths,
                length: *length,
                curve: curve.clone(),
            };
            let report = suites::run(s, *suite, &o)?;
            let stdout = match format {
                Format::Text => {
                    let mut out: String = report
                        .checks
                        .iter()
                        .map(|c| format!("{} {} {}\n", c.status.to_uppercase(), c.check, c.instance))
                        .collect();
                    out.push_str(&format!(
                        "{}: {} of {} checks pass\n",
                        report.status,
                        report.total - report.failed,
                        report.total
                    ));
                    out
                }
                _ => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
            };
            let summary = json!({ "suite": report.suite, "total": report.total, "failed": report.failed });
            Ok(Output { stdout, passed: report.failed == 0, summary })
        }
        Command::Catalog { bound } => commands::catalog(s, format, *bound),
        Command::Bases { bound, degree, k, variant } => {
            let v = match variant {
                VariantArg::Bcirc => Variant::BCirc,
                VariantArg::B => Variant::B,
            };
            commands::bases(s, format, BasisBound { degree: *degree, word_len: *bound, k: *k }, v)
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::Usage(e.render().to_string().trim().to_string()));
        }
    };
    let session = Session::new(cli.surface.clone(), cli.jobs, cli.seed);
    let out = match dispatch(&cli, &session) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    print!("{}", out.stdout);
    let code: u8 = if out.passed { 0 } else { 1 };
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command: std::env::args().skip(1).collect(),
            inputs: session.inputs(),
            library_version: surfclust::VERSION.to_string(),
            seed: cli.seed,
            jobs: cli.jobs,
            output_sha256: sha256_hex(out.stdout.as_bytes()),
            exit_code: code as i32,
            summary: out.summary,
            elapsed_ms: start.elapsed().as_millis(),
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            return fail(&CliError::Io { path: path.display().to_string(), message: e.to_string() });
        }
    }
    ExitCode::from(code)
}
