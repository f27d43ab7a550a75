use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latnorm_cli::commands::{self, parse_point, SeriesKind};
use latnorm_cli::verify::{report, verify_corpus, verify_curve};
use latnorm_cli::{load_curve, ReportDocument, VerifyOptions};

#[derive(Parser)]
#[command(name = "latnorm", version, about = "Exact invariants of plane curve singularities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Poincare,
    Motivic,
    Alexander,
}

#[derive(Subcommand)]
enum Command {
    /// Table of h over a box (default: conductor + 2).
    Hilbert {
        curve: PathBuf,
        #[arg(long = "box", value_parser = point_arg)]
        corner: Option<Point>,
    },
    /// h at a single point.
    Value {
        curve: PathBuf,
        #[arg(long, value_parser = point_arg)]
        at: Point,
    },
    /// Semigroup membership grid and conductor.
    Semigroup {
        curve: PathBuf,
        #[arg(long = "box", value_parser = point_arg)]
        corner: Option<Point>,
    },
    /// Poincaré, normalized motivic or Alexander polynomial.
    Series {
        #[arg(value_enum)]
        which: SeriesArg,
        curve: PathBuf,
        #[arg(long = "box", value_parser = point_arg)]
        corner: Option<Point>,
    },
    /// Lattice homology at a point or over a box.
    Homology {
        curve: PathBuf,
        #[arg(long, value_parser = point_arg, conflicts_with = "corner")]
        at: Option<Point>,
        #[arg(long = "box", value_parser = point_arg)]
        corner: Option<Point>,
    },
    /// δ, Milnor numbers, conductor and intersection numbers.
    Invariants { curve: PathBuf },
    /// Run the identity suite on a curve file, or on the bundled corpus.
    Verify {
        curve: Option<PathBuf>,
        /// Larger boxes and doubled U-truncations.
        #[arg(long)]
        deep: bool,
    },
}

/// A comma-separated lattice point such as `2,3`.
#[derive(Clone, Debug)]
struct Point(Vec<i64>);

fn point_arg(s: &str) -> Result<Point, String> {
    parse_point(s).map(Point)
}

fn coords(p: &Option<Point>) -> Option<&[i64]> {
    p.as_ref().map(|p| p.0.as_slice())
}

enum Failure {
    Load(latnorm_cli::LoadError),
    Compute(latnorm::Error),
}

fn run(cmd: Command) -> Result<(ReportDocument, bool), Failure> {
    let load = |p: &PathBuf| load_curve(p).map_err(Failure::Load);
    let doc = match cmd {
        Command::Hilbert { curve, corner } => commands::hilbert(&load(&curve)?, coords(&corner)),
        Command::Value { curve, at } => commands::value(&load(&curve)?, &at.0),
        Command::Semigroup { curve, corner } => commands::semigroup(&load(&curve)?, coords(&corner)),
        Command::Series { which, curve, corner } => {
            let kind = match which {
                SeriesArg::Poincare => SeriesKind::Poincare,
                SeriesArg::Motivic => SeriesKind::Motivic,
                SeriesArg::Alexander => SeriesKind::Alexander,
            };
            commands::series(&load(&curve)?, kind, coords(&corner))
        }
        Command::Homology { curve, at, corner } => {
            let c = load(&curve)?;
            match at {
                Some(v) => commands::homology_at(&c, &v.0),
                None => commands::homology_box(&c, coords(&corner)),
            }
        }
        Command::Invariants { curve } => commands::invariants_report(&load(&curve)?),
        Command::Verify { curve, deep } => {
            let opts = VerifyOptions { deep };
            let doc = match curve {
                Some(p) => {
                    let c = load(&p)?;
                    let name = p.file_stem().map_or_else(|| "curve".to_string(), |s| s.to_string_lossy().into_owned());
                    report(verify_curve(&name, &c, opts), opts)
                }
                None => verify_corpus(opts),
            };
            let clean = matches!(doc.body, latnorm_cli::Body::Verify { failed: 0, .. });
            return Ok((doc, clean));
        }
    };
    doc.map(|d| (d, true)).map_err(Failure::Compute)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((doc, clean)) => {
            match cli.format {
                Format::Json => println!("{}", doc.to_json()),
                Format::Table => print!("{}", doc.to_table()),
            }
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Load(e)) => {
            eprintln!("error: {}: {}", e.name(), e);
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {}: {}", e.name(), e);
            ExitCode::from(1)
        }
    }
}
