use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use octcolor::adversary::{sample_algorithm, OutcomeKind, SampleAlgorithm};
use octcolor::io::{self, ColoringFile};
use octcolor::reductions::{family_points, DualFamily};
use octcolor::{
    build_octant_cover, color_point_set, colorfulness_report, compute_layers, gen, run_duel,
    validate_cover, BaseColorerConfig, BaseStrategy, GenKind, PointSet, StrategyOptions,
};

/// Colorings of point sets with respect to octants, and related tools.
#[derive(Parser, Debug)]
#[command(name = "octcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded instance as a points file.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color a point set so that large octants see every color.
    Color {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 12)]
        target_c: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Local)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        /// Record the exact threshold in the header.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the minimal colorful threshold of a coloring.
    Verify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Succeed iff the threshold is at most this; defaults to the
        /// guarantee in the coloring header.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Build and validate the octant cover of an independent set.
    Cover {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dominance layers, one per line.
    Layers {
        #[arg(long)]
        points: PathBuf,
    },
    /// Map a planar family to its dual point set.
    Reduce {
        #[arg(long, value_enum)]
        from: FamilyArg,
        #[arg(long, value_enum, default_value_t = TargetArg::Points)]
        to: TargetArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the adversary against a sample semi-online algorithm.
    Duel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: SampleAlgorithm,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        full_playouts: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exact,
    Local,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Triangles,
    Rects,
    Intervals,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Points,
    Octants,
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse()
}

fn parse_algorithm(s: &str) -> Result<SampleAlgorithm, String> {
    s.parse()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_points(path: &Path) -> Result<PointSet> {
    io::parse_points(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind, n, seed, out } => {
            emit(
                out.as_deref(),
                &io::write_points(&gen::generate(kind, n, seed)),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color {
            points,
            k,
            target_c,
            strategy,
            seed,
            restarts,
            verify,
            out,
        } => {
            let set = read_points(&points)?;
            let cfg = BaseColorerConfig {
                strategy: match strategy {
                    StrategyArg::Exact => BaseStrategy::ExactSearch,
                    StrategyArg::Local => BaseStrategy::LocalSearch,
                },
                target_c,
                max_restarts: restarts,
                seed,
            };
            let result = color_point_set(&set, k, &cfg)?;
            let file = ColoringFile {
                k,
                guaranteed: result.guaranteed_threshold,
                verified: verify.then_some(result.verified_threshold),
                colors: result.coloring.colors().to_vec(),
            };
            emit(out.as_deref(), &file.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            points,
            coloring,
            expect,
        } => {
            let set = read_points(&points)?;
            let file = ColoringFile::parse(&read(&coloring)?)
                .with_context(|| format!("in {}", coloring.display()))?;
            if file.colors.len() != set.len() {
                anyhow::bail!(
                    "coloring has {} entries but the point set has {} points",
                    file.colors.len(),
                    set.len()
                );
            }
            let report = colorfulness_report(&set, &file.coloring()?);
            let mut text = report.to_lines().join("\n");
            text.push('\n');
            emit(None, &text)?;
            let bound = expect.map_or(file.guaranteed, |e| e as u64);
            Ok(exit_if(report.minimal_colorful_threshold as u64 <= bound))
        }
        Command::Cover {
            points,
            probes,
            out,
        } => {
            let set = read_points(&points)?;
            let cover = build_octant_cover(&set)?;
            let report = validate_cover(&cover, probes);
            emit(out.as_deref(), &io::write_octants(cover.octants()))?;
            eprintln!(
                "expected_size={} actual_size={} avoids_interiors={} covers={} passed={}",
                report.expected_size,
                report.actual_size,
                report.avoids_interiors(),
                report.covers(),
                report.passed()
            );
            Ok(exit_if(report.passed()))
        }
        Command::Layers { points } => {
            let set = read_points(&points)?;
            let mut text = String::new();
            for (i, layer) in compute_layers(&set).iter().enumerate() {
                let ids: Vec<String> = layer.iter().map(|p| p.to_string()).collect();
                text.push_str(&format!("{} {}\n", i + 1, ids.join(" ")));
            }
            emit(None, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            from,
            to,
            input,
            out,
        } => {
            let text = read(&input)?;
            let family = match from {
                FamilyArg::Triangles => DualFamily::Triangles(io::parse_triangles(&text)?),
                FamilyArg::Rects => DualFamily::Rects(io::parse_rects(&text)?),
                FamilyArg::Intervals => DualFamily::Intervals(io::parse_intervals(&text)?),
            };
            let body = match to {
                TargetArg::Points => io::write_points(&family_points(&family)?),
                TargetArg::Octants => io::write_octants(&family.octants()),
            };
            emit(out.as_deref(), &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Duel {
            k,
            d,
            algorithm,
            seed,
            full_playouts,
        } => {
            let mut alg = sample_algorithm(algorithm, seed);
            let outcome = run_duel(k, d, alg.as_mut(), StrategyOptions { full_playouts })?;
            let mut text = outcome.transcript.to_lines().join("\n");
            text.push('\n');
            emit(None, &text)?;
            Ok(exit_if(matches!(
                outcome.kind,
                OutcomeKind::ViolationFound(_)
            )))
        }
    }
}

fn exit_if(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

/// Exit 2 for inputs the library rejects on mathematical grounds, 1 for
/// usage, parse and I/O problems.
fn failure_code(err: &anyhow::Error) -> u8 {
    match err
        .chain()
        .find_map(|e| e.downcast_ref::<octcolor::Error>())
    {
        Some(octcolor::Error::Parse { .. }) | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure_code(&e))
        }
    }
}
