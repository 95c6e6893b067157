use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sudoku_symmetry::audit::{run_audit, AuditConfig, SCHEMA_VERSION};
use sudoku_symmetry::census::shidoku_census;
use sudoku_symmetry::grid::parse_corpus;
use sudoku_symmetry::{
    are_equivalent, canonicalize, default_workers, parse_expr, stabilizer, BoxSize, Grid,
    GridFormat, Mode,
};

/// Sudoku grid symmetries: transform, canonicalize, compare and audit.
#[derive(Parser, Debug)]
#[command(name = "sudoku-sym", version)]
struct Cli {
    /// Block edge length (2 for 4×4, 3 for 9×9). Inferred from grid input
    /// when omitted.
    #[arg(long = "box", global = true)]
    box_size: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Grid output format: line, block or json.
    #[arg(long, global = true, default_value = "line")]
    format: GridFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a symmetry expression to every input grid.
    Transform {
        /// Expression such as "V^2" or "r[987654321] d".
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        expr: String,
        /// Grid file, or '-' for standard input.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the canonical form of every input grid.
    Canon {
        /// Canonicalize under geometric symmetries only, without relabeling.
        #[arg(long)]
        geometry_only: bool,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Exit 0 if two grids are equivalent, 1 if not.
    Equiv {
        #[arg(long)]
        geometry_only: bool,
        first: String,
        second: String,
    },
    /// Report the automorphism (stabilizer) count and orbit size of a grid.
    Auto {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Exhaustive census of complete 4×4 grids.
    Census,
    /// Run the full group audit and print the report as JSON.
    Audit,
}

struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(String, u8), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::from(format!("{path}: {e}")))
    }
}

fn box_arg(cli: &Cli) -> Result<Option<BoxSize>, Failure> {
    Ok(cli.box_size.map(BoxSize::new).transpose()?)
}

fn read_grids(cli: &Cli, path: &str) -> Result<Vec<Grid>, Failure> {
    let grids = parse_corpus(&read_input(path)?, box_arg(cli)?)?;
    if grids.is_empty() {
        return Err(Failure::from(format!("{path}: no grids")));
    }
    Ok(grids)
}

fn read_one(cli: &Cli, path: &str) -> Result<Grid, Failure> {
    let mut grids = read_grids(cli, path)?;
    if grids.len() != 1 {
        return Err(Failure::from(format!(
            "{path}: expected one grid, found {}",
            grids.len()
        )));
    }
    Ok(grids.remove(0))
}

fn mode(geometry_only: bool) -> Mode {
    if geometry_only {
        Mode::Geometry
    } else {
        Mode::GeometryAndRelabel
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}

fn run(cli: &Cli) -> CliResult {
    let workers = cli.workers.unwrap_or_else(default_workers).max(1);
    match &cli.command {
        Command::Transform { expr, input } => {
            let grids = read_grids(cli, input)?;
            let mut out = String::new();
            for grid in grids {
                let g = parse_expr(expr, grid.size())?;
                out.push_str(&grid.apply_symmetry(&g)?.to_text(cli.format));
            }
            Ok((out, 0))
        }
        Command::Canon {
            geometry_only,
            input,
        } => {
            let mut out = String::new();
            for grid in read_grids(cli, input)? {
                let form = canonicalize(&grid, mode(*geometry_only), workers)?;
                if cli.format == GridFormat::Json {
                    let value = json!({
                        "schemaVersion": SCHEMA_VERSION,
                        "canonical": form.grid.to_json_value(),
                        "symmetry": form.symmetry.to_string(),
                        "relabel": form.relabel.images(),
                    });
                    out.push_str(&serde_json::to_string(&value)?);
                    out.push('\n');
                } else {
                    out.push_str(&form.grid.to_text(cli.format));
                }
            }
            Ok((out, 0))
        }
        Command::Equiv {
            geometry_only,
            first,
            second,
        } => {
            let a = read_one(cli, first)?;
            let b = read_one(cli, second)?;
            if are_equivalent(&a, &b, mode(*geometry_only), workers)? {
                Ok(("equivalent\n".into(), 0))
            } else {
                Ok(("not equivalent\n".into(), 1))
            }
        }
        Command::Auto { input } => {
            let grid = read_one(cli, input)?;
            let report = stabilizer(&grid, workers)?;
            let value = json!({
                "schemaVersion": SCHEMA_VERSION,
                "box": grid.size().block(),
                "stabilizerSize": report.stabilizer_size,
                "orbitSize": report.orbit_size,
                "groupOrder": report.group_order,
            });
            Ok((to_json(&value), 0))
        }
        Command::Census => {
            let size = box_arg(cli)?.unwrap_or(BoxSize::SHIDOKU);
            if size != BoxSize::SHIDOKU {
                return Err(Failure::from("census is only available for --box 2"));
            }
            let census = shidoku_census(workers);
            let code = if census.partitions_agree { 0 } else { 1 };
            let value = json!({
                "schemaVersion": SCHEMA_VERSION,
                "box": 2,
                "total": census.total,
                "classes": census.classes,
                "classSizes": census.class_sizes,
                "details": census.details,
                "partitionsAgree": census.partitions_agree,
            });
            Ok((to_json(&value), code))
        }
        Command::Audit => {
            let size = box_arg(cli)?.unwrap_or(BoxSize::SUDOKU);
            let report = run_audit(&AuditConfig {
                size,
                seed: cli.seed,
                workers,
                ..AuditConfig::default()
            });
            for failed in report.failures() {
                eprintln!("audit check failed: {}: {}", failed.name, failed.detail);
            }
            Ok((to_json(&report), if report.passed { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
