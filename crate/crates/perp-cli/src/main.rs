//! `perp` — duality, discriminant, and braid-monodromy checks from the
//! command line.
//!
//! Inputs are either bundled catalog names (`conic`, `plane-cubic`, …) or
//! paths to files in the same plain-text variety format. Every invocation
//! emits one report (JSON or markdown) and exits with the number of failed
//! checks (capped at 63), 64 on usage errors, or 65 when an exact
//! computation ran out of budget.

mod checks;
mod report;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use checks::{CheckSpec, FieldChoice, Suite};
use report::{ConfigEcho, Report};

const EXIT_USAGE: u8 = 64;
const EXIT_BUDGET: u8 = 65;
const MAX_FAILURE_EXIT: usize = 63;

#[derive(Parser)]
#[command(
    name = "perp",
    version,
    about = "Projective duality, projection discriminants, and braid monodromy"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Coefficient field: `q` (exact rationals) or `fp:<p>` (prime field)
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Seed for all randomized projections and witnesses
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,

    /// S-polynomial reduction budget per check
    #[arg(long, global = true, default_value_t = perp::DEFAULT_BUDGET)]
    budget: u64,

    /// Numeric tolerance for the braid-monodromy transport
    #[arg(long, global = true, default_value_t = perp::braid::DEFAULT_TOL)]
    tol: f64,

    /// Number of checks to run concurrently
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Report format
    #[arg(long, global = true, value_parser = ["json", "md"], default_value = "md")]
    output: String,

    /// Per-check wall-clock limit in seconds
    #[arg(long, global = true, default_value_t = 900)]
    timeout: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the dual variety: ideal, dimension, degree, and defect
    Dual {
        /// Bundled catalog name or path to a variety file
        input: String,
    },
    /// Check that the dual of a generic branch locus equals the matching
    /// linear section of the dual variety, and classify the branch locus
    Verify {
        /// Bundled catalog name or path to a variety file
        input: String,
        /// Dimension of the projection target
        #[arg(long)]
        k: usize,
    },
    /// Braid monodromy of a plane-curve cover, with a surjectivity
    /// certificate for the permutation image
    Braid {
        /// Bundled catalog name or path to a curve file
        input: String,
    },
    /// Run a bundled example suite
    Examples {
        #[arg(value_enum)]
        suite: Suite,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let field = match FieldChoice::parse(&cli.field) {
        Ok(f) => f,
        Err(msg) => return usage_error(&msg),
    };

    let (command, specs): (&str, Vec<CheckSpec>) = match &cli.cmd {
        Cmd::Dual { input } => {
            let entries = match load_entries(input) {
                Ok(e) => e,
                Err(msg) => return usage_error(&msg),
            };
            ("dual", checks::dual_checks(&entries, field, cli.budget))
        }
        Cmd::Verify { input, k } => {
            let entries = match load_entries(input) {
                Ok(e) => e,
                Err(msg) => return usage_error(&msg),
            };
            ("verify", checks::verify_checks(&entries, field, *k, cli.seed, cli.budget))
        }
        Cmd::Braid { input } => {
            if field != FieldChoice::Q {
                return usage_error(
                    "braid monodromy works over the exact rationals; pass --field q",
                );
            }
            let entries = match load_entries(input) {
                Ok(e) => e,
                Err(msg) => return usage_error(&msg),
            };
            ("braid", checks::braid_checks(&entries, cli.seed, cli.tol))
        }
        Cmd::Examples { suite } => {
            ("examples", checks::suite_checks(*suite, field, cli.seed, cli.budget))
        }
    };

    let start = Instant::now();
    let reports = checks::run_all(specs, cli.jobs, Duration::from_secs(cli.timeout));
    let wall_ms = start.elapsed().as_millis() as u64;

    let budget_hit = reports.iter().any(|r| r.budget_exceeded);
    let failures = reports.iter().filter(|r| !r.pass).count();
    let report = Report {
        tool: "perp".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        config: ConfigEcho {
            field: field.label(),
            seed: cli.seed,
            budget: cli.budget,
            tol: cli.tol,
            jobs: cli.jobs,
            timeout_secs: cli.timeout,
        },
        checks: reports,
        failures,
        wall_ms,
    };

    match cli.output.as_str() {
        "json" => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        _ => print!("{}", report::render_markdown(&report)),
    }

    if budget_hit {
        return ExitCode::from(EXIT_BUDGET);
    }
    ExitCode::from(failures.min(MAX_FAILURE_EXIT) as u8)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// Resolve an input argument: an existing file is parsed as a variety
/// catalog (all of its entries run); otherwise the bundled catalog is
/// searched by name.
fn load_entries(input: &str) -> Result<Vec<perp::catalog::CatalogEntry>, String> {
    let path = std::path::Path::new(input);
    if path.exists() {
        let src = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {input}: {e}"))?;
        let entries =
            perp::catalog::parse_catalog(&src).map_err(|e| format!("{input}: {e}"))?;
        if entries.is_empty() {
            return Err(format!("{input}: no variety entries found"));
        }
        return Ok(entries);
    }
    if let Some(entry) = perp::catalog::find(input) {
        return Ok(vec![entry]);
    }
    let names: Vec<String> = perp::catalog::builtin().into_iter().map(|e| e.name).collect();
    Err(format!(
        "unknown input '{input}': not a file, and no bundled variety has that name \
         (bundled: {})",
        names.join(", ")
    ))
}
