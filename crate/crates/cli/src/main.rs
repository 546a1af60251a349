use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use propcoh::report::Report;
use propcoh::{demo, harness, model, omega, CliError};
use propcoh_core::fincat::{builtin_base, BaseName};

/// Checker for finite presheaf models of a strict universe of
/// propositions.
#[derive(Parser)]
#[command(name = "propcoh", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a model file and run its assertions.
    Check {
        /// Path to the model file.
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized law harness over a builtin base.
    Laws {
        /// Builtin base category: pt, arr, span, or chain3.
        #[arg(long)]
        base: String,
        /// Number of random cases per law family.
        #[arg(long, default_value_t = 100)]
        cases: u32,
        /// RNG seed; reports are reproducible from it.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the subobject classifier: sieve counts and members.
    Omega {
        /// Builtin base category: pt, arr, span, or chain3.
        #[arg(long, conflicts_with = "file")]
        base: Option<String>,
        /// Take the base category from a model file instead.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Emit the table as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a canned demonstration: retract, propext, or negneg.
    Demo {
        /// Demonstration name.
        name: String,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run() -> Result<ExitCode, CliError> {
    match Cli::parse().cmd {
        Cmd::Check { file, json } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", file.display())))?;
            let report = propcoh::check_text(&text)?;
            Ok(emit(&report, json))
        }
        Cmd::Laws {
            base,
            cases,
            seed,
            json,
        } => {
            if cases == 0 {
                return Err(CliError::Model("--cases must be at least 1".into()));
            }
            let base: BaseName = base.parse().map_err(CliError::Core)?;
            let report = harness::laws_harness(base, cases, seed);
            Ok(emit(&report, json))
        }
        Cmd::Omega { base, file, json } => {
            let category = match (base, file) {
                (Some(name), None) => builtin_base(name.parse().map_err(CliError::Core)?),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        CliError::Io(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let parsed = model::parse_model(&text)?;
                    model::elaborate(&parsed)?.category.as_ref().clone()
                }
                _ => {
                    return Err(CliError::Model(
                        "omega needs exactly one of --base or --file".into(),
                    ))
                }
            };
            let table = omega::omega_cmd(&category)?;
            if json {
                println!("{}", table.render_json());
            } else {
                print!("{}", table.render_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Demo { name, json } => {
            let report = demo::demo_cmd(&name)?;
            Ok(emit(&report, json))
        }
    }
}
