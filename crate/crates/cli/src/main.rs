use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use symcon_cli::commands::{exit_code, run_deform, run_fedosov, run_selftest, run_validate};
use symcon_cli::Report;

/// Construct and verify symplectic connections on coordinate superdomains.
///
/// Exit codes: 0 on success, 1 when a verification fails, 2 on usage or load
/// errors.
#[derive(Parser)]
#[command(name = "symcon", version, about)]
struct Cli {
    /// Also write the machine-readable JSON report to this path
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a chart spec: antisymmetry, parity, closedness, nondegeneracy
    Validate {
        /// Chart-spec file (TOML)
        spec: PathBuf,
    },
    /// Extract the N-tensor, build the corrected connection, and verify it
    Fedosov {
        /// Chart-spec file (TOML)
        spec: PathBuf,
    },
    /// Apply a random admissible deformation and re-verify
    Deform {
        /// Chart-spec file (TOML)
        spec: PathBuf,
        /// RNG seed for the deformation cochain
        #[arg(long)]
        seed: u64,
        /// Polynomial degree bound for cochain entries
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Run the randomized corpus property suite
    Selftest {
        /// Number of corpus instances
        #[arg(long, default_value_t = 18)]
        charts: usize,
        /// Base RNG seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Polynomial degree bound for random perturbations
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

fn emit(report: &Report, json: Option<&PathBuf>) -> std::io::Result<()> {
    print!("{}", report.to_text());
    if let Some(path) = json {
        std::fs::write(path, report.to_json_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { spec } => run_validate(spec),
        Command::Fedosov { spec } => run_fedosov(spec),
        Command::Deform { spec, seed, degree } => run_deform(spec, *seed, *degree),
        Command::Selftest {
            charts,
            seed,
            degree,
        } => run_selftest(*charts, *seed, *degree),
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.json.as_ref()) {
                eprintln!("symcon: cannot write report: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("symcon: {e}");
            ExitCode::from(2)
        }
    }
}
