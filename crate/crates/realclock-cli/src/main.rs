//! Batch scenario runner for the realclock toolkit.
//!
//! Reads a flat-key-value config, runs one analysis scenario, and writes
//! deterministic CSV tables plus a hashed manifest. Identical config and
//! seed reproduce every output byte for byte. Exit codes: 0 success,
//! 2 config validation failure, 3 numerical guard tripped, 4 I/O failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use realclock_cli::config::RawConfig;
use realclock_cli::error::CliError;
use realclock_cli::{manifest, scenarios};

#[derive(Parser)]
#[command(
    name = "realclock",
    version,
    about = "Quantum evolution against fluctuating clocks: batch scenarios, CSV out"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the seed from the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate a diagonal system under a clock-induced dephasing rate.
    Evolve(RunArgs),
    /// Witness expectations for the needle-plus-stream measurement model.
    SpinCavity(RunArgs),
    /// Envelope/floor verdicts, the critical environment size, sensitivity.
    Undecidability(RunArgs),
    /// Conditional probabilities of outcomes given a quantum clock reading.
    ConditionalProb(RunArgs),
    /// Map one scalar output over a parameter grid.
    Sweep(RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Evolve(a) => ("evolve", a),
        Command::SpinCavity(a) => ("spin-cavity", a),
        Command::Undecidability(a) => ("undecidability", a),
        Command::ConditionalProb(a) => ("conditional-prob", a),
        Command::Sweep(a) => ("sweep", a),
    };
    match run(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprint!("{}", err.report());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(kind: &str, args: &RunArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.config).map_err(|source| CliError::Io {
        source,
        path: args.config.clone(),
    })?;
    let raw = RawConfig::parse(&text).map_err(CliError::Config)?;
    let tables = scenarios::run(kind, &raw, args.seed)?;

    // Render everything before touching the filesystem; a config or guard
    // failure never leaves partial outputs behind.
    let mut rendered: Vec<(String, String)> = Vec::with_capacity(tables.len());
    for (name, table) in &tables {
        let content = table.render().map_err(|e| CliError::Compute {
            source: realclock::Error::InvalidParams(e),
            context: format!("rendering {name}"),
        })?;
        rendered.push((name.clone(), content));
    }
    let manifest_text = manifest::render_manifest(&rendered);

    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        source,
        path: args.out.clone(),
    })?;
    for (name, content) in &rendered {
        let path = args.out.join(name);
        fs::write(&path, content).map_err(|source| CliError::Io {
            source,
            path: path.clone(),
        })?;
        println!("wrote {}", path.display());
    }
    let manifest_path = args.out.join("manifest.txt");
    fs::write(&manifest_path, manifest_text).map_err(|source| CliError::Io {
        source,
        path: manifest_path.clone(),
    })?;
    println!("wrote {}", manifest_path.display());
    Ok(())
}
