use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use shotnoise::spec::{Command, ExperimentSpec, Format};
use shotnoise::verify::SCENARIOS;
use shotnoise::{exit, run, CliError};

/// Shot noise simulation, transform calculus and diagnostics.
#[derive(Debug, Parser)]
#[command(name = "shotnoise", version)]
struct Cli {
    /// Operation to run; overrides the command in the spec file.
    command: Command,
    /// Scenario name for `verify`.
    scenario: Option<String>,
    /// JSON experiment spec.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Root seed; overrides the spec.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// List verify scenarios.
    #[arg(long)]
    list: bool,
}

fn load(cli: &Cli) -> Result<ExperimentSpec, CliError> {
    let mut spec = match &cli.spec {
        Some(path) => ExperimentSpec::from_json(&std::fs::read_to_string(path)?)?,
        None if cli.command == Command::Verify => ExperimentSpec::new(Command::Verify),
        None => return Err(CliError::Schema(format!("--spec is required for {:?}", cli.command))),
    };
    spec.command = cli.command;
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    if cli.scenario.is_some() {
        spec.scenario = cli.scenario.clone();
    }
    Ok(spec)
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    if cli.list {
        let listing: String = SCENARIOS.iter().map(|s| format!("{}\t{}\n", s.name, s.anchor)).collect();
        emit(&listing, cli.out)?;
        return Ok(exit::OK);
    }
    let spec = load(&cli)?;
    let format = cli.format.or(spec.format).unwrap_or_default();
    let artifact = run(&spec)?;
    let out = cli.out.or_else(|| spec.output.clone().map(PathBuf::from));
    emit(&artifact.render(format), out)?;
    let failed = spec.command == Command::Verify && artifact.json["pass"] == false;
    Ok(if failed { exit::FAILURE } else { exit::OK })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = main_inner(cli).unwrap_or_else(|e| {
        eprintln!("{}", e.payload());
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
