use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wqed_cli::{commands, presets, CliError, Result, ScenarioConfig, Table};

#[derive(Parser)]
#[command(name = "wqed", version, about = "Single-photon scattering on two qubits in a waveguide")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Markov and retarded transmission/reflection spectra.
    Spectrum(Source),
    /// Field energies u, v and u + v over a space-time grid.
    Field(Source),
    /// Field-energy time series behind the second qubit with its beat frequency.
    Beating(Source),
    /// Resonance-peak energy versus position.
    Peaks(Source),
    /// Compare closed forms against the brute-force oracles.
    OracleCheck(Source),
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
struct Source {
    /// Scenario file.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario (fig2 .. fig11).
    #[arg(long)]
    preset: Option<String>,
    /// Output file (defaults to [output] path, then stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

impl Source {
    fn load(&self) -> Result<ScenarioConfig> {
        match (&self.config, &self.preset) {
            (Some(path), None) => ScenarioConfig::from_file(path),
            (None, Some(name)) => presets::load(name),
            _ => Err(CliError::Usage("pass exactly one of --config or --preset".into())),
        }
    }

    fn emit(&self, cfg: &ScenarioConfig, table: &Table) -> Result<()> {
        let text = if self.json { table.to_json()? } else { table.to_csv() };
        match self.out.as_ref().or(cfg.output.as_ref()) {
            Some(path) => std::fs::write(path, text)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                    // A closed pipe (`| head`) is not an error.
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                    other => other?,
                }
            }
        }
        Ok(())
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("WQED_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("WQED_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let (source, run): (&Source, fn(&ScenarioConfig) -> Result<Table>) = match &cli.command {
        Command::Presets => {
            for (name, command, _) in presets::PRESETS {
                println!("{name}\t{command}");
            }
            return Ok(());
        }
        Command::OracleCheck(source) => {
            let cfg = source.load()?;
            let (table, failure) = commands::oracle_check(&cfg)?;
            source.emit(&cfg, &table)?;
            return failure.map_or(Ok(()), Err);
        }
        Command::Spectrum(s) => (s, commands::spectrum),
        Command::Field(s) => (s, commands::field),
        Command::Beating(s) => (s, commands::beating),
        Command::Peaks(s) => (s, commands::peaks),
    };
    let cfg = source.load()?;
    let table = run(&cfg)?;
    source.emit(&cfg, &table)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
