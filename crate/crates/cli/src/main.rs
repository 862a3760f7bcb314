use clap::{Parser, Subcommand};
use cqmix_cli::{demo, run_suite, CliError, ScenarioConfig};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "cqmix", version, about = "Verification suites and demos for the mixture algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report.
    Run {
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Record wall time in the report, which makes it non-reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Write a demo's CSV table.
    Demo {
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a config file without running anything.
    Validate { path: PathBuf },
}

fn load(path: Option<&Path>) -> Result<ScenarioConfig, CliError> {
    match path {
        Some(p) => ScenarioConfig::load(p),
        None => Ok(ScenarioConfig::default()),
    }
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Run { suite, config, out, seed, timing } => {
            // Reject the name before reading any file.
            if !cqmix_cli::SUITES.contains(&suite.as_str()) {
                return Err(CliError::UnknownSuite(suite));
            }
            let mut cfg = load(config.as_deref())?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let start = Instant::now();
            let mut report = run_suite(&suite, &cfg)?;
            if timing {
                report.wall_time = Some(start.elapsed().as_secs_f64());
            }
            let mut w = output(out.as_deref())?;
            serde_json::to_writer_pretty(&mut w, &report)?;
            w.write_all(b"\n")?;
            w.flush()?;
            for c in report.failures() {
                eprintln!("FAIL {}: residual {:e} > tolerance {:e}", c.id, c.residual, c.tolerance);
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Demo { name, config, out } => {
            if !cqmix_cli::DEMOS.contains(&name.as_str()) {
                return Err(CliError::UnknownDemo(name));
            }
            let cfg = load(config.as_deref())?;
            demo(&name, &cfg, output(out.as_deref())?)?;
            Ok(0)
        }
        Command::Validate { path } => {
            ScenarioConfig::load(&path)?;
            println!("{}: ok", path.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
