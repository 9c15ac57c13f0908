use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sbs_core::error::StageExt as _;
use sbs_core::{Error, RunConfig, Stage};

#[derive(Parser)]
#[command(name = "sbs", about = "Semantic Brand Score analytics", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write results, networks and the report.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
    },
    /// Print one interval's filtered network in Pajek format.
    ExportPajek {
        #[arg(long)]
        config: PathBuf,
        /// Interval label, i.e. its start date (YYYY-MM-DD).
        #[arg(long)]
        interval: String,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the tool version.
    Version,
}

fn load(path: &Path) -> Result<RunConfig, Error> {
    RunConfig::load(path).stage(Stage::Config)
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run {
            config,
            out,
            seed,
            workers,
        } => {
            let mut cfg = load(&config)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(workers) = workers {
                cfg.workers = workers as usize;
            }
            let manifest = sbs_core::run_pipeline(&cfg)?;
            let rows: usize = manifest.intervals.iter().map(|iv| iv.rows).sum();
            eprintln!(
                "wrote {rows} result rows for {} intervals to {}",
                manifest.intervals.len(),
                cfg.output_dir.display()
            );
        }
        Command::ExportPajek { config, interval, out } => {
            let cfg = load(&config)?;
            let net = sbs_core::interval_network(&cfg, &interval)?;
            match out {
                Some(path) => sbs_core::pajek::export_pajek(&net, &path).stage(Stage::Emit)?,
                None => {
                    let text = sbs_core::pajek::to_pajek_string(&net);
                    let mut stdout = std::io::stdout().lock();
                    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                        // a reader that hung up early is not a failure
                        if e.kind() != std::io::ErrorKind::BrokenPipe {
                            return Err(Error::Io {
                                path: "<stdout>".into(),
                                source: e,
                            });
                        }
                    }
                }
            }
        }
        Command::Version => println!("sbs {}", env!("CARGO_PKG_VERSION")),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
