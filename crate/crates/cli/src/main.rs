use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kinspace_cli::{render_files, run_scenario, selftest, CliError};

#[derive(Parser)]
#[command(
    name = "kinspace",
    version,
    about = "Special relativity in hyperbolic kinematic space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized self-tests.
    #[arg(long, global = true, default_value_t = kinspace_verify::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write results.json plus trajectory CSVs.
    Run {
        scenario: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Draw a scenario as SVG.
    Render {
        scenario: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized cross-checks against the reference oracles.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { scenario, out } => run_scenario(&scenario, &out),
        Command::Render {
            scenario,
            spec,
            out,
        } => render_files(&scenario, &spec).and_then(|svg| match out {
            Some(path) => fs::write(&path, svg).map_err(CliError::from),
            None => {
                print!("{svg}");
                Ok(())
            }
        }),
        Command::Selftest => {
            let (report, ok) = selftest(cli.seed);
            print!("{report}");
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
