use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ris_secrecy::cli::{self, RunOptions};
use ris_secrecy::montecarlo::Execution;

#[derive(Parser)]
#[command(name = "ris-secrecy", version, about = "Secrecy rate and outage of RIS-assisted links by Monte Carlo")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a JSON scenario file.
    Run {
        /// Preset name (see list-presets) or path to a scenario file.
        target: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Override a scenario key, e.g. --set d_te_m=35. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Also write plot.svg.
        #[arg(long)]
        svg: bool,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Report the secrecy rate at the mean SNRs in summary.txt.
        #[arg(long)]
        rate_at_mean_snr: bool,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// List the built-in presets.
    ListPresets,
    /// Check a scenario file and print its expansion.
    Validate { file: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let result = match args.command {
        Command::Run { target, seed, trials, overrides, svg, out, rate_at_mean_snr, serial } => {
            let opts = RunOptions {
                target,
                seed,
                trials,
                overrides,
                svg,
                out_dir: out,
                rate_at_mean_snr,
                execution: if serial { Execution::Serial } else { Execution::Parallel },
            };
            cli::run(&opts).map(|report| {
                for f in &report.files {
                    println!("wrote {}", f.display());
                }
            })
        }
        Command::ListPresets => {
            print!("{}", cli::list_presets());
            Ok(())
        }
        Command::Validate { file } => cli::validate(&file).map(|exp| println!("{exp}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
