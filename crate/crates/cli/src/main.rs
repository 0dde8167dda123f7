use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sphere_depth_cli::args::{Cli, Command};
use sphere_depth_cli::commands::{cmd_benchmark, cmd_depth, cmd_landscape, UsageError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Depth(a) => cmd_depth(a).map(|s| s + "\n"),
        Command::Benchmark(a) => cmd_benchmark(a).map(|s| s + "\n"),
        Command::Landscape(a) => cmd_landscape(a),
    };
    match outcome {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
