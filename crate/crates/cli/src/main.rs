use std::process::ExitCode;

use clap::Parser;
use hermcodes::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(threads) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli).and_then(|outcome| emit(cli.common.out.as_deref(), &outcome).map(|_| outcome)) {
        Ok(outcome) => ExitCode::from(outcome.exit.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit.code() as u8)
        }
    }
}
