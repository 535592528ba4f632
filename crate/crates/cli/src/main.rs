use std::io::Write;
use std::process::ExitCode;

use asmlab_cli::{emit, run, Cli};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let detail: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!(
                "error[E_USAGE]: {}",
                detail.join(" ").trim_start_matches("error: ")
            );
            return ExitCode::from(2);
        }
    };
    let env_cache = std::env::var_os("ASMLAB_CACHE").map(Into::into);
    match run(&cli, env_cache).and_then(|out| emit(&cli, out)) {
        Ok(Some(out)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
