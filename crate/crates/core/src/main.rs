use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use vacuum_core::cli::{exit_code, render, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();
    let result = RunConfig::new(kind, args).and_then(|cfg| {
        let report = run(&cfg)?;
        let text = render(&report, cfg.format);
        let written = match &cfg.out {
            Some(path) => std::fs::write(path, &text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        };
        written.map_err(|e| vacuum_core::Error::Config(format!("cannot write report: {e}")))?;
        Ok(report)
    });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
