use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use zosc_cli::commands::{execute, Cli};
use zosc_cli::config::{CliError, CliResult};
use zosc_cli::output::Format;

fn run(cli: &Cli) -> CliResult<bool> {
    let cfg = cli.config()?;
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let report = execute(cli, &cfg)?;
    let text = report.render(cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?,
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(text.as_bytes());
        }
    }
    if let (Format::Csv, Some(side)) = (cfg.format, &report.sidecar) {
        let text = serde_json::to_string_pretty(side).expect("JSON values always serialize");
        match &cfg.output {
            Some(path) => {
                let path = path.with_extension("meta.json");
                std::fs::write(&path, text + "\n").map_err(|source| CliError::Write { path, source })?;
            }
            None => eprintln!("{text}"),
        }
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("zosc: checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("zosc: {e}");
            ExitCode::from(2)
        }
    }
}
