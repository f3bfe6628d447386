use std::process::ExitCode;

use clap::Parser;
use resint_cli::corpus::corpus_report;
use resint_cli::{configure_workers, run_file, Cli, CliError, Command};

fn run() -> Result<(), CliError> {
    configure_workers()?;
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Corpus(args) => {
            let (report, results) = corpus_report(args)?;
            println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
            let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
            for r in &failed {
                eprintln!("FAIL {}\n{}", r.name, r.diff.as_deref().unwrap_or(""));
            }
            if !failed.is_empty() {
                return Err(CliError::Mismatch(format!("{} of {} cases differ", failed.len(), results.len())));
            }
            return Ok(());
        }
        cmd => run_file(cmd, cmd.problem_args().expect("problem command"))?,
    };
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    Ok(())
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| {
        eprintln!("resint: internal error: {info}");
    }));
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("resint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
