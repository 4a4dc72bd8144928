mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, OutputArgs};
use commands::{CliError, Outcome};
use report::{Report, Settings};

fn output_args(c: &Command) -> &OutputArgs {
    match c {
        Command::Zeros(a) => &a.out,
        Command::LaurentWalk(a) => &a.out,
        Command::TableZa(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Scorer(a) => &a.out,
        Command::Hyp1f2(a) => &a.out,
    }
}

fn run(cli: &Cli, work: u32) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Zeros(a) => commands::zeros(a, work),
        Command::LaurentWalk(a) => commands::laurent_walk(a, work),
        Command::TableZa(a) => commands::table_za(a, work),
        Command::Verify(a) => commands::verify(a, work),
        Command::Scorer(a) => commands::scorer_values(a, work),
        Command::Hyp1f2(a) => commands::hyp(a, work),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = output_args(&cli.command).clone();
    let work = match commands::working_digits(out.digits) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let outcome = run(&cli, work);
    let walltime_ms = start.elapsed().as_millis();
    let (outcome, code) = match outcome {
        Ok(o) => {
            let code = if o.passed { 0 } else { 1 };
            (o, code)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage: {m}");
            return ExitCode::from(2);
        }
        Err(e @ CliError::Numeric(_)) => {
            let o = Outcome {
                results: serde_json::Value::Null,
                diagnostics: vec![e.to_string()],
                ..Outcome::default()
            };
            (o, 3)
        }
    };
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    let report = Report {
        command,
        params: outcome.params,
        settings: Settings {
            digits: out.digits,
            precision: work,
            terms: outcome.terms,
        },
        results: outcome.results,
        diagnostics: outcome.diagnostics,
        walltime_ms,
    };
    if let Err(e) = report::render(&report, &outcome.table, out.format) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
