use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use coxtool::cli::{Cli, Command};
use coxtool::commands::{self, InputError, Outcome};
use coxtool::report::{CommandEcho, Report, EXIT_INPUT};

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    let caps = cli.caps.caps();
    match &cli.command {
        Command::Analyze { file, generator } => commands::analyze(&commands::load(file)?, generator, &caps),
        Command::Blowdown { file, generator, candidate, verify } => {
            commands::blowdown(&commands::load(file)?, generator, candidate, *verify, &caps)
        }
        Command::Twist { file, generator, candidate } => {
            commands::twist(&commands::load(file)?, generator, candidate, &caps)
        }
        Command::Verify { file } => commands::verify(&commands::load(file)?, &caps),
        Command::Complex { file, radius } => commands::complex(&commands::load(file)?, *radius, &caps),
    }
}

fn echo(cli: &Cli) -> CommandEcho {
    let (file, generator, candidate) = match &cli.command {
        Command::Analyze { file, generator } => (file, Some(generator.clone()), None),
        Command::Blowdown { file, generator, candidate, .. } | Command::Twist { file, generator, candidate } => {
            (file, Some(generator.clone()), Some(candidate.clone()))
        }
        Command::Verify { file } | Command::Complex { file, .. } => (file, None, None),
    };
    CommandEcho {
        name: cli.command.name().into(),
        file: file.display().to_string(),
        generator,
        candidate,
        max_enum: cli.caps.max_enum,
        order_cap: cli.caps.order_cap,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let timing_us = start.elapsed().as_micros() as u64;
    let report = match outcome {
        Ok(o) => Report {
            command: echo(&cli),
            status: o.status,
            exit_code: o.exit_code,
            error: None,
            verdict: o.verdict,
            generating_sets: o.generating_sets,
            checks: o.checks,
            residues: o.residues,
            notes: o.notes,
            timing_us,
        },
        Err(InputError(e)) => Report {
            command: echo(&cli),
            status: "error".into(),
            exit_code: EXIT_INPUT,
            error: Some(e),
            verdict: None,
            generating_sets: Vec::new(),
            checks: Vec::new(),
            residues: Vec::new(),
            notes: Vec::new(),
            timing_us,
        },
    };
    if cli.json {
        print!("{}", report.to_json());
    } else if report.error.is_some() {
        eprint!("{}", report.to_text());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}
