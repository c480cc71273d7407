use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lqfa_cli::{commands, dim_cap_from_env, CliError, DfaDocument, Engine, NChoice};

/// Latvian QFA toolkit for unary regular languages.
#[derive(Parser)]
#[command(name = "lqfa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Event table of M^(ell) as CSV.
    Mell {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long = "kmax")]
        k_max: usize,
        #[arg(long, value_enum, default_value = "simulate")]
        engine: Engine,
    },
    /// Build the recognizer for a DFA and write its manifest.
    Synthesize {
        dfa: PathBuf,
        #[arg(long, default_value = "auto")]
        n: NChoice,
        /// Manifest path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the recognizer against the DFA up to a horizon.
    Verify {
        dfa: PathBuf,
        #[arg(long, default_value = "auto")]
        n: NChoice,
        #[arg(long = "kmax")]
        k_max: Option<usize>,
    },
    /// Event table of the recognizer as CSV.
    Event {
        dfa: PathBuf,
        #[arg(long, default_value = "auto")]
        n: NChoice,
        #[arg(long = "kmax")]
        k_max: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cap = dim_cap_from_env()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match cli.command {
        Command::Mell {
            n,
            ell,
            k_max,
            engine,
        } => commands::mell(n, ell, k_max, engine, cap, &mut out).map(|()| 0)?,
        Command::Synthesize { dfa, n, out: path } => {
            let doc = DfaDocument::load(&dfa)?;
            commands::synthesize(&doc, n, path.as_deref(), cap, &mut out).map(|()| 0)?
        }
        Command::Verify { dfa, n, k_max } => {
            commands::verify(&DfaDocument::load(&dfa)?, n, k_max, cap, &mut out)?
        }
        Command::Event { dfa, n, k_max } => {
            commands::event(&DfaDocument::load(&dfa)?, n, k_max, cap, &mut out).map(|()| 0)?
        }
    };
    out.flush().ok();
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
