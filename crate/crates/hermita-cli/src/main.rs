use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hermita_cli::commands::{self, CommandOutput};
use hermita_cli::error::CliError;

/// Exact scaling and Morita reduction for sesquilinear and ε-hermitian
/// forms over division algebras.
#[derive(Parser)]
#[command(name = "hermita", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scale a form over (M_n(D), *) to one over (M_n(D), -^t)
    Scale {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce a matrix-algebra form to a form over D, with a report
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Run the full range of extraction verification probes
        #[arg(long)]
        strict: bool,
    },
    /// Lift a form over D back to the matrix-algebra side named in the file
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reduce and lift back, asserting an exact round trip
    Roundtrip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Check symmetry, sesquilinearity and nonsingularity of one form
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the randomized invariant suite
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u32,
        #[arg(long)]
        strict: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    Ok(fs::read_to_string(path)?)
}

fn emit(out: CommandOutput, output: Option<PathBuf>) -> Result<(), CliError> {
    if let Some(text) = &out.form_file {
        match &output {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
    }
    if let Some(report) = &out.report {
        // keep stdout clean for piped form files
        if out.form_file.is_some() && output.is_none() {
            eprint!("{report}");
        } else {
            print!("{report}");
        }
    }
    if let Some(violation) = out.violation {
        return Err(CliError::Invariant(violation));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scale { input, output } => emit(commands::scale(&read(&input)?)?, output),
        Command::Reduce {
            input,
            output,
            strict,
        } => emit(commands::reduce(&read(&input)?, strict)?, output),
        Command::Lift { input, output } => emit(commands::lift(&read(&input)?)?, output),
        Command::Roundtrip { input, strict } => {
            emit(commands::roundtrip(&read(&input)?, strict)?, None)
        }
        Command::Verify { input } => emit(commands::verify(&read(&input)?)?, None),
        Command::Fuzz {
            seed,
            trials,
            strict,
        } => emit(commands::fuzz(seed, trials.max(1), strict)?, None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
