use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use triple_cli::commands::{self, InputError, Outcome};

/// Exact verification of Lie bialgebra constructions.
///
/// INPUT is a definition file or `catalog:NAME` for a built-in fixture
/// (abelian-N, axb, sl2, sl3, su2). Exit status: 0 when every check
/// passes, 1 when a check fails, 2 for unreadable or malformed input.
#[derive(Parser)]
#[command(name = "lietriple", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the input; the report goes to stdout.
    Verify(RunArgs),
    /// Emit the Drinfel'd double on stdout; the report goes to stderr.
    Double(RunArgs),
    /// Emit the double bosonisation T(g) on stdout; the report goes to stderr.
    Triple(RunArgs),
    /// Check every structure theorem that applies to the input.
    Theorems(RunArgs),
    /// Print the input in canonical form.
    Emit { input: String },
}

#[derive(Args)]
struct RunArgs {
    input: String,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the report as JSON instead of text.
    #[arg(long)]
    machine: bool,
}

fn input_error(e: InputError) -> ExitCode {
    eprintln!("lietriple: {e}");
    ExitCode::from(2)
}

fn deliver(outcome: Outcome, args: &RunArgs) -> ExitCode {
    let rendered = if args.machine { outcome.report.to_json() } else { outcome.report.to_string() };
    match &outcome.emitted {
        Some(text) => {
            print!("{text}");
            eprint!("{rendered}");
        }
        None => print!("{rendered}"),
    }
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
            eprintln!("lietriple: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (&RunArgs, fn(&triple_cli::format::AlgebraFile) -> Result<Outcome, InputError>) = match &cli.command {
        Command::Verify(a) => (a, |f| Ok(commands::verify(f))),
        Command::Double(a) => (a, |f| Ok(commands::double(f))),
        Command::Triple(a) => (a, commands::triple_cmd),
        Command::Theorems(a) => (a, |f| Ok(commands::theorems(f))),
        Command::Emit { input } => {
            return match commands::load(input) {
                Ok((file, header)) => {
                    print!("{}", commands::emit(&file, &header));
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            };
        }
    };
    let file = match commands::load(&args.input) {
        Ok((file, _)) => file,
        Err(e) => return input_error(e),
    };
    match run(&file) {
        Ok(outcome) => deliver(outcome, args),
        Err(e) => input_error(e),
    }
}
