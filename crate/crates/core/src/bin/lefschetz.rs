use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lefschetz::cli::commands::{self, Format};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Exact Lefschetz and Hodge computations on model algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print one record per check.
    Verify {
        #[arg(long)]
        model: PathBuf,
        /// sl2, hodge, torus, cones or all.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
    },
    /// Primitive decomposition of a constant form.
    Decompose {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        deformed_by: Option<String>,
    },
    /// Hodge star of a form.
    Star {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// h(v, alpha w^j) on the torus model.
    Hmap {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        j: usize,
    },
}

fn run(cli: Cli, out: &mut impl Write) -> lefschetz::Result<bool> {
    match cli.command {
        Command::Verify { model, suite, seed, table, .. } => {
            let model = commands::load(&model, seed)?;
            let format = if table { Format::Table } else { Format::Json };
            commands::verify(&model, suite.as_deref(), format, out)
        }
        Command::Decompose { model, expr, deformed_by } => {
            commands::decompose(&commands::load(&model, None)?, &expr, deformed_by.as_deref(), out)?;
            Ok(true)
        }
        Command::Star { model, expr } => {
            commands::star(&commands::load(&model, None)?, &expr, out)?;
            Ok(true)
        }
        Command::Hmap { model, alpha, v, j } => {
            commands::hmap(&commands::load(&model, None)?, &alpha, &v, j, out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
