use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use parcohom::cli::{run, Command, EXIT_USAGE};

#[derive(Parser)]
#[command(version, about = "Parametrized cellular cohomology over finite-group base spaces")]
struct Args {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the presentation, representation, coefficients and cells.
    Validate { file: PathBuf },
    /// Classify the virtual representations of the groupoid.
    Ro { file: PathBuf },
    /// Cohomology of the complex.
    Cohom {
        file: PathBuf,
        /// Z, F2, Z/n or custom.
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Compare claimed underlying matrices with the ones computed from the representation.
    VerifySigns { file: PathBuf },
    /// Cohomology with local coefficients.
    Local {
        file: PathBuf,
        #[arg(long)]
        coeff: Option<String>,
    },
    /// Compare local-coefficient cohomology with the covering-space oracle.
    OracleCompare {
        file: PathBuf,
        #[arg(long)]
        coeff: Option<String>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (file, cmd) = match args.cmd {
        Cmd::Validate { file } => (file, Command::Validate),
        Cmd::Ro { file } => (file, Command::Ro),
        Cmd::Cohom { file, coeff } => (file, Command::Cohom { coeff }),
        Cmd::VerifySigns { file } => (file, Command::VerifySigns),
        Cmd::Local { file, coeff } => (file, Command::Local { coeff }),
        Cmd::OracleCompare { file, coeff } => (file, Command::OracleCompare { coeff }),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let (code, out) = run(&cmd, &text, args.json);
    if !out.starts_with("error:") {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(code as u8)
}
