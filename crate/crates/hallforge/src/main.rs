//! Command-line front end: classification, products in the three algebras,
//! verification suites, and structure-constant export.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or schema error,
//! 3 budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hallforge::error::{Error, Result};
use hallforge::export;
use hallforge::hallalg::{ihall_product, ringel_product, ElementKind, HallElement};
use hallforge::quiver::Quiver;
use hallforge::session::Session;
use hallforge::verify;

#[derive(Parser)]
#[command(
    name = "hallforge",
    version,
    about = "Exact Hall-algebra computations for nilpotent quiver representations over finite fields"
)]
struct Cli {
    /// Quiver description file: {"vertices": ["1",...], "arrows": [["1","2"],...]}
    #[arg(long)]
    quiver: PathBuf,
    /// Field size, a prime
    #[arg(long)]
    prime: u64,
    /// Total-dimension bound of the class table
    #[arg(long)]
    max_dim: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every isomorphism class in the table as JSON
    Classify,
    /// Multiply two basis elements; algebra is one of hall, ihall, dh
    Mul {
        algebra: String,
        /// Key expression: a class id, S<k> for a simple, K(a1,...,an) for
        /// a torus class, or <key>@(a1,...,an)
        left: String,
        right: String,
    },
    /// Run a named verification suite: euler, rp, assoc, oracle, phi,
    /// serre, or all
    Verify { suite: String },
    /// Export the derived-Hall structure-constant table as JSON
    ExportTable,
}

fn cmd_classify(session: &Session) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&export::class_list(session))?);
    Ok(())
}

fn cmd_mul(session: &Session, algebra: &str, left: &str, right: &str) -> Result<()> {
    let kind = match algebra {
        "hall" => ElementKind::Rep,
        "ihall" => ElementKind::IHall,
        "dh" => ElementKind::Dh,
        other => {
            return Err(Error::Schema(format!(
                "unknown algebra {other:?}; expected hall, ihall, or dh"
            )))
        }
    };
    let q = session.q();
    let x = HallElement::basis(session.parse_key(kind, left)?, q);
    let y = HallElement::basis(session.parse_key(kind, right)?, q);
    let product = match kind {
        ElementKind::Rep => ringel_product(session.reps(), &x, &y)?,
        ElementKind::IHall => ihall_product(session.reps(), &x, &y)?,
        ElementKind::Dh => session.dh().product(&x, &y)?,
    };
    println!("{}", serde_json::to_string_pretty(&product.to_json())?);
    Ok(())
}

fn cmd_verify(session: &Session, suite: &str) -> Result<()> {
    let report = verify::run_suite(session, suite)?;
    eprint!("{}", report.human_lines());
    println!("{}", serde_json::to_string_pretty(&report)?);
    if !report.passed {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(Error::VerifyFailed(failed.join(", ")));
    }
    Ok(())
}

fn cmd_export_table(session: &Session) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(&export::g_table(session)?)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let text = std::fs::read_to_string(&cli.quiver)?;
    let quiver = Quiver::from_json_str(&text)?;
    let session = Session::new(quiver, cli.prime, cli.max_dim)?;
    match &cli.cmd {
        Cmd::Classify => cmd_classify(&session),
        Cmd::Mul { algebra, left, right } => cmd_mul(&session, algebra, left, right),
        Cmd::Verify { suite } => cmd_verify(&session, suite),
        Cmd::ExportTable => cmd_export_table(&session),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
