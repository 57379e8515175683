use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use brauer_derive::{Error, Fp, Rational};

mod commands;
mod report;

use report::Output;

/// Exact computations with one-loop Brauer graph algebras Ω(T): bases,
/// Cartan matrices, tilting complexes and certified reduction to Ω(n).
#[derive(Debug, Parser)]
#[command(name = "brauer-derive", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Path-length cap of the quotient engine.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Extra overlap length resolved beyond the cap.
    #[arg(long, global = true)]
    pub margin: Option<usize>,
    /// Coefficient field: Q or one of the supported primes.
    #[arg(long, global = true, default_value = "Q",
          value_parser = ["Q", "2", "3", "5", "7", "11", "13", "101", "32003"])]
    pub field: String,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Attach and check certificates.
    #[arg(long, global = true)]
    pub certify: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a graph file and print its canonical form.
    Validate { graph: PathBuf },
    /// Brauer quiver of a graph, as DOT.
    Quiver { graph: PathBuf },
    /// Relations, normal-form basis and Cartan matrix of Ω(T).
    Algebra { graph: PathBuf },
    /// Cartan matrix of Ω(T), or of Ω(n) with --omega.
    Cartan {
        #[arg(required_unless_present = "omega", conflicts_with = "omega")]
        graph: Option<PathBuf>,
        #[arg(long)]
        omega: Option<usize>,
    },
    /// Shrinking tilting complex and its certificate.
    TiltShrink { graph: PathBuf },
    /// Enlarging tilting complex at a cycle edge and its certificate.
    TiltEnlarge {
        graph: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Reduce to the loop-star normal form.
    Reduce { graph: PathBuf },
    /// Number of edges n, naming the class representative Ω(n).
    Classify { graph: PathBuf },
    /// The algebra Ω(n).
    Omega { n: usize },
    /// The algebra A(n).
    An {
        n: usize,
        /// Compare the socle quotients of Ω(n) and A(n).
        #[arg(long)]
        compare_socle: bool,
    },
}

pub(crate) fn read_graph(path: &Path) -> Result<brauer_derive::graph::BrauerGraph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    brauer_derive::graph::parse_graph(&text)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MalformedInput(_) | Error::Validation { .. } | Error::Domain(_) | Error::EmptyTree(_) => 1,
        Error::NotStabilized { .. } => 2,
        _ => 3,
    }
}

fn dispatch(cli: &Cli) -> Output {
    macro_rules! with_field {
        ($($name:literal => $f:ty),*) => {
            match cli.opts.field.as_str() {
                $($name => commands::run::<$f>(&cli.command, &cli.opts),)*
                other => unreachable!("field {other} passed the parser"),
            }
        };
    }
    with_field!(
        "Q" => Rational,
        "2" => Fp<2>,
        "3" => Fp<3>,
        "5" => Fp<5>,
        "7" => Fp<7>,
        "11" => Fp<11>,
        "13" => Fp<13>,
        "101" => Fp<101>,
        "32003" => Fp<32003>
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = dispatch(&cli);
    print!("{}", out.render(cli.opts.json));
    match &out.error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(exit_code(e))
        }
    }
}
