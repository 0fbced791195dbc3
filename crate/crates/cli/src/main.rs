//! `corner`: command-line access to the corner computations. Exit status is
//! 0 when every recomputed check passes, 1 when a check or a hypothesis
//! fails, and 2 on bad input.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use corner_core::format::AlgebraFile;

use serde_json::Value;

use commands::{InputError, Outcome};
use report::{sha256_hex, ReportDocument};

#[derive(Parser)]
#[command(
    name = "corner",
    version,
    about = "Exact radicals, ranks and corner decompositions for algebras over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Characteristic; for file commands it must match the file.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Include basis listings.
    #[arg(long)]
    pub full: bool,
    /// Largest element count for exhaustive searches.
    #[arg(long = "brute-cap", default_value_t = 1 << 16)]
    pub brute_cap: u128,
    /// Write the output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FileArgs {
    file: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ElementArgs {
    file: PathBuf,
    /// A named element of the file, `unity`, or a matrix unit such as `E12`.
    #[arg(long)]
    element: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, radical, semisimple quotient and socle.
    Info(FileArgs),
    /// Jacobson radical, cross-checked by enumeration when small.
    Radical(FileArgs),
    /// Wedderburn blocks of A/J(A).
    Structure(FileArgs),
    /// Right and left rank of an element.
    Rank(ElementArgs),
    /// Inner inverse and unit-regular factorization.
    Regular(ElementArgs),
    /// The corner aAa, its radical and its deformed presentation.
    Corner(ElementArgs),
    /// Decomposition of aAa into I_0 and the ideals I_1, ..., I_k.
    Decompose(ElementArgs),
    /// Block shapes of eAe and the rank identity.
    Shapes(ElementArgs),
    /// Seeded theorem tests over random algebras.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = corner_core::suite::DEFAULT_CASES)]
        cases: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Write a built-in algebra file: paper10, t2, m3, remark or random.
    Gen {
        name: String,
        /// Block size of the 10x10 block example.
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), InputError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command, echo: Vec<String>) -> Result<bool, InputError> {
    let start = Instant::now();
    let (common, digest, outcome): (Common, Option<String>, Outcome) = match command {
        Command::Gen { name, d, common } => {
            let g = commands::gen(&name, d, &common)?;
            let text = AlgebraFile::from_generated(&g).serialize();
            emit(&text, common.out.as_deref())?;
            if common.out.is_some() {
                eprintln!(
                    "wrote {} (dim {}, sha256 {})",
                    g.name,
                    g.algebra.dim(),
                    sha256_hex(text.as_bytes())
                );
            }
            return Ok(true);
        }
        Command::Verify {
            suite,
            cases,
            common,
        } => {
            let o = commands::verify(&suite, cases, &common)?;
            (common, None, o)
        }
        Command::Info(a) => file_command(a, commands::info)?,
        Command::Radical(a) => file_command(a, commands::radical_cmd)?,
        Command::Structure(a) => file_command(a, commands::structure)?,
        Command::Rank(a) => element_command(a, commands::rank)?,
        Command::Regular(a) => element_command(a, commands::regular)?,
        Command::Corner(a) => element_command(a, commands::corner)?,
        Command::Decompose(a) => element_command(a, commands::decompose)?,
        Command::Shapes(a) => element_command(a, commands::shapes)?,
    };
    let doc = ReportDocument {
        command: echo,
        input_digest: digest,
        seed: common.seed,
        result: Value::Object(outcome.result),
        ledger: outcome.ledger,
        error: outcome.error,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let text = if common.json {
        doc.to_json()
    } else {
        doc.to_text()
    };
    emit(&text, common.out.as_deref())?;
    Ok(doc.passed())
}

type FileFn = fn(&commands::Loaded, &Common) -> Result<Outcome, InputError>;
type ElementFn = fn(&commands::Loaded, &str, &Common) -> Result<Outcome, InputError>;

fn file_command(a: FileArgs, f: FileFn) -> Result<(Common, Option<String>, Outcome), InputError> {
    let l = commands::load(&a.file, &a.common)?;
    let o = f(&l, &a.common)?;
    Ok((a.common, Some(l.digest), o))
}

fn element_command(
    a: ElementArgs,
    f: ElementFn,
) -> Result<(Common, Option<String>, Outcome), InputError> {
    let l = commands::load(&a.file, &a.common)?;
    let o = f(&l, &a.element, &a.common)?;
    Ok((a.common, Some(l.digest), o))
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command, echo) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
