//! Command-line front end: argument parsing, file formats and report emission.
//! Machine output is JSON on stdout; a short summary goes to stderr.

pub mod commands;
pub mod formats;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed files, unmet preconditions.
    #[error("{0}")]
    Input(String),
}

/// What a command produced: `ok` is false on a mathematical failure.
#[derive(Debug)]
pub struct Outcome {
    pub ok: bool,
    pub report: Value,
    pub summary: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "hopfdiff",
    version,
    about = "Exact difference operators and crossed homomorphisms on Hopf algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Algebra file, or the name of a catalog algebra
    #[arg(long)]
    pub algebra: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf axioms of an algebra, or the axioms of an action
    Validate {
        #[arg(long, required_unless_present = "action", conflicts_with = "action")]
        algebra: Option<String>,
        /// Action file, or the name of a catalog action
        #[arg(long)]
        action: Option<String>,
    },
    /// Group-like basis elements
    Grouplikes(AlgebraArg),
    /// Primitive elements
    Primitives(AlgebraArg),
    /// Skew-primitive spaces for every ordered pair of group-likes
    SkewPrimitives(AlgebraArg),
    /// Check one operator, or compare the three characterisations on seeded random coalgebra maps
    CheckDiffop {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Operator file, or `id`, `unit-counit`, `antipode`
        #[arg(long, required_unless_present = "seed", conflicts_with = "seed")]
        operator: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check one crossed homomorphism, or compare the graph and module characterisations on seeded random maps
    CheckCrossedHom {
        #[arg(long)]
        action: String,
        #[arg(long, required_unless_present = "seed", conflicts_with = "seed")]
        operator: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classify difference operators by a search plan
    ClassifyDiffops {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Plan file; defaults to the catalog plan of a catalog algebra
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        bijective_only: bool,
        /// Published tables to compare against
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Directory receiving one operator file per classified operator
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smash product of an action
    Smash {
        #[arg(long)]
        action: String,
        /// Write the smash product as an algebra file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph of a map inside the smash product
    Graph {
        #[arg(long)]
        action: String,
        #[arg(long)]
        operator: String,
    },
    /// The ⋆ monoid on all difference operators of a cocommutative algebra
    MonoidTable {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Rota–Baxter operator of a bijective difference operator
    RotaBaxter {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        operator: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a compatible pair of difference operators to the smash product
    ExtendSmashDiff {
        #[arg(long)]
        action: String,
        /// Twice: the operator on the target, then the operator on the acting algebra
        #[arg(long, num_args = 1, required = true)]
        operator: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated free constructions
    FreeLie {
        #[command(subcommand)]
        command: FreeLieCommand,
    },
    /// Instance check of the group/primitive decomposition of difference operators
    CkmmCheck {
        /// Group algebra; every operator is checked unless --operator is given
        #[arg(long, required_unless_present = "budget", conflicts_with = "budget")]
        algebra: Option<String>,
        #[arg(long, requires = "algebra")]
        operator: Option<String>,
        /// Run the truncated mixed instance at this budget instead
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Catalog access
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Debug, Args)]
pub struct FreeArgs {
    #[arg(long)]
    pub generators: usize,
    #[arg(long, default_value_t = hopfdiff::free::DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum FreeLieCommand {
    /// Lyndon counts against primitive dimensions of the truncated tensor algebra
    LyndonDims(FreeArgs),
    /// The difference operator F∗S of the Hopf map extending v ↦ v + φ(v)
    DiffopFromHom {
        #[command(flatten)]
        free: FreeArgs,
        /// φ file
        #[arg(long)]
        operator: PathBuf,
    },
    /// Extension of a crossed homomorphism on the free Lie algebra and its checks
    MmCheck {
        #[command(flatten)]
        free: FreeArgs,
        /// π file on the Lyndon basis
        #[arg(long)]
        operator: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Names of all entries
    List,
    /// Write every entry in its file format
    Export {
        #[arg(long)]
        out: PathBuf,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Runs one command line. Returns the exit code and the bytes for stdout and stderr.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                (code, String::new(), text)
            } else {
                (code, text, String::new())
            };
        }
    };
    let verb = commands::verb(&cli.command);
    match commands::execute(cli.command) {
        Ok(out) => {
            let mut report = out.report;
            stamp(&mut report, verb);
            let code = if out.ok { EXIT_OK } else { EXIT_FAILURE };
            (
                code,
                formats::to_text(&report),
                format!("{}\n", out.summary),
            )
        }
        Err(CliError::Input(msg)) => {
            let mut report = serde_json::json!({ "error": msg });
            stamp(&mut report, verb);
            (
                EXIT_INPUT,
                formats::to_text(&report),
                format!("error: {msg}\n"),
            )
        }
    }
}

fn stamp(report: &mut Value, verb: &str) {
    if let Value::Object(m) = report {
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), verb.into());
    }
}
