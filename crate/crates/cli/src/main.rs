//! Command-line front end: group inspection, Burnside-ring idempotents and
//! marks, cardinality expressions, and poset Möbius tables, with a
//! persistent subgroup-lattice cache.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded, 4 internal
//! invariant violation (a failed self-check).

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ambicard", version, about = "Burnside-ring invariants and height-1 cardinalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Directory for the subgroup-lattice cache
    #[arg(long, global = true, default_value = ".ambicard-cache")]
    cache_dir: PathBuf,

    /// Skip the lattice cache entirely
    #[arg(long, global = true)]
    no_cache: bool,

    /// Run the cross-validation checks and report them
    #[arg(long, global = true)]
    check: bool,

    /// Cap on group order during construction
    #[arg(long, global = true, default_value_t = ambicard_core::group::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a finite group
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Burnside-ring computations
    Burnside {
        #[command(subcommand)]
        command: BurnsideCommand,
    },
    /// Cardinality expressions in x = |BC_p|
    Card {
        #[command(subcommand)]
        command: CardCommand,
    },
    /// Poset utilities
    Poset {
        #[command(subcommand)]
        command: PosetCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, subgroup classes, normalizers, residuals
    Info {
        #[command(flatten)]
        selector: GroupSelector,
        /// Also print the table of marks
        #[arg(long)]
        marks: bool,
        /// Report O^p for this prime
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BurnsideCommand {
    /// Primitive idempotents (rational or p-local)
    Idempotents {
        #[command(flatten)]
        selector: GroupSelector,
        /// p-local idempotents for this prime
        #[arg(long, conflicts_with = "rational")]
        prime: Option<u64>,
        /// Rational idempotents (one per class)
        #[arg(long)]
        rational: bool,
    },
    /// Marks vector of a Burnside element given as JSON
    Marks {
        /// Element file (schema: {"group": ..., "coeffs": [...]})
        element: PathBuf,
    },
}

#[derive(Subcommand)]
enum CardCommand {
    /// |BG| as a Laurent polynomial in x = |BC_p|
    Bg {
        #[command(flatten)]
        selector: GroupSelector,
        #[arg(long)]
        prime: u64,
    },
    /// |A| for a π-finite space given as JSON
    Space {
        /// Space file (schema: {"group": ..., "homotopy": [...]})
        file: PathBuf,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand)]
enum PosetCommand {
    /// Möbius function on all comparable pairs
    Mobius {
        /// Poset file (schema: {"elements": [...], "covers": [...]})
        file: PathBuf,
    },
}

/// Group selection: a spec file, or a named family.
#[derive(Args)]
struct GroupSelector {
    /// Group spec JSON file
    #[arg(long, conflicts_with_all = ["family", "n"])]
    file: Option<PathBuf>,
    /// Family name: S, A, C, D, GL2
    #[arg(long, requires = "n")]
    family: Option<String>,
    /// Family parameter
    #[arg(long, requires = "family")]
    n: Option<u64>,
}

/// Error with a process exit code attached.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<ambicard_core::Error> for CliError {
    fn from(e: ambicard_core::Error) -> CliError {
        let code = match &e {
            ambicard_core::Error::Argument(_) => 2,
            ambicard_core::Error::Resource(_) => 3,
            ambicard_core::Error::Invariant(_) => 4,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let ctx = commands::Context {
        json: cli.json,
        check: cli.check,
        max_order: cli.max_order,
        cache: cache::CacheConfig {
            dir: cli.cache_dir.clone(),
            enabled: !cli.no_cache,
        },
    };
    match &cli.command {
        Command::Group {
            command: GroupCommand::Info {
                selector,
                marks,
                prime,
            },
        } => commands::group_info(&ctx, selector, *marks, *prime),
        Command::Burnside {
            command:
                BurnsideCommand::Idempotents {
                    selector,
                    prime,
                    rational,
                },
        } => commands::idempotents(&ctx, selector, *prime, *rational),
        Command::Burnside {
            command: BurnsideCommand::Marks { element },
        } => commands::element_marks(&ctx, element),
        Command::Card {
            command: CardCommand::Bg { selector, prime },
        } => commands::card_bg(&ctx, selector, *prime),
        Command::Card {
            command: CardCommand::Space { file, prime },
        } => commands::card_space(&ctx, file, *prime),
        Command::Poset {
            command: PosetCommand::Mobius { file },
        } => commands::poset_mobius(&ctx, file),
    }
}
