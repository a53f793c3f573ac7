//! Command-line front end: `.gea` documents in, text or JSON reports out.
//!
//! Exit codes: 0 when everything holds, 1 when a violation or
//! counterexample is reported, 2 on input errors.

pub mod commands;
pub mod document;
pub mod error;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use gea_catalog::DEFAULT_LIMIT;

pub use document::{parse_gea_file, GeaDocument};
pub use error::{CliError, Result};

use commands::{Outcome, VerifyArgs};

#[derive(Debug, Parser)]
#[command(name = "gea", version, about = "Finite-model toolkit for generalized effect algebras")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms and print order and structure facts.
    Check { file: PathBuf },
    /// Print the exocenter, the center and their cross-checks.
    Exocenter { file: PathBuf },
    /// Print the hull system induced by a relation, or the exocentral cover.
    Hull {
        file: PathBuf,
        #[arg(long)]
        relation: Option<String>,
    },
    /// Check the SK axioms and the DER condition for a relation.
    Sk {
        file: PathBuf,
        #[arg(long)]
        relation: String,
    },
    /// Type decomposition for a dimension equivalence relation.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        relation: String,
    },
    /// Enumerate all models up to a size into a catalog file.
    Catalog {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        /// Size cap; at most 8.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Run the property suite over all models up to a size.
    Verify {
        #[arg(long, required_unless_present = "list")]
        max_size: Option<usize>,
        /// Comma-separated property names.
        #[arg(long, value_delimiter = ',')]
        theorems: Option<Vec<String>>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Negate one property, to confirm the suite can fail.
        #[arg(long)]
        invert: Option<String>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        /// List the registered properties and exit.
        #[arg(long)]
        list: bool,
    },
    /// Search the catalog for the first model satisfying a predicate.
    Search {
        #[arg(long)]
        property: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Check { file } => commands::check(&file),
        Command::Exocenter { file } => commands::exocenter_cmd(&file),
        Command::Hull { file, relation } => commands::hull(&file, relation.as_deref()),
        Command::Sk { file, relation } => commands::sk(&file, &relation),
        Command::Decompose { file, relation } => commands::decompose(&file, &relation),
        Command::Catalog {
            max_size,
            out,
            jobs,
            limit,
        } => commands::catalog(max_size, &out, jobs, limit),
        Command::Verify { list: true, .. } => Ok(commands::list_properties()),
        Command::Verify {
            max_size,
            theorems,
            jobs,
            invert,
            limit,
            ..
        } => commands::verify(VerifyArgs {
            max_n: max_size.expect("clap requires --max-size"),
            theorems,
            jobs,
            invert,
            limit,
        }),
        Command::Search {
            property,
            max_size,
            jobs,
            limit,
        } => commands::search(&property, max_size, jobs, limit),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Execution { code, stdout, stderr };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(out) => {
            let stdout = if json {
                let mut s = serde_json::to_string_pretty(&out.to_json()).expect("reports serialize");
                s.push('\n');
                s
            } else {
                out.text.clone()
            };
            Execution {
                code: i32::from(out.violation),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Execution {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
