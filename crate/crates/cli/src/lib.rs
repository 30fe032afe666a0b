//! Command-line front end for `zgroupoid`.
//!
//! Every subcommand reads documents (see [`doc`]), calls one library
//! operation and prints either a document or a short text report. Exit codes:
//! 0 for success or a true answer, 1 for a well-formed input that is invalid
//! or answers false, 2 for usage, IO and parse errors.

pub mod commands;
pub mod doc;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "zgroupoid", version, about = "Finite groupoids, relational morphisms and actions")]
pub struct Cli {
    /// Write the resulting document to this path instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a groupoid from a standard construction.
    #[command(subcommand)]
    Build(Build),
    /// Validate any document and summarize it.
    Validate { document: String },
    /// Orbits, isotropy groups and counts of a groupoid.
    Info { groupoid: String },
    /// The full subgroupoid over a set of units.
    Restrict {
        groupoid: String,
        #[arg(required = true)]
        units: Vec<String>,
    },
    /// Disjoint union of two groupoids.
    Union { left: String, right: String },
    /// Cartesian product of two groupoids.
    Product { left: String, right: String },
    /// Transitive components and their product-form decompositions.
    Decompose { groupoid: String },
    #[command(subcommand)]
    Morphism(MorphismCommand),
    #[command(subcommand)]
    Bisections(BisectionsCommand),
    #[command(subcommand)]
    Action(ActionCommand),
    #[command(subcommand)]
    Enum(EnumCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupActionKind {
    /// `i·x = x + i` for a cyclic group.
    Shift,
    Trivial,
    /// The group acting on itself; the points are ignored.
    Regular,
}

#[derive(Debug, Subcommand)]
pub enum Build {
    /// Pair groupoid X².
    Pair {
        points: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Set groupoid: units only.
    Set {
        points: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// A group as a one-unit groupoid. GROUP is zN, sN, klein or trivial.
    Group {
        group: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Group bundle with one fiber per GROUP.
    Bundle {
        #[arg(required = true)]
        groups: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Equivalence-relation groupoid; each block is a comma-separated list.
    Equiv {
        #[arg(required = true)]
        blocks: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// E × G × E.
    ProductForm {
        group: String,
        #[arg(required = true)]
        units: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Transformation groupoid G × X of a group action.
    Transformation {
        group: String,
        points: Vec<String>,
        #[arg(long, value_enum, default_value = "shift")]
        action: GroupActionKind,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MorphismCommand {
    Validate { morphism: String },
    /// The composite K∘H.
    Compose { k: String, h: String },
    Kernel { morphism: String },
    /// Exit 0 if mono; otherwise print the kernel and exit 1.
    Mono { morphism: String },
    /// Exit 0 if every element of the target is hit.
    Surjective { morphism: String },
    /// Look for Ad-witnesses showing the morphism is not epi; exit 1 if none.
    EpiWitness { morphism: String },
    /// Epi-mono factorization.
    Factor {
        morphism: String,
        /// Write the surjective factor here.
        #[arg(long, value_name = "PATH")]
        epi: Option<PathBuf>,
        /// Write the mono factor here.
        #[arg(long, value_name = "PATH")]
        mono: Option<PathBuf>,
    },
    /// One-point orbit and isotropy homomorphism of a morphism into a group.
    ClassifyIntoGroup { morphism: String },
}

#[derive(Debug, Subcommand)]
pub enum BisectionsCommand {
    List { groupoid: String },
    /// The bisection group and its multiplication table.
    Group { groupoid: String },
    /// The inner automorphism Ad_B as a morphism document.
    Ad {
        groupoid: String,
        #[arg(required = true)]
        members: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ActionCommand {
    Validate {
        action: String,
    },
    /// The morphism Γ ⊸ X² of an action.
    ToMorphism {
        action: String,
    },
    /// The action of a morphism into a pair groupoid.
    FromMorphism {
        morphism: String,
    },
    /// The action groupoid Γ ⋉ X.
    Groupoid {
        action: String,
    },
    /// The coset space Γ/G with its left action.
    Coset {
        groupoid: String,
        #[arg(required = true)]
        members: Vec<String>,
    },
    /// The quotient groupoid Γ/G.
    Quotient {
        groupoid: String,
        #[arg(required = true)]
        members: Vec<String>,
    },
    /// Induce an action of GROUPOID from an action of a subgroupoid.
    Induce {
        groupoid: String,
        action: String,
    },
    /// Identify a transitive action with an induced product-form action.
    Classify {
        action: String,
        /// Base point; defaults to the least point.
        #[arg(long)]
        point: Option<String>,
    },
    /// Identify a transitive action with a coset space; SECTION is unit=point.
    Homogeneous {
        action: String,
        #[arg(required = true)]
        section: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EnumCommand {
    Morphisms { source: String, target: String },
    Actions { groupoid: String, points: Vec<String> },
    Bisections { groupoid: String },
}

/// Parses the arguments and runs one command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code.clamp(0, 2) as u8;
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => match outcome.emit(cli.output.as_deref(), out) {
            Ok(()) => outcome.code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
