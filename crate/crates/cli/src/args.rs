use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use perfrank::Period;

#[derive(Debug, Parser)]
#[command(
    name = "perfrank",
    version,
    about = "Rank functions on perfect complexes over finite-dimensional algebras"
)]
pub struct Cli {
    /// Workspace JSON file; the bundled two-vertex example is used when absent.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    /// Coefficient period: a positive integer or `inf`.
    #[arg(long, global = true)]
    pub period: Option<Period>,
    /// Tor depth for resolutions.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ranks of objects, morphisms, modules and idempotent summands.
    #[command(subcommand)]
    Rank(RankCommand),
    /// Fullness of a morphism or kernel membership of an object.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        hom: String,
    },
    /// Seeded axiom suites for the rank function of a homomorphism.
    Axioms {
        #[arg(long)]
        hom: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Dimensions of Tor_i(M, N) for a right module M and a left module N.
    Tor {
        /// A right module.
        first: String,
        /// A left module.
        second: String,
    },
    /// Whether a homomorphism into a matrix ring is a homological epimorphism.
    Epicheck {
        #[arg(long)]
        hom: String,
    },
    /// Evidence for or against the rank function being localizing.
    Localizing {
        #[arg(long)]
        hom: String,
    },
    /// A square submatrix realizing the rank of a matrix.
    Submatrix {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        hom: String,
    },
    /// Run a bundled worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

#[derive(Debug, Subcommand)]
pub enum RankCommand {
    /// Rank of a complex, or of an idempotent summand given by name.
    Object {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        hom: String,
    },
    Morphism {
        #[arg(long)]
        map: String,
        #[arg(long)]
        hom: String,
    },
    /// Sylvester rank of a right module.
    Module {
        #[arg(long)]
        module: String,
        #[arg(long)]
        hom: String,
    },
    Idempotent {
        #[arg(long)]
        idempotent: String,
        #[arg(long)]
        hom: String,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    #[arg(long)]
    pub complex: Option<String>,
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub idempotent: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rank,
    Sylvester,
    Lemmas,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    SmallexampleM2,
    SmallexampleAug,
    Fiedorowicz,
    Dualnumbers,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rank(RankCommand::Object { .. }) => "rank object",
            Command::Rank(RankCommand::Morphism { .. }) => "rank morphism",
            Command::Rank(RankCommand::Module { .. }) => "rank module",
            Command::Rank(RankCommand::Idempotent { .. }) => "rank idempotent",
            Command::Classify { .. } => "classify",
            Command::Axioms { .. } => "axioms",
            Command::Tor { .. } => "tor",
            Command::Epicheck { .. } => "epicheck",
            Command::Localizing { .. } => "localizing",
            Command::Submatrix { .. } => "submatrix",
            Command::Example { .. } => "example",
        }
    }
}
