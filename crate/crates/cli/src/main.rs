/// `println!` that ignores a closed stdout, so `| head` keeps the exit code.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comstruct::{Mode, SolveOptions};

use input::{Format, GraphInput};

#[derive(Debug, Parser)]
#[command(
    name = "comstruct",
    version,
    about = "Check and search for 2-community structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a partition. Exit 0 if valid, 1 if not, 2 on bad input.
    Check {
        #[command(flatten)]
        graph: GraphInput,
        /// Parts separated by "|", vertices by ",", e.g. "0,1|2,3"
        #[arg(long, short)]
        partition: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
        /// Also require every part to induce a connected subgraph
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search. Exit 0 if found, 1 if none, 3 if the budget ran out.
    Solve {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        search: SearchArgs,
        /// List every split instead of stopping at the first
        #[arg(long)]
        all: bool,
        /// Stop after examining this many splits
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Connected strict split of a tree by edge removal.
    Tree {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Local search from a seed side A, moving one vertex at a time.
    Greedy {
        #[command(flatten)]
        graph: GraphInput,
        /// Vertices of the starting side A, e.g. "0,1,2"
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build, enumerate, or verify members of the no-2CS family.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Classify many graphs from a graph6 file or the internal generator.
    Census(CensusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Relaxed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Relaxed => Mode::Relaxed,
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    mode: ModeArg,
    /// Both sides must induce connected subgraphs
    #[arg(long)]
    connected: bool,
    /// Both sides must have the same size
    #[arg(long)]
    balanced: bool,
}

impl SearchArgs {
    fn options(&self) -> SolveOptions {
        let mut opts = SolveOptions::new(self.mode.into());
        opts.require_connected = self.connected;
        opts.require_balanced = self.balanced;
        opts
    }
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Clique size
    #[arg(long)]
    k: usize,
    #[arg(long)]
    dx: Option<usize>,
    #[arg(long)]
    dy: Option<usize>,
    #[arg(long)]
    o1: Option<usize>,
    #[arg(long)]
    o2: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum FamilyAction {
    /// Build one member and print it with its role map.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        json: bool,
    },
    /// Print every member for a clique size, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        json: bool,
    },
    /// Search members for a relaxed split; exit 1 if any has one.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct CensusArgs {
    /// graph6 file, one graph per line ("-" for stdin)
    #[arg(
        long = "in",
        value_name = "FILE",
        required_unless_present = "generate",
        conflicts_with = "generate"
    )]
    input: Option<std::path::PathBuf>,
    /// Generator orders: "7", "3-7" or "4,5"
    #[arg(long, value_name = "ORDERS")]
    generate: Option<String>,
    /// Count exceptions under the relaxed definition
    #[arg(long)]
    relaxed: bool,
    /// Count graphs lacking a connected split as exceptions
    #[arg(long)]
    connected_required: bool,
    /// Count graphs lacking a balanced split as exceptions
    #[arg(long)]
    balanced: bool,
    /// Per-graph cap on splits examined
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (default: available cores)
    #[arg(long)]
    workers: Option<usize>,
    /// JSON Lines records (default: stdout)
    #[arg(long, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    /// JSON summary (default: a text summary on stderr)
    #[arg(long, value_name = "FILE")]
    summary: Option<std::path::PathBuf>,
    /// Also write the records as CSV
    #[arg(long, value_name = "FILE")]
    csv: Option<std::path::PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            graph,
            partition,
            mode,
            connected,
            json,
        } => commands::check(&graph, &partition, mode.into(), connected, json),
        Command::Solve {
            graph,
            search,
            all,
            budget,
            json,
        } => {
            let mut opts = search.options();
            opts.enumerate_all = all;
            opts.budget = budget;
            commands::solve(&graph, &opts, json)
        }
        Command::Tree { graph, json } => commands::tree(&graph, json),
        Command::Greedy {
            graph,
            seed,
            search,
            json,
        } => commands::greedy(&graph, &seed, &search.options(), json),
        Command::Family { action } => match action {
            FamilyAction::Build {
                params,
                format,
                json,
            } => commands::family_build(&params, format, json),
            FamilyAction::Enumerate { k, format, json } => {
                commands::family_enumerate(k, format, json)
            }
            FamilyAction::Verify { params, json } => commands::family_verify(&params, json),
        },
        Command::Census(args) => commands::census(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
