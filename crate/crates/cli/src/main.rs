mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dirsat::dspace::{MorphismMode, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "dirsat", version, about = "Exact checks on piecewise-linear directed spaces")]
struct Cli {
    /// Enumeration budget for generator searches.
    #[arg(long, global = true, env = "DIRSAT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Expected outcome; repeatable. Lines that disagree fail.
    #[arg(long, global = true, value_enum)]
    expect: Vec<Expect>,

    /// Exit 0 even when some verdict is only budget-qualified.
    #[arg(long, global = true)]
    allow_budget: bool,

    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Directed,
    NotDirected,
    Weakly,
    NotWeakly,
    Holds,
    Fails,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Path,
    Function,
}

#[derive(Subcommand)]
enum Command {
    /// Directed and weakly directed verdicts for every path in a path file.
    CheckPath {
        space: PathBuf,
        paths: PathBuf,
        /// Only check the path with this label.
        #[arg(long)]
        path: Option<String>,
    },
    /// Whether a PL map sends the directed corpus paths to directed paths.
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        paths: PathBuf,
        #[arg(long, value_enum, default_value = "path")]
        mode: Mode,
    },
    /// Writes the sheaf-presented saturation of a space.
    Saturate { space: PathBuf, out: PathBuf },
    /// Constant, concatenation and reparameterization closure on a corpus.
    Axioms {
        space: PathBuf,
        paths: PathBuf,
        /// Reparameterizations as a path file over euclidean(1).
        #[arg(long)]
        reparams: Option<PathBuf>,
    },
    /// Writes the product of two spaces.
    Product {
        left: PathBuf,
        right: PathBuf,
        out: PathBuf,
        /// Also check these paths in the product.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Writes the reversed space.
    Reversor {
        space: PathBuf,
        out: PathBuf,
        /// Also check these paths in the reversed space.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Directedness of a bi-parameter grid map, directly and by slices.
    Biparam { space: PathBuf, grid: PathBuf },
    /// Lists, describes, verifies or exports the built-in fixtures.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        verify: bool,
        /// Write space, path and expectation files into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

pub struct Settings {
    pub budget: usize,
    pub expect: Vec<Expect>,
    pub allow_budget: bool,
    pub json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        budget: cli.budget,
        expect: cli.expect,
        allow_budget: cli.allow_budget,
        json: cli.json,
    };
    let result = match cli.command {
        Command::CheckPath { space, paths, path } => commands::check_path(&settings, &space, &paths, path.as_deref()),
        Command::CheckMorphism {
            source,
            target,
            map,
            paths,
            mode,
        } => {
            let mode = match mode {
                Mode::Path => MorphismMode::Path,
                Mode::Function => MorphismMode::Function,
            };
            commands::check_morphism(&settings, &source, &target, &map, &paths, mode)
        }
        Command::Saturate { space, out } => commands::saturate(&settings, &space, &out),
        Command::Axioms { space, paths, reparams } => commands::axioms(&settings, &space, &paths, reparams.as_deref()),
        Command::Product {
            left,
            right,
            out,
            check,
        } => commands::product(&settings, &left, &right, &out, check.as_deref()),
        Command::Reversor { space, out, check } => commands::reversor(&settings, &space, &out, check.as_deref()),
        Command::Biparam { space, grid } => commands::biparam(&settings, &space, &grid),
        Command::Catalog { name, verify, export } => {
            commands::catalog(&settings, name.as_deref(), verify, export.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
