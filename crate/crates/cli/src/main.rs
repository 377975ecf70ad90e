use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "crystal-rigidity", version, about = "Rigidity of planar frameworks with forced crystallographic symmetry")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "CR_SEED", default_value_t = 1)]
    seed: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide membership in a sparsity family and print a certificate.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Family::Laman)]
        family: Family,
    },
    /// Solve a generic direction network on the graph.
    Realize {
        path: PathBuf,
        /// Direction coordinates are drawn from [-bound, bound].
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Generic rank of the rigidity matrix.
    Rank {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Draw a patch of the lifted framework as SVG.
    Render {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value = "out.svg")]
        out: PathBuf,
    },
    /// Print a random colored graph.
    Gen { k: i64, n: usize, m: usize, color_bound: i64 },
    /// Run the randomized cross-checks.
    Selftest {
        #[arg(value_enum, default_value_t = Scale::Small)]
        scale: Scale,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Laman,
    #[value(name = "22")]
    Gamma22,
    #[value(name = "11")]
    Gamma11,
    #[value(name = "gencone11")]
    GenCone11,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Small,
    Full,
}

/// Exit code and what to print.
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: serde_json::Value,
}

fn read_graph(path: &Path) -> anyhow::Result<crystal_rigidity::colored_graph::ColoredGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    crystal_rigidity::colored_graph::parse_graph(&text).with_context(|| format!("{}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Check { path, family } => Ok(commands::check(&read_graph(path)?, *family)),
        Command::Realize { path, bound } => commands::realize(&read_graph(path)?, seed, *bound),
        Command::Rank { path, samples } => Ok(commands::rank(&read_graph(path)?, seed, *samples)),
        Command::Render { path, radius, out } => commands::render(&read_graph(path)?, seed, *radius, out),
        Command::Gen { k, n, m, color_bound } => commands::gen(*k, *n, *m, *color_bound, seed),
        Command::Selftest { scale } => Ok(commands::selftest(*scale, seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json values serialize"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
