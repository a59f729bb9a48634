//! `sokoban-lab`: solve, benchmark, replay and validate Sokoban levels.

mod commands;
mod levels;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sokoban_core::{HeuristicKind, StrategyConfig, StrategyKind};

/// Exit statuses shared by all subcommands.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const NO_SOLUTION: u8 = 2;
    pub const LIMIT: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const FILE: u8 = 66;
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    File(PathBuf, std::io::Error),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::File(..) => exit::FILE,
            CliError::Input(_) => exit::INPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Input(msg) => f.write_str(msg),
            CliError::File(path, err) => write!(f, "{}: {err}", path.display()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sokoban-lab", version, about = "Push-based Sokoban solver and strategy benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one level and print the outcome with search metrics.
    Solve(commands::solve::SolveArgs),
    /// Run a strategy-by-level matrix and print comparison tables.
    Bench(commands::bench::BenchArgs),
    /// Play a solution back as text frames.
    Replay(commands::replay::ReplayArgs),
    /// Check that a level parses and report on it.
    Validate(commands::validate::ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Dfs,
    Bfs,
    DfAstar,
    BfAstar,
    Idastar,
}

impl From<StrategyArg> for StrategyKind {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Dfs => StrategyKind::Dfs,
            StrategyArg::Bfs => StrategyKind::Bfs,
            StrategyArg::DfAstar => StrategyKind::DfAStar,
            StrategyArg::BfAstar => StrategyKind::BfAStar,
            StrategyArg::Idastar => StrategyKind::IdaStar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeuristicArg {
    Prepaired,
    Nearest,
}

impl From<HeuristicArg> for HeuristicKind {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::Prepaired => HeuristicKind::PrePaired,
            HeuristicArg::Nearest => HeuristicKind::NearestGoal,
        }
    }
}

/// Search options shared by `solve`, `bench` and `replay --from-solve`.
#[derive(Debug, Clone, Args)]
pub struct SearchOpts {
    /// Heuristic for the informed strategies.
    #[arg(long, value_enum, default_value = "prepaired")]
    heuristic: HeuristicArg,
    /// Disable dead-square and freeze-deadlock pruning.
    #[arg(long)]
    no_pruning: bool,
    /// Maximum expanded nodes per solve (0 = unlimited).
    #[arg(long, value_name = "N", default_value_t = sokoban_core::search::DEFAULT_NODE_LIMIT)]
    node_limit: u64,
    /// Wall-clock limit per solve in seconds (0 = unlimited).
    #[arg(long, value_name = "SECS", env = "SOKOBAN_LAB_TIME_LIMIT",
          default_value_t = sokoban_core::search::DEFAULT_TIME_LIMIT.as_secs_f64())]
    time_limit: f64,
}

impl SearchOpts {
    pub fn config(&self, kind: StrategyKind) -> Result<StrategyConfig, CliError> {
        if !self.time_limit.is_finite() || self.time_limit < 0.0 {
            return Err(CliError::Usage(format!("invalid time limit {}", self.time_limit)));
        }
        Ok(StrategyConfig::new(kind)
            .with_heuristic(self.heuristic.into())
            .with_pruning(!self.no_pruning)
            .with_node_limit((self.node_limit > 0).then_some(self.node_limit))
            .with_time_limit((self.time_limit > 0.0).then(|| Duration::from_secs_f64(self.time_limit))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::solve::run(&args),
        Command::Bench(args) => commands::bench::run(&args),
        Command::Replay(args) => commands::replay::run(&args),
        Command::Validate(args) => commands::validate::run(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
