use std::path::PathBuf;

use clap::Args;
use sokoban_core::{pushes_to_moves, solve, Outcome, StrategyKind};

use super::metrics_report;
use crate::{exit, levels, CliError, SearchOpts, StrategyArg};

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Level file (.xsb, or a multi-level .sok archive).
    level_file: PathBuf,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[command(flatten)]
    search: SearchOpts,
    /// Also print the solution in LURD notation.
    #[arg(long)]
    lurd: bool,
    /// 1-based level index inside an archive.
    #[arg(long, value_name = "N", default_value_t = 1)]
    level: usize,
}

pub fn run(args: &SolveArgs) -> Result<u8, CliError> {
    let level = levels::load_one(&args.level_file, args.level)?;
    let kind = StrategyKind::from(args.strategy);
    let config = args.search.config(kind)?;
    let (solution, metrics) = solve(&level.grid, &config);
    let (headline, code) = match (metrics.outcome, &solution) {
        (Outcome::Solved, Some(sol)) => (format!("Solved in {} push(es)", sol.len()), exit::OK),
        (Outcome::Solved, None) => unreachable!("solved outcome carries a solution"),
        (Outcome::NoSolution, _) => ("No solution".to_owned(), exit::NO_SOLUTION),
        (Outcome::LimitExceeded, _) => ("Limit exceeded".to_owned(), exit::LIMIT),
    };
    println!("{headline}");
    print!("{}", metrics_report(&config.summary(), &metrics, kind.is_informed()));
    if let (true, Some(sol)) = (args.lurd, &solution) {
        let moves = pushes_to_moves(&level.grid, sol).map_err(|e| CliError::Input(e.to_string()))?;
        println!("lurd: {moves}");
    }
    Ok(code)
}
