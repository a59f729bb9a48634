use std::path::PathBuf;

use clap::{Args, ValueEnum};
use sokoban_core::bench::{format_table, run_matrix_with, Execution, TableStyle};
use sokoban_core::{HeuristicKind, StrategyKind};

use crate::{levels, CliError, SearchOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Markdown,
    Csv,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Level file, archive or directory of level files.
    path: PathBuf,
    /// Comma-separated strategies; `name:heuristic` overrides --heuristic
    /// for one entry, e.g. `bfs,df-astar,bf-astar:nearest`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_entry)]
    strategies: Vec<(StrategyKind, Option<HeuristicKind>)>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Worker threads; defaults to one per core.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    #[command(flatten)]
    search: SearchOpts,
}

fn parse_entry(s: &str) -> Result<(StrategyKind, Option<HeuristicKind>), String> {
    let (name, h) = match s.split_once(':') {
        Some((n, h)) => (n, Some(h.parse::<HeuristicKind>().map_err(|e| e.to_string())?)),
        None => (s, None),
    };
    let kind = name.trim().parse::<StrategyKind>().map_err(|e| e.to_string())?;
    Ok((kind, h))
}

pub fn run(args: &BenchArgs) -> Result<u8, CliError> {
    let levels = levels::load_path(&args.path)?;
    let configs = args
        .strategies
        .iter()
        .map(|&(kind, h)| {
            let config = args.search.config(kind)?;
            Ok(match h {
                Some(h) => config.with_heuristic(h),
                None => config,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let execution = Execution::Parallel { workers: args.workers.map(usize::from) };
    let records = run_matrix_with(&levels, &configs, execution).map_err(|e| CliError::Input(e.to_string()))?;
    let style = match args.format {
        FormatArg::Markdown => TableStyle::Markdown,
        FormatArg::Csv => TableStyle::Csv,
    };
    print!("{}", format_table(&records, style));
    Ok(crate::exit::OK)
}
