//! Strategy-by-level benchmark matrix and its table output.
//!
//! Cells of the matrix are independent solves over shared grids. With the
//! `parallel` feature they run on a rayon pool; otherwise, or with
//! [`Execution::Sequential`], one after another. Either way records come
//! back level-major in the order the strategies were given.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::board::Grid;
use crate::search::{solve, Metrics, Outcome, StrategyConfig};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no levels to benchmark")]
    NoLevels,
    #[error("no strategies to benchmark")]
    NoStrategies,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedLevel {
    pub id: String,
    pub grid: Grid,
}

impl NamedLevel {
    pub fn new(id: impl Into<String>, grid: Grid) -> Self {
        NamedLevel { id: id.into(), grid }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub level_id: String,
    /// Label from [`StrategyConfig::summary`].
    pub strategy: String,
    pub config: StrategyConfig,
    pub metrics: Metrics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `None` uses rayon's global pool. Falls back to sequential execution
    /// when built without the `parallel` feature.
    Parallel { workers: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

pub fn run_matrix(levels: &[NamedLevel], strategies: &[StrategyConfig]) -> Result<Vec<BenchRecord>, BenchError> {
    run_matrix_with(levels, strategies, Execution::default())
}

pub fn run_matrix_with(
    levels: &[NamedLevel],
    strategies: &[StrategyConfig],
    execution: Execution,
) -> Result<Vec<BenchRecord>, BenchError> {
    if levels.is_empty() {
        return Err(BenchError::NoLevels);
    }
    if strategies.is_empty() {
        return Err(BenchError::NoStrategies);
    }
    let cells: Vec<(&NamedLevel, &StrategyConfig)> =
        levels.iter().flat_map(|l| strategies.iter().map(move |s| (l, s))).collect();
    match execution {
        Execution::Sequential => Ok(cells.into_iter().map(run_cell).collect()),
        Execution::Parallel { workers } => run_parallel(&cells, workers),
    }
}

fn run_cell((level, config): (&NamedLevel, &StrategyConfig)) -> BenchRecord {
    let (_, metrics) = solve(&level.grid, config);
    BenchRecord { level_id: level.id.clone(), strategy: config.summary(), config: *config, metrics }
}

#[cfg(feature = "parallel")]
fn run_parallel(cells: &[(&NamedLevel, &StrategyConfig)], workers: Option<usize>) -> Result<Vec<BenchRecord>, BenchError> {
    use rayon::prelude::*;

    let job = || cells.par_iter().map(|&c| run_cell(c)).collect();
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| BenchError::Pool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(cells: &[(&NamedLevel, &StrategyConfig)], _workers: Option<usize>) -> Result<Vec<BenchRecord>, BenchError> {
    Ok(cells.iter().map(|&c| run_cell(c)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableStyle {
    #[default]
    Markdown,
    Csv,
}

/// One table row as serialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "AI Strategy")]
    pub strategy: String,
    #[serde(rename = "Solution Steps (#)", serialize_with = "ser_steps", deserialize_with = "de_steps")]
    pub steps: Option<usize>,
    /// Seconds, rounded to two decimals.
    #[serde(rename = "Elapsed Time (s)", serialize_with = "ser_elapsed")]
    pub elapsed: f64,
    #[serde(rename = "Nodes Expanded")]
    pub nodes: u64,
}

pub const COLUMNS: [&str; 4] = ["AI Strategy", "Solution Steps (#)", "Elapsed Time (s)", "Nodes Expanded"];

impl TableRow {
    pub fn new(strategy: impl Into<String>, steps: Option<usize>, elapsed_secs: f64, nodes: u64) -> Self {
        TableRow { strategy: strategy.into(), steps, elapsed: (elapsed_secs * 100.0).round() / 100.0, nodes }
    }
}

impl From<&BenchRecord> for TableRow {
    fn from(r: &BenchRecord) -> Self {
        let steps = match r.metrics.outcome {
            Outcome::Solved => r.metrics.solution_steps,
            _ => None,
        };
        TableRow::new(r.strategy.clone(), steps, r.metrics.elapsed_secs(), r.metrics.nodes_expanded)
    }
}

fn ser_steps<S: Serializer>(steps: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    match steps {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_str("-"),
    }
}

fn de_steps<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
    let raw = String::deserialize(d)?;
    match raw.trim() {
        "-" => Ok(None),
        n => n.parse().map(Some).map_err(serde::de::Error::custom),
    }
}

fn ser_elapsed<S: Serializer>(secs: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{secs:.2}"))
}

/// Groups rows by level, keeping first-appearance order.
fn group_by_level(records: &[BenchRecord]) -> Vec<(&str, Vec<TableRow>)> {
    let mut groups: Vec<(&str, Vec<TableRow>)> = Vec::new();
    for r in records {
        match groups.iter_mut().find(|(id, _)| *id == r.level_id) {
            Some((_, rows)) => rows.push(r.into()),
            None => groups.push((&r.level_id, vec![r.into()])),
        }
    }
    groups
}

/// Renders one table per level. With more than one level each table is
/// preceded by a heading (markdown) or a `# level` comment line (CSV), and
/// tables are separated by a blank line.
pub fn format_table(records: &[BenchRecord], style: TableStyle) -> String {
    let groups = group_by_level(records);
    let titled = groups.len() > 1;
    let tables: Vec<String> = groups
        .iter()
        .map(|(id, rows)| {
            let title = titled.then_some(*id);
            match style {
                TableStyle::Markdown => markdown_table(title, rows),
                TableStyle::Csv => csv_table(title, rows),
            }
        })
        .collect();
    tables.join("\n")
}

/// Formats already-built rows as a single table.
pub fn format_rows(rows: &[TableRow], style: TableStyle) -> String {
    match style {
        TableStyle::Markdown => markdown_table(None, rows),
        TableStyle::Csv => csv_table(None, rows),
    }
}

fn markdown_table(title: Option<&str>, rows: &[TableRow]) -> String {
    let mut out = String::new();
    if let Some(t) = title {
        out.push_str(&format!("### {t}\n\n"));
    }
    out.push_str(&format!("| {} |\n", COLUMNS.join(" | ")));
    out.push_str("|---|---:|---:|---:|\n");
    for r in rows {
        let steps = r.steps.map_or_else(|| "-".to_string(), |n| n.to_string());
        out.push_str(&format!("| {} | {} | {:.2} | {} |\n", r.strategy, steps, r.elapsed, r.nodes));
    }
    out
}

fn csv_table(title: Option<&str>, rows: &[TableRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in rows {
        writer.serialize(r).expect("writing to memory");
    }
    let body = String::from_utf8(writer.into_inner().expect("writing to memory")).expect("csv output is utf-8");
    match title {
        Some(t) => format!("# {t}\n{body}"),
        None => body,
    }
}

/// Reads CSV produced by [`format_table`] back into `(level, rows)` groups.
/// Untitled tables get an empty level id.
pub fn parse_csv(text: &str) -> Result<Vec<(String, Vec<TableRow>)>, csv::Error> {
    let mut out = Vec::new();
    for chunk in text.split("\n\n").filter(|c| !c.trim().is_empty()) {
        let level = chunk
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .unwrap_or_default()
            .to_string();
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(chunk.as_bytes());
        let rows = reader.deserialize().collect::<Result<Vec<TableRow>, _>>()?;
        out.push((level, rows));
    }
    Ok(out)
}
