//! Manhattan-distance cost estimates for the informed strategies.

use std::fmt;
use std::str::FromStr;

use crate::board::Grid;
use crate::state::State;

/// Anything that can estimate the remaining push cost of a state.
pub trait Heuristic {
    fn estimate(&self, grid: &Grid, state: &State) -> u32;
}

impl<F> Heuristic for F
where
    F: Fn(&Grid, &State) -> u32,
{
    fn estimate(&self, grid: &Grid, state: &State) -> u32 {
        self(grid, state)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HeuristicKind {
    /// k-th box (row-major) paired with k-th goal. Cheap, not admissible.
    #[default]
    PrePaired,
    /// Each box to its closest goal. Admissible and consistent for pushes.
    NearestGoal,
}

impl HeuristicKind {
    pub fn name(self) -> &'static str {
        match self {
            HeuristicKind::PrePaired => "prepaired",
            HeuristicKind::NearestGoal => "nearest",
        }
    }
}

impl Heuristic for HeuristicKind {
    fn estimate(&self, grid: &Grid, state: &State) -> u32 {
        match self {
            HeuristicKind::PrePaired => h_prepaired(grid, state),
            HeuristicKind::NearestGoal => h_nearest_goal(grid, state),
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "prepaired" | "pre-paired" => Ok(HeuristicKind::PrePaired),
            "nearest" | "nearest-goal" => Ok(HeuristicKind::NearestGoal),
            other => Err(format!("unknown heuristic `{other}` (expected prepaired or nearest)")),
        }
    }
}

/// Sum of Manhattan distances after pairing boxes and goals by row-major
/// rank. The pairing is recomputed for every state since boxes carry no
/// identity.
pub fn h_prepaired(grid: &Grid, state: &State) -> u32 {
    state.boxes().iter().zip(grid.goals()).map(|(b, g)| b.manhattan(*g) as u32).sum()
}

pub fn h_nearest_goal(grid: &Grid, state: &State) -> u32 {
    state
        .boxes()
        .iter()
        .map(|b| grid.goals().iter().map(|g| b.manhattan(*g)).min().unwrap_or(0) as u32)
        .sum()
}
