//! A push-based Sokoban solver.
//!
//! Levels are parsed from XSB text into an immutable [`Grid`]. Search runs
//! over pushes rather than single pusher moves, with states identified by the
//! box set and the pusher's reachable region. The strategy suite covers DFS,
//! BFS, two A* variants that differ only in how they break ties between
//! equal-`f` nodes, and IDA*. Solutions can be validated, expanded into LURD
//! notation and played back as text frames, and a benchmark harness runs a
//! strategy-by-level matrix.
//!
//! ```
//! use sokoban_core::{parse_level, solve, StrategyConfig, StrategyKind};
//!
//! let grid = parse_level("#######\n#@  $.#\n#######").unwrap();
//! let (solution, metrics) = solve(&grid, &StrategyConfig::new(StrategyKind::Bfs));
//! assert_eq!(solution.unwrap().len(), 1);
//! assert_eq!(metrics.solution_steps, Some(1));
//! ```

pub mod bench;
pub mod board;
pub mod collection;
pub mod deadlock;
pub mod heuristic;
pub mod replay;
pub mod search;
pub mod state;

pub use board::{parse_level, render, tile_blocks, Direction, Grid, ParseError, Square};
pub use deadlock::{dead_squares, is_freeze_deadlock, DeadSquareMap};
pub use heuristic::{h_nearest_goal, h_prepaired, Heuristic, HeuristicKind};
pub use replay::{animate, play_lurd, pushes_to_moves, validate_solution, Verdict};
pub use search::{solve, solve_with, Metrics, Outcome, Solution, StrategyConfig, StrategyKind};
pub use state::{apply_push, initial_state, is_goal_state, legal_pushes, reachable_region, state_key, State, StateKey, Step};
