//! Solution checking, LURD expansion and text-frame playback.

use thiserror::Error;

use crate::board::{render, Direction, Grid, Square};
use crate::search::Solution;
use crate::state::{apply_push, box_mask, initial_state, is_goal_state, walk_path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("solution belongs to a different level")]
    GridMismatch,
    #[error("solution does not validate: {0}")]
    InvalidSolution(Verdict),
    #[error("move {index} ({ch:?}) is not legal")]
    IllegalMove { index: usize, ch: char },
}

/// Outcome of [`validate_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// The push with this ordinal cannot be made.
    IllegalStep(usize),
    /// Every push was legal but some box is still off goal.
    NotSolved,
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        self == Verdict::Valid
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::IllegalStep(i) => write!(f, "step {i} is illegal"),
            Verdict::NotSolved => f.write_str("final position is not solved"),
        }
    }
}

pub fn validate_solution(grid: &Grid, solution: &Solution<'_>) -> Result<Verdict, ReplayError> {
    if solution.grid() != grid {
        return Err(ReplayError::GridMismatch);
    }
    let mut state = initial_state(grid);
    for (ordinal, step) in solution.steps().iter().enumerate() {
        match apply_push(grid, &state, step) {
            Ok(next) => state = next,
            Err(_) => return Ok(Verdict::IllegalStep(ordinal)),
        }
    }
    Ok(if is_goal_state(grid, &state) { Verdict::Valid } else { Verdict::NotSolved })
}

/// Expands pushes into LURD notation. Walks between pushes take the shortest
/// route, ties broken Up, Right, Down, Left.
pub fn pushes_to_moves(grid: &Grid, solution: &Solution<'_>) -> Result<String, ReplayError> {
    let verdict = validate_solution(grid, solution)?;
    if !verdict.is_valid() {
        return Err(ReplayError::InvalidSolution(verdict));
    }
    let mut boxes = grid.initial_boxes().to_vec();
    let mut pusher = grid.initial_pusher();
    let mut out = String::new();
    for step in solution.steps() {
        let stand = grid.step(step.box_from, step.dir.opposite()).expect("validated push");
        let mask = box_mask(grid, &boxes);
        let walk = walk_path(grid, &mask, pusher, stand).expect("validated push is reachable");
        out.extend(walk.iter().map(|d| d.walk_char()));
        out.push(step.dir.push_char());
        let slot = boxes.iter_mut().find(|b| **b == step.box_from).expect("validated push");
        *slot = grid.step(step.box_from, step.dir).expect("validated push");
        pusher = step.box_from;
    }
    Ok(out)
}

/// Frames for a solution: the start position followed by one frame per
/// LURD move.
pub fn animate(grid: &Grid, solution: &Solution<'_>) -> Result<Vec<String>, ReplayError> {
    let moves = pushes_to_moves(grid, solution)?;
    play_lurd(grid, &moves)
}

/// Plays a LURD string move by move and returns every frame, starting with
/// the initial position.
pub fn play_lurd(grid: &Grid, lurd: &str) -> Result<Vec<String>, ReplayError> {
    let mut player = MovePlayer::new(grid);
    let mut frames = vec![player.render()];
    for (index, ch) in lurd.chars().filter(|c| !c.is_whitespace()).enumerate() {
        player.play(ch).map_err(|_| ReplayError::IllegalMove { index, ch })?;
        frames.push(player.render());
    }
    Ok(frames)
}

/// A move-level game position.
#[derive(Debug, Clone)]
pub struct MovePlayer<'g> {
    grid: &'g Grid,
    boxes: Vec<Square>,
    pusher: Square,
    pushes: usize,
}

impl<'g> MovePlayer<'g> {
    pub fn new(grid: &'g Grid) -> Self {
        MovePlayer { grid, boxes: grid.initial_boxes().to_vec(), pusher: grid.initial_pusher(), pushes: 0 }
    }

    /// Applies one LURD letter. Lowercase letters must not push a box,
    /// uppercase letters must.
    pub fn play(&mut self, ch: char) -> Result<(), char> {
        let (dir, push) = Direction::from_lurd(ch).ok_or(ch)?;
        self.step(dir, push).then_some(()).ok_or(ch)
    }

    fn step(&mut self, dir: Direction, push: bool) -> bool {
        let Some(next) = self.grid.step(self.pusher, dir).filter(|&s| !self.grid.is_wall(s)) else {
            return false;
        };
        match self.boxes.iter().position(|&b| b == next) {
            None if !push => {}
            Some(i) if push => {
                let Some(ahead) = self.grid.step(next, dir) else { return false };
                if self.grid.is_wall(ahead) || self.boxes.contains(&ahead) {
                    return false;
                }
                self.boxes[i] = ahead;
                self.pushes += 1;
            }
            _ => return false,
        }
        self.pusher = next;
        true
    }

    pub fn pusher(&self) -> Square {
        self.pusher
    }

    pub fn boxes(&self) -> &[Square] {
        &self.boxes
    }

    pub fn pushes(&self) -> usize {
        self.pushes
    }

    pub fn is_solved(&self) -> bool {
        self.boxes.iter().all(|&b| self.grid.is_goal(b))
    }

    pub fn render(&self) -> String {
        render(self.grid, &self.boxes, self.pusher).expect("move player keeps placements legal")
    }
}
