//! Deadlock detection used to prune hopeless branches.
//!
//! Two sound rules are implemented: static dead squares (a lone box there can
//! never reach a goal) and freeze deadlocks (a box that can move along
//! neither axis, possibly together with neighbouring boxes, while off goal).

use std::collections::VecDeque;

use thiserror::Error;

use crate::board::{Direction, Grid, Square};
use crate::state::State;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeadlockError {
    #[error("no box at {0}")]
    BoxNotPresent(Square),
}

/// Per-square liveness for a lone box. Walls are not part of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadSquareMap {
    width: usize,
    // None for walls
    dead: Vec<Option<bool>>,
}

impl DeadSquareMap {
    /// `Some(true)` if a box on `sq` can never reach a goal, `None` for walls
    /// and squares outside the grid.
    pub fn get(&self, sq: Square) -> Option<bool> {
        if sq.col >= self.width {
            return None;
        }
        self.dead.get(sq.row * self.width + sq.col).copied().flatten()
    }

    #[inline]
    pub fn is_dead(&self, sq: Square) -> bool {
        self.get(sq) == Some(true)
    }

    pub fn dead_squares(&self) -> impl Iterator<Item = Square> + '_ {
        let w = self.width;
        self.dead
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(true))
            .map(move |(i, _)| Square::new(i / w, i % w))
    }
}

/// Backward pull search from every goal. A pull moves the box from `b` to
/// `b + d` and needs both `b + d` and `b + 2d` to be floor, since the pusher
/// walks ahead of the box. Anything never reached is dead.
pub fn dead_squares(grid: &Grid) -> DeadSquareMap {
    let mut live = vec![false; grid.area()];
    let mut queue = VecDeque::new();
    for &g in grid.goals() {
        live[grid.index(g)] = true;
        queue.push_back(g);
    }
    while let Some(b) = queue.pop_front() {
        for dir in Direction::ALL {
            let Some(to) = grid.step(b, dir).filter(|&s| !grid.is_wall(s)) else { continue };
            if grid.step(to, dir).is_none_or(|s| grid.is_wall(s)) {
                continue;
            }
            let i = grid.index(to);
            if !live[i] {
                live[i] = true;
                queue.push_back(to);
            }
        }
    }
    let dead = (0..grid.area())
        .map(|i| {
            let sq = grid.square(i);
            (!grid.is_wall(sq)).then_some(!live[i])
        })
        .collect();
    DeadSquareMap { width: grid.width(), dead }
}

/// Checks whether the box at `just_pushed` is frozen: blocked on both axes by
/// walls or by boxes that are themselves frozen. A frozen cluster only counts
/// as a deadlock if at least one of its boxes is off goal.
pub fn is_freeze_deadlock(grid: &Grid, state: &State, just_pushed: Square) -> Result<bool, DeadlockError> {
    if !state.has_box(just_pushed) {
        return Err(DeadlockError::BoxNotPresent(just_pushed));
    }
    let mut path = Vec::with_capacity(state.boxes().len());
    Ok(frozen(grid, state, just_pushed, &mut path) == Some(true))
}

/// `None` if `b` can still move; otherwise `Some(off_goal)` where `off_goal`
/// tells whether some box in the supporting frozen cluster is off goal.
/// Boxes on the current recursion path are assumed frozen.
fn frozen(grid: &Grid, state: &State, b: Square, path: &mut Vec<Square>) -> Option<bool> {
    path.push(b);
    let result = (|| {
        let vertical = axis_blocked(grid, state, b, [Direction::Up, Direction::Down], path)?;
        let horizontal = axis_blocked(grid, state, b, [Direction::Left, Direction::Right], path)?;
        Some(!grid.is_goal(b) || vertical || horizontal)
    })();
    path.pop();
    result
}

fn axis_blocked(grid: &Grid, state: &State, b: Square, axis: [Direction; 2], path: &mut Vec<Square>) -> Option<bool> {
    let neighbours = axis.map(|d| grid.step(b, d));
    if neighbours.iter().any(|n| n.is_none_or(|s| grid.is_wall(s))) {
        return Some(false);
    }
    for n in neighbours.into_iter().flatten() {
        if !state.has_box(n) {
            continue;
        }
        if path.contains(&n) {
            return Some(false);
        }
        if let Some(off_goal) = frozen(grid, state, n, path) {
            return Some(off_goal);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::parse_level;
    use crate::state::{apply_push, initial_state, Step};

    fn sq(r: usize, c: usize) -> Square {
        Square::new(r, c)
    }

    #[test]
    fn l1_dead_squares() {
        let g = parse_level("#####\n#@$.#\n#####").unwrap();
        let map = dead_squares(&g);
        assert_eq!(map.dead_squares().collect::<Vec<_>>(), vec![sq(1, 1)]);
        assert_eq!(map.get(sq(0, 0)), None);
        assert_eq!(map.get(sq(1, 3)), Some(false));
    }

    #[test]
    fn corner_is_dead() {
        let g = parse_level("#####\n#@$ #\n#  .#\n#####").unwrap();
        let map = dead_squares(&g);
        assert!(map.is_dead(sq(1, 3)));
        assert!(map.is_dead(sq(1, 1)));
        assert!(!map.is_dead(sq(2, 3)));
        for &goal in g.goals() {
            assert!(!map.is_dead(goal));
        }
    }

    #[test]
    fn freeze_in_corner() {
        let g = parse_level("#####\n#@$ #\n#  .#\n#####").unwrap();
        let s = apply_push(&g, &initial_state(&g), &Step::new(sq(1, 2), Direction::Right)).unwrap();
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 3)), Ok(true));
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 2)), Err(DeadlockError::BoxNotPresent(sq(1, 2))));
    }

    #[test]
    fn frozen_on_goal_is_fine() {
        let g = parse_level("#####\n#@$.#\n#####").unwrap();
        let s = apply_push(&g, &initial_state(&g), &Step::new(sq(1, 2), Direction::Right)).unwrap();
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 3)), Ok(false));
    }

    #[test]
    fn mutually_blocking_pair() {
        let g = parse_level("######\n#@$$ #\n#  ..#\n######").unwrap();
        let s = initial_state(&g);
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 2)), Ok(true));
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 3)), Ok(true));
    }

    #[test]
    fn free_box_is_not_frozen() {
        let g = parse_level("######\n#    #\n# $  #\n#@  .#\n######").unwrap();
        let s = initial_state(&g);
        assert_eq!(is_freeze_deadlock(&g, &s, sq(2, 2)), Ok(false));
    }

    #[test]
    fn cluster_with_one_box_off_goal() {
        // box on goal at (1,2) leans on an off-goal box at (1,3) against the top wall
        let g = parse_level("######\n#@*$ #\n#   .#\n######").unwrap();
        let s = initial_state(&g);
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 2)), Ok(true));
        // both on goals: frozen but not a deadlock
        let g = parse_level("######\n#@** #\n#    #\n######").unwrap();
        let s = initial_state(&g);
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 2)), Ok(false));
    }

    #[test]
    fn box_free_along_one_axis() {
        // wall above, but left and right are open floor
        let g = parse_level("#######\n# @$  #\n#   . #\n#######").unwrap();
        let s = initial_state(&g);
        assert_eq!(is_freeze_deadlock(&g, &s, sq(1, 3)), Ok(false));
    }
}
