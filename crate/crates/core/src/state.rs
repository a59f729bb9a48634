//! Push-level search states and transition mechanics.
//!
//! A [`State`] is a box configuration plus the pusher's reachable region,
//! represented by the row-major-smallest square of that region. Two
//! positions that differ only by where the pusher is standing inside the same
//! region are the same state.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::board::{check_placement, BoardError, Direction, Grid, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("pusher cannot start at {0}: it is a wall, a box or off the board")]
    IllegalStart(Square),
    #[error("expected {expected} boxes, got {got}")]
    BoxCount { expected: usize, got: usize },
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("push of box at {box_from} {dir:?} is not legal here")]
    IllegalPush { box_from: Square, dir: Direction },
}

/// One push: the box standing on `box_from` moves one square in `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    /// Ordinal inside a solution; zero for free-standing steps.
    pub id: usize,
    pub box_from: Square,
    pub dir: Direction,
}

impl Step {
    pub fn new(box_from: Square, dir: Direction) -> Self {
        Step { id: 0, box_from, dir }
    }

    /// The same push, ignoring the ordinal.
    pub fn same_push(&self, other: &Step) -> bool {
        self.box_from == other.box_from && self.dir == other.dir
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    boxes: Vec<Square>,
    pusher_norm: Square,
}

/// Canonical, compact identity of a [`State`]: box cell indices followed by
/// the normalized pusher cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Box<[u32]>);

impl State {
    /// Builds a state from an arbitrary legal placement, normalizing the
    /// pusher to its region minimum.
    pub fn new(grid: &Grid, boxes: &[Square], pusher: Square) -> Result<State, StateError> {
        if boxes.len() != grid.goals().len() {
            return Err(StateError::BoxCount { expected: grid.goals().len(), got: boxes.len() });
        }
        if !grid.is_floor(pusher) || boxes.contains(&pusher) {
            return Err(StateError::IllegalStart(pusher));
        }
        check_placement(grid, boxes, pusher)?;
        let mut boxes = boxes.to_vec();
        boxes.sort_unstable();
        let mask = box_mask(grid, &boxes);
        let region = Region::flood(grid, &mask, pusher);
        Ok(State { boxes, pusher_norm: grid.square(region.min) })
    }

    /// Box squares, sorted row-major.
    pub fn boxes(&self) -> &[Square] {
        &self.boxes
    }

    pub fn pusher_norm(&self) -> Square {
        self.pusher_norm
    }

    pub fn has_box(&self, sq: Square) -> bool {
        self.boxes.binary_search(&sq).is_ok()
    }
}

pub fn initial_state(grid: &Grid) -> State {
    State::new(grid, grid.initial_boxes(), grid.initial_pusher()).expect("parsed grids hold a legal placement")
}

pub fn state_key(grid: &Grid, state: &State) -> StateKey {
    let cells = state
        .boxes
        .iter()
        .chain(std::iter::once(&state.pusher_norm))
        .map(|&sq| grid.index(sq) as u32)
        .collect();
    StateKey(cells)
}

pub fn is_goal_state(grid: &Grid, state: &State) -> bool {
    // both lists are sorted row-major
    state.boxes == grid.goals()
}

/// Squares the pusher can walk to from `from` with 4-connectivity, treating
/// walls and boxes as obstacles.
pub fn reachable_region(grid: &Grid, boxes: &[Square], from: Square) -> Result<BTreeSet<Square>, StateError> {
    if !grid.is_floor(from) || boxes.contains(&from) {
        return Err(StateError::IllegalStart(from));
    }
    for &b in boxes {
        if !grid.contains(b) {
            return Err(BoardError::OutOfBounds(b).into());
        }
    }
    let region = Region::flood(grid, &box_mask(grid, boxes), from);
    Ok(region.squares(grid).collect())
}

/// All legal pushes from `state`, ordered by box (row-major) then direction
/// (Up, Right, Down, Left).
pub fn legal_pushes(grid: &Grid, state: &State) -> Vec<Step> {
    let mask = box_mask(grid, &state.boxes);
    let region = Region::flood(grid, &mask, state.pusher_norm);
    pushes_in(grid, state, &mask, &region).map(|(step, _)| step).collect()
}

/// Applies a push, failing if it is not legal in `state`.
pub fn apply_push(grid: &Grid, state: &State, step: &Step) -> Result<State, StateError> {
    let illegal = || StateError::IllegalPush { box_from: step.box_from, dir: step.dir };
    if !grid.contains(step.box_from) || !state.has_box(step.box_from) {
        return Err(illegal());
    }
    let mask = box_mask(grid, &state.boxes);
    let region = Region::flood(grid, &mask, state.pusher_norm);
    let dest = push_target(grid, &mask, &region, step.box_from, step.dir).ok_or_else(illegal)?;
    Ok(make_child(grid, state, mask, step.box_from, dest))
}

/// Every legal push together with the state it leads to, in the same order
/// as [`legal_pushes`]. Shares one region computation across all pushes.
pub fn successors(grid: &Grid, state: &State) -> Vec<(Step, State)> {
    let mask = box_mask(grid, &state.boxes);
    let region = Region::flood(grid, &mask, state.pusher_norm);
    pushes_in(grid, state, &mask, &region)
        .map(|(step, dest)| (step, make_child(grid, state, mask.clone(), step.box_from, dest)))
        .collect()
}

fn pushes_in<'a>(
    grid: &'a Grid,
    state: &'a State,
    mask: &'a [bool],
    region: &'a Region,
) -> impl Iterator<Item = (Step, Square)> + 'a {
    state.boxes.iter().flat_map(move |&b| {
        Direction::ALL
            .into_iter()
            .filter_map(move |dir| push_target(grid, mask, region, b, dir).map(|dest| (Step::new(b, dir), dest)))
    })
}

/// Destination of pushing the box at `b` in `dir`, if the pusher can stand
/// behind it and the square ahead is free.
fn push_target(grid: &Grid, mask: &[bool], region: &Region, b: Square, dir: Direction) -> Option<Square> {
    let dest = grid.step(b, dir)?;
    let stand = grid.step(b, dir.opposite())?;
    let di = grid.index(dest);
    if grid.is_wall(dest) || mask[di] || !region.mask[grid.index(stand)] {
        return None;
    }
    Some(dest)
}

fn make_child(grid: &Grid, parent: &State, mut mask: Vec<bool>, from: Square, dest: Square) -> State {
    mask[grid.index(from)] = false;
    mask[grid.index(dest)] = true;
    let mut boxes = parent.boxes.clone();
    let pos = boxes.binary_search(&from).expect("pushed box present");
    boxes.remove(pos);
    let ins = boxes.binary_search(&dest).unwrap_err();
    boxes.insert(ins, dest);
    let region = Region::flood(grid, &mask, from);
    State { boxes, pusher_norm: grid.square(region.min) }
}

pub(crate) fn box_mask(grid: &Grid, boxes: &[Square]) -> Vec<bool> {
    let mut mask = vec![false; grid.area()];
    for &b in boxes {
        mask[grid.index(b)] = true;
    }
    mask
}

/// A flood-filled pusher region as a cell mask plus its smallest cell.
pub(crate) struct Region {
    pub(crate) mask: Vec<bool>,
    pub(crate) min: usize,
}

impl Region {
    pub(crate) fn flood(grid: &Grid, boxes: &[bool], from: Square) -> Region {
        let start = grid.index(from);
        let mut mask = vec![false; grid.area()];
        mask[start] = true;
        let mut min = start;
        let mut stack = vec![from];
        while let Some(sq) = stack.pop() {
            for dir in Direction::ALL {
                let Some(n) = grid.step(sq, dir) else { continue };
                let i = grid.index(n);
                if !mask[i] && !boxes[i] && !grid.is_wall(n) {
                    mask[i] = true;
                    min = min.min(i);
                    stack.push(n);
                }
            }
        }
        Region { mask, min }
    }

    pub(crate) fn squares<'a>(&'a self, grid: &'a Grid) -> impl Iterator<Item = Square> + 'a {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| grid.square(i))
    }
}

/// Shortest walk inside the region from `from` to `to`, BFS with neighbours
/// tried in Up, Right, Down, Left order so ties resolve deterministically.
pub(crate) fn walk_path(grid: &Grid, boxes: &[bool], from: Square, to: Square) -> Option<Vec<Direction>> {
    let mut parent: Vec<Option<(usize, Direction)>> = vec![None; grid.area()];
    let start = grid.index(from);
    let goal = grid.index(to);
    let mut seen = vec![false; grid.area()];
    seen[start] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(sq) = queue.pop_front() {
        if grid.index(sq) == goal {
            break;
        }
        for dir in Direction::ALL {
            let Some(n) = grid.step(sq, dir) else { continue };
            let i = grid.index(n);
            if !seen[i] && !boxes[i] && !grid.is_wall(n) {
                seen[i] = true;
                parent[i] = Some((grid.index(sq), dir));
                queue.push_back(n);
            }
        }
    }
    if !seen[goal] {
        return None;
    }
    let mut path = Vec::new();
    let mut at = goal;
    while let Some((prev, dir)) = parent[at] {
        path.push(dir);
        at = prev;
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::parse_level;

    const L1: &str = "#####\n#@$.#\n#####";
    const L3: &str = "#######\n#@  $.#\n#######";

    fn sq(r: usize, c: usize) -> Square {
        Square::new(r, c)
    }

    #[test]
    fn initial_states() {
        let g = parse_level(L1).unwrap();
        let s = initial_state(&g);
        assert_eq!(s.boxes(), &[sq(1, 2)]);
        assert_eq!(s.pusher_norm(), sq(1, 1));

        let g3 = parse_level(L3).unwrap();
        let s3 = initial_state(&g3);
        assert_eq!(s3.boxes(), &[sq(1, 4)]);
        assert_eq!(s3.pusher_norm(), sq(1, 1));

        let solved = parse_level("####\n#@*#\n####").unwrap();
        let s = initial_state(&solved);
        assert_eq!(s.boxes(), &[sq(1, 2)]);
        assert_eq!(s.pusher_norm(), sq(1, 1));
        assert!(is_goal_state(&solved, &s));
    }

    #[test]
    fn regions() {
        let g = parse_level(L1).unwrap();
        assert_eq!(reachable_region(&g, &[sq(1, 2)], sq(1, 1)).unwrap(), BTreeSet::from([sq(1, 1)]));
        assert_eq!(reachable_region(&g, &[sq(1, 3)], sq(1, 2)).unwrap(), BTreeSet::from([sq(1, 1), sq(1, 2)]));
        let g3 = parse_level(L3).unwrap();
        assert_eq!(
            reachable_region(&g3, &[sq(1, 4)], sq(1, 3)).unwrap(),
            BTreeSet::from([sq(1, 1), sq(1, 2), sq(1, 3)])
        );
        assert_eq!(reachable_region(&g, &[sq(1, 2)], sq(1, 2)), Err(StateError::IllegalStart(sq(1, 2))));
        assert_eq!(reachable_region(&g, &[sq(1, 2)], sq(0, 0)), Err(StateError::IllegalStart(sq(0, 0))));
    }

    #[test]
    fn push_generation() {
        let g = parse_level(L1).unwrap();
        assert_eq!(legal_pushes(&g, &initial_state(&g)), vec![Step::new(sq(1, 2), Direction::Right)]);
        let solved = parse_level("####\n#@*#\n####").unwrap();
        assert!(legal_pushes(&solved, &initial_state(&solved)).is_empty());
        let g3 = parse_level(L3).unwrap();
        assert_eq!(legal_pushes(&g3, &initial_state(&g3)), vec![Step::new(sq(1, 4), Direction::Right)]);
    }

    #[test]
    fn applying_pushes() {
        let g = parse_level(L1).unwrap();
        let s = initial_state(&g);
        let next = apply_push(&g, &s, &Step::new(sq(1, 2), Direction::Right)).unwrap();
        assert_eq!(next.boxes(), &[sq(1, 3)]);
        assert_eq!(next.pusher_norm(), sq(1, 1));
        assert!(is_goal_state(&g, &next));
        assert_eq!(
            apply_push(&g, &s, &Step::new(sq(1, 2), Direction::Left)),
            Err(StateError::IllegalPush { box_from: sq(1, 2), dir: Direction::Left })
        );
        assert!(apply_push(&g, &s, &Step::new(sq(1, 1), Direction::Right)).is_err());

        let g3 = parse_level(L3).unwrap();
        let n3 = apply_push(&g3, &initial_state(&g3), &Step::new(sq(1, 4), Direction::Right)).unwrap();
        assert_eq!(n3.boxes(), &[sq(1, 5)]);
        assert_eq!(n3.pusher_norm(), sq(1, 1));
    }

    #[test]
    fn goal_test_on_partial_cover() {
        let g = parse_level("#######\n#@$$..#\n#######").unwrap();
        let s = State::new(&g, &[sq(1, 4), sq(1, 2)], sq(1, 1)).unwrap();
        assert!(!is_goal_state(&g, &s));
        let done = State::new(&g, &[sq(1, 4), sq(1, 5)], sq(1, 1)).unwrap();
        assert!(is_goal_state(&g, &done));
    }

    #[test]
    fn keys() {
        let g = parse_level(L3).unwrap();
        let a = State::new(&g, &[sq(1, 4)], sq(1, 1)).unwrap();
        let b = State::new(&g, &[sq(1, 4)], sq(1, 3)).unwrap();
        assert_eq!(state_key(&g, &a), state_key(&g, &b));
        let c = State::new(&g, &[sq(1, 4)], sq(1, 5)).unwrap();
        assert_ne!(state_key(&g, &a), state_key(&g, &c));
        let d = State::new(&g, &[sq(1, 3)], sq(1, 1)).unwrap();
        assert_ne!(state_key(&g, &a), state_key(&g, &d));
    }

    #[test]
    fn successors_match_apply() {
        let g = parse_level("#######\n#     #\n# $$  #\n#@ .. #\n#######").unwrap();
        let s = initial_state(&g);
        let succ = successors(&g, &s);
        assert_eq!(succ.iter().map(|(st, _)| *st).collect::<Vec<_>>(), legal_pushes(&g, &s));
        for (step, child) in succ {
            assert_eq!(apply_push(&g, &s, &step).unwrap(), child);
        }
    }

    #[test]
    fn walking() {
        let g = parse_level(L3).unwrap();
        let mask = box_mask(&g, &[sq(1, 4)]);
        assert_eq!(walk_path(&g, &mask, sq(1, 1), sq(1, 3)), Some(vec![Direction::Right, Direction::Right]));
        assert_eq!(walk_path(&g, &mask, sq(1, 1), sq(1, 5)), None);
    }
}
