//! Reference implementations used as oracles by the integration tests.
//!
//! Nothing here touches the solver's state, search or deadlock code; the
//! only library items used are level parsing and read-only `Grid` accessors.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use sokoban_core::bench::NamedLevel;
use sokoban_core::collection::split_levels;
use sokoban_core::{parse_level, Direction, Grid, Square};

pub fn levels_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("levels")
}

pub fn load(file: &str) -> Vec<NamedLevel> {
    let text = std::fs::read_to_string(levels_dir().join(file)).expect("corpus file");
    split_levels(&text)
        .into_iter()
        .map(|lt| {
            let id = lt.title.expect("corpus levels are titled");
            let grid = parse_level(&lt.board).unwrap_or_else(|e| panic!("{id}: {e}"));
            NamedLevel::new(id, grid)
        })
        .collect()
}

pub fn micro() -> Vec<NamedLevel> {
    load("micro.sok")
}

pub fn quad() -> Vec<NamedLevel> {
    load("quad.sok")
}

pub fn all_levels() -> Vec<NamedLevel> {
    let mut v = micro();
    v.extend(quad());
    v
}

pub fn level(id: &str) -> Grid {
    all_levels().into_iter().find(|l| l.id == id).unwrap_or_else(|| panic!("no level {id}")).grid
}

fn neighbour(grid: &Grid, sq: Square, dir: Direction) -> Option<Square> {
    let (dr, dc) = match dir {
        Direction::Up => (-1isize, 0isize),
        Direction::Right => (0, 1),
        Direction::Down => (1, 0),
        Direction::Left => (0, -1),
    };
    let r = sq.row as isize + dr;
    let c = sq.col as isize + dc;
    (r >= 0 && c >= 0 && (r as usize) < grid.height() && (c as usize) < grid.width())
        .then(|| Square::new(r as usize, c as usize))
}

fn open(grid: &Grid, sq: Option<Square>) -> Option<Square> {
    sq.filter(|&s| !grid.is_wall(s))
}

const DIRS: [Direction; 4] = [Direction::Up, Direction::Right, Direction::Down, Direction::Left];

/// Plain 4-connected flood fill avoiding walls and `boxes`.
pub fn flood(grid: &Grid, boxes: &[Square], from: Square) -> BTreeSet<Square> {
    let mut seen = BTreeSet::from([from]);
    let mut todo = vec![from];
    while let Some(s) = todo.pop() {
        for d in DIRS {
            if let Some(n) = open(grid, neighbour(grid, s, d)) {
                if !boxes.contains(&n) && seen.insert(n) {
                    todo.push(n);
                }
            }
        }
    }
    seen
}

/// Every (box, direction) pair, kept when the pusher can reach the square
/// behind the box and the square ahead is free.
pub fn brute_pushes(grid: &Grid, boxes: &[Square], pusher: Square) -> Vec<(Square, Direction)> {
    let region = flood(grid, boxes, pusher);
    let mut out = Vec::new();
    let mut sorted = boxes.to_vec();
    sorted.sort();
    for &b in &sorted {
        for d in DIRS {
            let behind = neighbour(grid, b, opposite(d));
            let ahead = open(grid, neighbour(grid, b, d));
            if let (Some(behind), Some(ahead)) = (behind, ahead) {
                if region.contains(&behind) && !boxes.contains(&ahead) {
                    out.push((b, d));
                }
            }
        }
    }
    out
}

fn opposite(d: Direction) -> Direction {
    match d {
        Direction::Up => Direction::Down,
        Direction::Right => Direction::Left,
        Direction::Down => Direction::Up,
        Direction::Left => Direction::Right,
    }
}

fn solved(grid: &Grid, boxes: &[Square]) -> bool {
    boxes.iter().all(|&b| grid.is_goal(b))
}

/// Result of exhaustive move-level search.
pub struct Exhaustive {
    /// Minimum number of pushes over all solutions.
    pub min_pushes: Option<usize>,
    /// Distinct (box set, pusher region) pairs reachable from the start.
    pub push_states: usize,
}

/// 0-1 BFS over (box set, pusher square) with single pusher moves: walking
/// costs 0, pushing costs 1. Explores the whole reachable space.
pub fn exhaustive(grid: &Grid) -> Exhaustive {
    type Pos = (Vec<Square>, Square);
    let mut start_boxes = grid.initial_boxes().to_vec();
    start_boxes.sort();
    let start: Pos = (start_boxes, grid.initial_pusher());
    let mut dist: HashMap<Pos, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut best: Option<usize> = None;
    while let Some((pos, d)) = queue.pop_front() {
        if dist[&pos] < d {
            continue;
        }
        let (boxes, pusher) = &pos;
        if solved(grid, boxes) {
            best = Some(best.map_or(d, |b: usize| b.min(d)));
        }
        for dir in DIRS {
            let Some(next) = open(grid, neighbour(grid, *pusher, dir)) else { continue };
            let (nb, cost) = if let Some(i) = boxes.iter().position(|&b| b == next) {
                let Some(ahead) = open(grid, neighbour(grid, next, dir)) else { continue };
                if boxes.contains(&ahead) {
                    continue;
                }
                let mut nb = boxes.clone();
                nb[i] = ahead;
                nb.sort();
                (nb, 1)
            } else {
                (boxes.clone(), 0)
            };
            let np = (nb, next);
            let nd = d + cost;
            if dist.get(&np).is_none_or(|&old| nd < old) {
                dist.insert(np.clone(), nd);
                if cost == 0 {
                    queue.push_front((np, nd));
                } else {
                    queue.push_back((np, nd));
                }
            }
        }
    }
    let mut regions: HashSet<(Vec<Square>, Square)> = HashSet::new();
    for (boxes, pusher) in dist.keys() {
        let min = *flood(grid, boxes, *pusher).iter().next().unwrap();
        regions.insert((boxes.clone(), min));
    }
    Exhaustive { min_pushes: best, push_states: regions.len() }
}

/// A lone box on `s` with the pusher free to stand on any floor square next
/// to it: can some goal be reached by pushes alone?
pub fn lone_box_live(grid: &Grid, s: Square) -> bool {
    let mut seen = BTreeSet::from([s]);
    let mut todo = VecDeque::from([s]);
    while let Some(b) = todo.pop_front() {
        if grid.is_goal(b) {
            return true;
        }
        for d in DIRS {
            let behind = open(grid, neighbour(grid, b, opposite(d)));
            let ahead = open(grid, neighbour(grid, b, d));
            if let (Some(_), Some(a)) = (behind, ahead) {
                if seen.insert(a) {
                    todo.push_back(a);
                }
            }
        }
    }
    false
}

/// Move-by-move LURD interpreter. Returns `(solved, pushes)` or `None` on an
/// illegal move.
pub fn replay_lurd(grid: &Grid, lurd: &str) -> Option<(bool, usize)> {
    let mut boxes = grid.initial_boxes().to_vec();
    let mut pusher = grid.initial_pusher();
    let mut pushes = 0;
    for ch in lurd.chars() {
        let dir = match ch.to_ascii_lowercase() {
            'u' => Direction::Up,
            'r' => Direction::Right,
            'd' => Direction::Down,
            'l' => Direction::Left,
            _ => return None,
        };
        let next = open(grid, neighbour(grid, pusher, dir))?;
        if let Some(i) = boxes.iter().position(|&b| b == next) {
            if !ch.is_ascii_uppercase() {
                return None;
            }
            let ahead = open(grid, neighbour(grid, next, dir))?;
            if boxes.contains(&ahead) {
                return None;
            }
            boxes[i] = ahead;
            pushes += 1;
        } else if ch.is_ascii_uppercase() {
            return None;
        }
        pusher = next;
    }
    Some((solved(grid, &boxes), pushes))
}
