//! Level geometry: parsing XSB text, the tile model and rendering.
//!
//! A [`Grid`] holds everything about a level that never changes during a
//! solve: its size, the walls, the goal squares and the initial placement of
//! boxes and the pusher. The dynamic part (where the boxes currently are)
//! lives in [`crate::state::State`].
//!
//! Goals are an overlay rather than a tile of their own: any non-wall square
//! can be a goal and hold a box or the pusher at the same time.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// One of the four push/walk directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Right,
    Down,
    Left,
}

impl Direction {
    /// All directions in the canonical tie-breaking order.
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Right, Direction::Down, Direction::Left];

    /// `(row delta, col delta)`.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Right => (0, 1),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Right => Direction::Left,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
        }
    }

    /// Lowercase LURD letter for a walking move.
    pub fn walk_char(self) -> char {
        match self {
            Direction::Up => 'u',
            Direction::Right => 'r',
            Direction::Down => 'd',
            Direction::Left => 'l',
        }
    }

    /// Uppercase LURD letter for a push.
    pub fn push_char(self) -> char {
        self.walk_char().to_ascii_uppercase()
    }

    /// Decodes a LURD letter; the flag is true for pushes (uppercase).
    pub fn from_lurd(c: char) -> Option<(Direction, bool)> {
        let dir = match c.to_ascii_lowercase() {
            'u' => Direction::Up,
            'r' => Direction::Right,
            'd' => Direction::Down,
            'l' => Direction::Left,
            _ => return None,
        };
        Some((dir, c.is_ascii_uppercase()))
    }
}

/// A board coordinate. Ordering is row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub row: usize,
    pub col: usize,
}

impl Square {
    pub const fn new(row: usize, col: usize) -> Self {
        Square { row, col }
    }

    /// The neighbouring square in `dir`, or `None` when it would leave the
    /// non-negative quadrant. Upper bounds are checked by [`Grid::step`].
    pub fn offset(self, dir: Direction) -> Option<Square> {
        let (dr, dc) = dir.delta();
        Some(Square {
            row: self.row.checked_add_signed(dr)?,
            col: self.col.checked_add_signed(dc)?,
        })
    }

    pub fn manhattan(self, other: Square) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// What occupies a square, ignoring the goal overlay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occupant {
    Empty,
    Rock,
    Box,
    Pusher,
}

/// A tile as seen on the board: an occupant plus the goal overlay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TileKind {
    occupant: Occupant,
    is_also_goal: bool,
}

impl TileKind {
    /// Returns `None` for a rock carrying a goal, which cannot exist.
    pub fn new(occupant: Occupant, is_also_goal: bool) -> Option<Self> {
        if occupant == Occupant::Rock && is_also_goal {
            return None;
        }
        Some(TileKind { occupant, is_also_goal })
    }

    pub fn occupant(self) -> Occupant {
        self.occupant
    }

    pub fn is_also_goal(self) -> bool {
        self.is_also_goal
    }

    /// Rocks and boxes block; empty squares, goals and the pusher do not.
    pub fn blocks(self) -> bool {
        matches!(self.occupant, Occupant::Rock | Occupant::Box)
    }

    pub fn from_xsb(c: char) -> Option<Self> {
        let (occupant, goal) = match c {
            '#' => (Occupant::Rock, false),
            '@' => (Occupant::Pusher, false),
            '+' => (Occupant::Pusher, true),
            '$' => (Occupant::Box, false),
            '*' => (Occupant::Box, true),
            '.' => (Occupant::Empty, true),
            ' ' | '-' | '_' => (Occupant::Empty, false),
            _ => return None,
        };
        Some(TileKind { occupant, is_also_goal: goal })
    }

    pub fn to_xsb(self) -> char {
        match (self.occupant, self.is_also_goal) {
            (Occupant::Rock, _) => '#',
            (Occupant::Pusher, false) => '@',
            (Occupant::Pusher, true) => '+',
            (Occupant::Box, false) => '$',
            (Occupant::Box, true) => '*',
            (Occupant::Empty, true) => '.',
            (Occupant::Empty, false) => ' ',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("level is empty")]
    EmptyLevel,
    #[error("unexpected character {ch:?} at {at}")]
    InvalidCharacter { ch: char, at: Square },
    #[error("level has no pusher")]
    NoPusher,
    #[error("level has {0} pushers")]
    MultiplePushers(usize),
    #[error("level has no boxes")]
    NoBoxes,
    #[error("{boxes} box(es) but {goals} goal(s)")]
    BoxGoalCountMismatch { boxes: usize, goals: usize },
    #[error("playfield is not enclosed: the pusher can walk off the board near {0}")]
    UnenclosedPlayfield(Square),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("square {0} is outside the grid")]
    OutOfBounds(Square),
    #[error("illegal placement: {0}")]
    IllegalPlacement(String),
}

/// Immutable level geometry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    width: usize,
    height: usize,
    walls: Vec<bool>,
    goal_mask: Vec<bool>,
    goals: Vec<Square>,
    initial_boxes: Vec<Square>,
    initial_pusher: Square,
}

impl Grid {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of cells in the bounding rectangle.
    pub fn area(&self) -> usize {
        self.width * self.height
    }

    pub fn contains(&self, sq: Square) -> bool {
        sq.row < self.height && sq.col < self.width
    }

    /// Row-major cell index. Callers must pass an in-bounds square.
    #[inline]
    pub fn index(&self, sq: Square) -> usize {
        debug_assert!(self.contains(sq));
        sq.row * self.width + sq.col
    }

    #[inline]
    pub fn square(&self, index: usize) -> Square {
        Square::new(index / self.width, index % self.width)
    }

    /// The in-bounds neighbour of `sq` in `dir`.
    #[inline]
    pub fn step(&self, sq: Square, dir: Direction) -> Option<Square> {
        sq.offset(dir).filter(|&n| self.contains(n))
    }

    #[inline]
    pub fn is_wall(&self, sq: Square) -> bool {
        self.walls[self.index(sq)]
    }

    #[inline]
    pub fn is_goal(&self, sq: Square) -> bool {
        self.goal_mask[self.index(sq)]
    }

    /// True when `sq` is inside the grid and not a wall.
    #[inline]
    pub fn is_floor(&self, sq: Square) -> bool {
        self.contains(sq) && !self.is_wall(sq)
    }

    pub fn walls(&self) -> impl Iterator<Item = Square> + '_ {
        (0..self.area()).filter(|&i| self.walls[i]).map(|i| self.square(i))
    }

    pub fn floor_squares(&self) -> impl Iterator<Item = Square> + '_ {
        (0..self.area()).filter(|&i| !self.walls[i]).map(|i| self.square(i))
    }

    /// Goal squares in row-major order.
    pub fn goals(&self) -> &[Square] {
        &self.goals
    }

    /// Initial box squares in row-major order.
    pub fn initial_boxes(&self) -> &[Square] {
        &self.initial_boxes
    }

    pub fn initial_pusher(&self) -> Square {
        self.initial_pusher
    }

    /// The tile at `sq` for a given placement of boxes and pusher.
    pub fn tile_at(&self, boxes: &[Square], pusher: Square, sq: Square) -> Result<TileKind, BoardError> {
        if !self.contains(sq) {
            return Err(BoardError::OutOfBounds(sq));
        }
        let occupant = if self.is_wall(sq) {
            Occupant::Rock
        } else if boxes.contains(&sq) {
            Occupant::Box
        } else if sq == pusher {
            Occupant::Pusher
        } else {
            Occupant::Empty
        };
        Ok(TileKind { occupant, is_also_goal: occupant != Occupant::Rock && self.is_goal(sq) })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = render(self, &self.initial_boxes, self.initial_pusher).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

/// Parses a single level in XSB notation.
///
/// Lines may differ in length; short lines are padded with floor. Trailing
/// spaces and leading/trailing blank lines are ignored.
pub fn parse_level(text: &str) -> Result<Grid, ParseError> {
    let mut lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches([' ', '\r', '\t'])).collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    let first = lines.iter().position(|l| !l.is_empty()).ok_or(ParseError::EmptyLevel)?;
    let lines = &lines[first..];

    let height = lines.len();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut walls = vec![false; width * height];
    let mut goal_mask = vec![false; width * height];
    let mut goals = Vec::new();
    let mut boxes = Vec::new();
    let mut pushers = Vec::new();

    for (row, line) in lines.iter().enumerate() {
        for (col, ch) in line.chars().enumerate() {
            let at = Square::new(row, col);
            let tile = TileKind::from_xsb(ch).ok_or(ParseError::InvalidCharacter { ch, at })?;
            let idx = row * width + col;
            match tile.occupant {
                Occupant::Rock => walls[idx] = true,
                Occupant::Box => boxes.push(at),
                Occupant::Pusher => pushers.push(at),
                Occupant::Empty => {}
            }
            if tile.is_also_goal {
                goal_mask[idx] = true;
                goals.push(at);
            }
        }
    }

    let pusher = match pushers.as_slice() {
        [] => return Err(ParseError::NoPusher),
        [p] => *p,
        many => return Err(ParseError::MultiplePushers(many.len())),
    };
    if boxes.len() != goals.len() {
        return Err(ParseError::BoxGoalCountMismatch { boxes: boxes.len(), goals: goals.len() });
    }
    if boxes.is_empty() {
        return Err(ParseError::NoBoxes);
    }

    let grid = Grid { width, height, walls, goal_mask, goals, initial_boxes: boxes, initial_pusher: pusher };
    check_enclosed(&grid)?;
    Ok(grid)
}

/// Flood fill from the pusher through non-wall squares; touching the edge of
/// the bounding box means the pusher could walk off the level.
fn check_enclosed(grid: &Grid) -> Result<(), ParseError> {
    let mut seen = vec![false; grid.area()];
    let mut queue = VecDeque::from([grid.initial_pusher]);
    seen[grid.index(grid.initial_pusher)] = true;
    while let Some(sq) = queue.pop_front() {
        for dir in Direction::ALL {
            let Some(next) = grid.step(sq, dir) else {
                return Err(ParseError::UnenclosedPlayfield(sq));
            };
            let idx = grid.index(next);
            if !grid.walls[idx] && !seen[idx] {
                seen[idx] = true;
                queue.push_back(next);
            }
        }
    }
    Ok(())
}

/// The blocking predicate: walls and boxes block, everything else is passable.
pub fn tile_blocks(grid: &Grid, boxes: &[Square], sq: Square) -> Result<bool, BoardError> {
    if !grid.contains(sq) {
        return Err(BoardError::OutOfBounds(sq));
    }
    Ok(grid.is_wall(sq) || boxes.contains(&sq))
}

/// Renders a placement as XSB text, one line per row with trailing floor
/// trimmed.
pub fn render(grid: &Grid, boxes: &[Square], pusher: Square) -> Result<String, BoardError> {
    check_placement(grid, boxes, pusher)?;
    let mut out = String::with_capacity(grid.area() + grid.height);
    for row in 0..grid.height {
        let start = out.len();
        for col in 0..grid.width {
            let tile = grid.tile_at(boxes, pusher, Square::new(row, col))?;
            out.push(tile.to_xsb());
        }
        out.truncate(start + out[start..].trim_end_matches(' ').len());
        if row + 1 < grid.height {
            out.push('\n');
        }
    }
    Ok(out)
}

pub(crate) fn check_placement(grid: &Grid, boxes: &[Square], pusher: Square) -> Result<(), BoardError> {
    for &sq in boxes.iter().chain(std::iter::once(&pusher)) {
        if !grid.contains(sq) {
            return Err(BoardError::OutOfBounds(sq));
        }
        if grid.is_wall(sq) {
            return Err(BoardError::IllegalPlacement(format!("{sq} is a wall")));
        }
    }
    if boxes.contains(&pusher) {
        return Err(BoardError::IllegalPlacement(format!("pusher and box both at {pusher}")));
    }
    let mut sorted = boxes.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(BoardError::IllegalPlacement(format!("two boxes at {}", w[0])));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const L1: &str = "#####\n#@$.#\n#####";

    fn sq(r: usize, c: usize) -> Square {
        Square::new(r, c)
    }

    #[test]
    fn directions_are_involutive() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_ne!(d.opposite(), d);
            let (dr, dc) = d.delta();
            let (or, oc) = d.opposite().delta();
            assert_eq!((dr + or, dc + oc), (0, 0));
        }
    }

    #[test]
    fn parses_l1() {
        let g = parse_level(L1).unwrap();
        assert_eq!((g.width(), g.height()), (5, 3));
        assert_eq!(g.goals(), &[sq(1, 3)]);
        assert_eq!(g.initial_boxes(), &[sq(1, 2)]);
        assert_eq!(g.initial_pusher(), sq(1, 1));
        let walls: Vec<_> = g.walls().collect();
        assert_eq!(walls.len(), 12);
        assert!(walls.iter().all(|s| s.row == 0 || s.row == 2 || s.col == 0 || s.col == 4));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_level("#####\n#@$ #\n#####"),
            Err(ParseError::BoxGoalCountMismatch { boxes: 1, goals: 0 })
        );
        assert_eq!(
            parse_level("####\n#*+#\n####"),
            Err(ParseError::BoxGoalCountMismatch { boxes: 1, goals: 2 })
        );
        assert_eq!(parse_level("#####\n# $.#\n#####"), Err(ParseError::NoPusher));
        assert_eq!(parse_level("######\n#@$.@#\n######"), Err(ParseError::MultiplePushers(2)));
        assert_eq!(parse_level(""), Err(ParseError::EmptyLevel));
        assert_eq!(parse_level("\n   \n"), Err(ParseError::EmptyLevel));
        assert_eq!(parse_level("####\n#@ #\n####"), Err(ParseError::NoBoxes));
        assert!(matches!(parse_level("#####\n#@$.\n#####"), Err(ParseError::UnenclosedPlayfield(_))));
        assert!(matches!(parse_level("#####\n#@$.#\n## #"), Err(ParseError::UnenclosedPlayfield(_))));
        assert!(matches!(
            parse_level("#####\n#@$x#\n#####"),
            Err(ParseError::InvalidCharacter { ch: 'x', .. })
        ));
    }

    #[test]
    fn unequal_lines_and_floor_alias() {
        let g = parse_level("  #####\n###-@.#\n#  $  #\n#######").unwrap();
        assert_eq!(g.width(), 7);
        assert!(!g.is_wall(sq(0, 0)));
        assert!(g.is_floor(sq(1, 3)));
        // pockets outside the enclosure are kept
        assert!(g.is_floor(sq(0, 1)));
    }

    #[test]
    fn blocking_predicate() {
        let g = parse_level(L1).unwrap();
        let boxes = g.initial_boxes();
        assert_eq!(tile_blocks(&g, boxes, sq(1, 2)), Ok(true));
        assert_eq!(tile_blocks(&g, boxes, sq(1, 3)), Ok(false));
        assert_eq!(tile_blocks(&g, boxes, sq(0, 0)), Ok(true));
        assert_eq!(tile_blocks(&g, boxes, sq(1, 1)), Ok(false));
        assert_eq!(tile_blocks(&g, boxes, sq(3, 0)), Err(BoardError::OutOfBounds(sq(3, 0))));
    }

    #[test]
    fn tile_kinds() {
        assert!(TileKind::new(Occupant::Rock, true).is_none());
        for c in "#@+$*. ".chars() {
            let t = TileKind::from_xsb(c).unwrap();
            assert_eq!(t.to_xsb(), c);
            assert_eq!(t.blocks(), c == '#' || c == '$' || c == '*');
        }
    }

    #[test]
    fn render_examples() {
        let g = parse_level(L1).unwrap();
        assert_eq!(render(&g, &[sq(1, 3)], sq(1, 2)).unwrap(), "#####\n# @*#\n#####");
        assert!(matches!(render(&g, &[sq(1, 1)], sq(1, 1)), Err(BoardError::IllegalPlacement(_))));
        assert!(matches!(render(&g, &[sq(0, 1)], sq(1, 1)), Err(BoardError::IllegalPlacement(_))));
        assert_eq!(g.to_string(), L1);
        let again = parse_level(&g.to_string()).unwrap();
        assert_eq!(again, g);
    }
}
