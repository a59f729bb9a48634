//! The strategy suite: DFS, BFS, two A* tie-breaking variants and IDA*.
//!
//! Every strategy searches over pushes. States are deduplicated by
//! [`StateKey`]; A* keeps the best `g` seen per key and reopens closed states
//! when a strictly cheaper path turns up, which only happens with an
//! inconsistent heuristic such as [`HeuristicKind::PrePaired`].

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::board::{Grid, Square};
use crate::deadlock::{dead_squares, is_freeze_deadlock, DeadSquareMap};
use crate::heuristic::{Heuristic, HeuristicKind};
use crate::state::{initial_state, is_goal_state, state_key, successors, State, StateKey, Step};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Dfs,
    Bfs,
    /// A* preferring the most recently inserted node among equal `f`.
    DfAStar,
    /// A* preferring the least recently inserted node among equal `f`.
    BfAStar,
    IdaStar,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 5] =
        [StrategyKind::Dfs, StrategyKind::Bfs, StrategyKind::DfAStar, StrategyKind::BfAStar, StrategyKind::IdaStar];

    /// Display label, in the style of the usual comparison tables.
    pub fn label(self) -> &'static str {
        match self {
            StrategyKind::Dfs => "DFS",
            StrategyKind::Bfs => "BFS",
            StrategyKind::DfAStar => "DF_AStar",
            StrategyKind::BfAStar => "BF_AStar",
            StrategyKind::IdaStar => "IDAStar",
        }
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Dfs => "dfs",
            StrategyKind::Bfs => "bfs",
            StrategyKind::DfAStar => "df-astar",
            StrategyKind::BfAStar => "bf-astar",
            StrategyKind::IdaStar => "idastar",
        }
    }

    pub fn is_informed(self) -> bool {
        matches!(self, StrategyKind::DfAStar | StrategyKind::BfAStar | StrategyKind::IdaStar)
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == norm || k.label().to_ascii_lowercase().replace('_', "-") == norm)
            .ok_or_else(|| format!("unknown strategy `{s}` (expected dfs, bfs, df-astar, bf-astar or idastar)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    /// Used only by the informed kinds.
    pub heuristic: HeuristicKind,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Dead-square and freeze-deadlock pruning.
    pub pruning: bool,
}

impl StrategyConfig {
    pub fn new(kind: StrategyKind) -> Self {
        StrategyConfig {
            kind,
            heuristic: HeuristicKind::default(),
            node_limit: Some(DEFAULT_NODE_LIMIT),
            time_limit: Some(DEFAULT_TIME_LIMIT),
            pruning: true,
        }
    }

    pub fn with_heuristic(mut self, heuristic: HeuristicKind) -> Self {
        self.heuristic = heuristic;
        self
    }

    pub fn with_node_limit(mut self, limit: Option<u64>) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn with_pruning(mut self, pruning: bool) -> Self {
        self.pruning = pruning;
        self
    }

    /// Short label such as `BFS` or `BF_AStar/nearest`. The pre-paired
    /// heuristic is the default and is left implicit.
    pub fn summary(&self) -> String {
        let mut s = self.kind.label().to_string();
        if self.kind.is_informed() && self.heuristic != HeuristicKind::default() {
            s.push('/');
            s.push_str(self.heuristic.name());
        }
        if !self.pruning {
            s.push_str("/no-pruning");
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Solved,
    NoSolution,
    LimitExceeded,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Solved => "Solved",
            Outcome::NoSolution => "NoSolution",
            Outcome::LimitExceeded => "LimitExceeded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub outcome: Outcome,
    /// Push count, present only when solved.
    pub solution_steps: Option<usize>,
    pub elapsed: Duration,
    pub nodes_expanded: u64,
    pub frontier_peak: usize,
    /// Closed states re-expanded after a cheaper path was found (A* only).
    pub reopened: u64,
}

impl Metrics {
    pub fn elapsed_secs(&self) -> f64 {
        self.elapsed.as_secs_f64()
    }
}

/// A push sequence bound to the level it solves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<'g> {
    grid: &'g Grid,
    steps: Vec<Step>,
}

impl<'g> Solution<'g> {
    /// Takes ownership of the pushes and renumbers their ids from zero.
    pub fn new(grid: &'g Grid, steps: impl IntoIterator<Item = Step>) -> Self {
        let steps = steps.into_iter().enumerate().map(|(id, s)| Step { id, ..s }).collect();
        Solution { grid, steps }
    }

    pub fn grid(&self) -> &'g Grid {
        self.grid
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Hook into the search loop, mostly for instrumentation in tests.
pub trait SearchObserver {
    /// Called for every state placed on the frontier (or entered, for IDA*).
    fn on_enqueue(&mut self, _state: &State) {}
}

impl SearchObserver for () {}

/// Solves `grid` with the strategy and heuristic named in `config`.
pub fn solve<'g>(grid: &'g Grid, config: &StrategyConfig) -> (Option<Solution<'g>>, Metrics) {
    solve_observed(grid, config, &config.heuristic, &mut ())
}

/// Like [`solve`] but with a caller-supplied heuristic in place of
/// `config.heuristic`.
pub fn solve_with<'g, H: Heuristic + ?Sized>(
    grid: &'g Grid,
    config: &StrategyConfig,
    heuristic: &H,
) -> (Option<Solution<'g>>, Metrics) {
    solve_observed(grid, config, heuristic, &mut ())
}

pub fn solve_observed<'g, H: Heuristic + ?Sized, O: SearchObserver>(
    grid: &'g Grid,
    config: &StrategyConfig,
    heuristic: &H,
    observer: &mut O,
) -> (Option<Solution<'g>>, Metrics) {
    let mut search = Search::new(grid, config, heuristic, observer);
    let result = match config.kind {
        StrategyKind::Bfs => search.blind(Frontier::Fifo),
        StrategyKind::Dfs => search.blind(Frontier::Lifo),
        StrategyKind::DfAStar => search.best_first(TieBreak::Newest),
        StrategyKind::BfAStar => search.best_first(TieBreak::Oldest),
        StrategyKind::IdaStar => search.ida_star(),
    };
    search.finish(result)
}

#[derive(Clone, Copy)]
enum Frontier {
    Fifo,
    Lifo,
}

#[derive(Clone, Copy)]
enum TieBreak {
    Newest,
    Oldest,
}

enum Found {
    Goal(Vec<Step>),
    Exhausted,
    Limit,
}

struct Node {
    state: State,
    parent: Option<usize>,
    step: Option<Step>,
    g: u32,
}

struct Search<'a, 'g, H: ?Sized, O> {
    grid: &'g Grid,
    config: &'a StrategyConfig,
    heuristic: &'a H,
    observer: &'a mut O,
    dead: Option<DeadSquareMap>,
    started: Instant,
    nodes_expanded: u64,
    frontier_peak: usize,
    reopened: u64,
}

impl<'a, 'g, H: Heuristic + ?Sized, O: SearchObserver> Search<'a, 'g, H, O> {
    fn new(grid: &'g Grid, config: &'a StrategyConfig, heuristic: &'a H, observer: &'a mut O) -> Self {
        Search {
            grid,
            config,
            heuristic,
            observer,
            dead: config.pruning.then(|| dead_squares(grid)),
            started: Instant::now(),
            nodes_expanded: 0,
            frontier_peak: 0,
            reopened: 0,
        }
    }

    fn finish(self, found: Found) -> (Option<Solution<'g>>, Metrics) {
        let elapsed = self.started.elapsed();
        let (solution, outcome) = match found {
            Found::Goal(steps) => (Some(Solution::new(self.grid, steps)), Outcome::Solved),
            Found::Exhausted => (None, Outcome::NoSolution),
            Found::Limit => (None, Outcome::LimitExceeded),
        };
        let metrics = Metrics {
            outcome,
            solution_steps: solution.as_ref().map(Solution::len),
            elapsed,
            nodes_expanded: self.nodes_expanded,
            frontier_peak: self.frontier_peak,
            reopened: self.reopened,
        };
        (solution, metrics)
    }

    /// Checked before each expansion.
    fn over_limit(&self) -> bool {
        if self.config.node_limit.is_some_and(|n| self.nodes_expanded >= n) {
            return true;
        }
        match self.config.time_limit {
            Some(t) if self.nodes_expanded.is_multiple_of(512) => self.started.elapsed() >= t,
            _ => false,
        }
    }

    /// Whether the state can be discarded; `moved` is the box that was just
    /// pushed, or `None` for the root where every box is checked.
    fn pruned(&self, state: &State, moved: Option<Square>) -> bool {
        let Some(dead) = &self.dead else { return false };
        let frozen = |b: Square| is_freeze_deadlock(self.grid, state, b).unwrap_or(false);
        match moved {
            Some(b) => dead.is_dead(b) || frozen(b),
            None => state.boxes().iter().any(|&b| dead.is_dead(b) || frozen(b)),
        }
    }

    fn expand(&mut self, state: &State) -> Vec<(Step, State)> {
        self.nodes_expanded += 1;
        let grid = self.grid;
        let mut children = successors(grid, state);
        children.retain(|(step, child)| {
            let dest = grid.step(step.box_from, step.dir).expect("legal push stays on the board");
            !self.pruned(child, Some(dest))
        });
        children
    }

    fn root(&mut self) -> Option<State> {
        let root = initial_state(self.grid);
        if self.pruned(&root, None) {
            return None;
        }
        Some(root)
    }

    fn blind(&mut self, frontier: Frontier) -> Found {
        let Some(root) = self.root() else { return Found::Exhausted };
        if is_goal_state(self.grid, &root) {
            return Found::Goal(Vec::new());
        }
        let mut visited: HashSet<StateKey> = HashSet::from([state_key(self.grid, &root)]);
        self.observer.on_enqueue(&root);
        let mut nodes = vec![Node { state: root, parent: None, step: None, g: 0 }];
        let mut open = VecDeque::from([0usize]);
        self.frontier_peak = 1;

        loop {
            let next = match frontier {
                Frontier::Fifo => open.pop_front(),
                Frontier::Lifo => open.pop_back(),
            };
            let Some(idx) = next else { return Found::Exhausted };
            if self.over_limit() {
                return Found::Limit;
            }
            let state = nodes[idx].state.clone();
            let g = nodes[idx].g;
            let children = self.expand(&state);
            let mut fresh = Vec::with_capacity(children.len());
            for (step, child) in children {
                if !visited.insert(state_key(self.grid, &child)) {
                    continue;
                }
                self.observer.on_enqueue(&child);
                let goal = is_goal_state(self.grid, &child);
                nodes.push(Node { state: child, parent: Some(idx), step: Some(step), g: g + 1 });
                let child_idx = nodes.len() - 1;
                if goal {
                    return Found::Goal(trace(&nodes, child_idx));
                }
                fresh.push(child_idx);
            }
            match frontier {
                Frontier::Fifo => open.extend(fresh),
                // first successor ends up on top of the stack
                Frontier::Lifo => open.extend(fresh.into_iter().rev()),
            }
            self.frontier_peak = self.frontier_peak.max(open.len());
        }
    }

    fn best_first(&mut self, tie: TieBreak) -> Found {
        let Some(root) = self.root() else { return Found::Exhausted };
        let h0 = self.heuristic.estimate(self.grid, &root);
        // best g per state, and whether that state has been expanded at that g
        let mut best: HashMap<StateKey, (u32, bool)> = HashMap::from([(state_key(self.grid, &root), (0, false))]);
        self.observer.on_enqueue(&root);
        let mut nodes = vec![Node { state: root, parent: None, step: None, g: 0 }];
        let mut counter: i64 = 0;
        let order = |c: i64| match tie {
            TieBreak::Newest => c,
            TieBreak::Oldest => -c,
        };
        let mut open = BinaryHeap::from([(Reverse(h0), order(0), 0usize)]);
        self.frontier_peak = 1;

        while let Some((_, _, idx)) = open.pop() {
            let key = state_key(self.grid, &nodes[idx].state);
            let g = nodes[idx].g;
            let entry = best.get_mut(&key).expect("queued states are recorded");
            if g > entry.0 || entry.1 {
                continue;
            }
            if is_goal_state(self.grid, &nodes[idx].state) {
                return Found::Goal(trace(&nodes, idx));
            }
            if self.over_limit() {
                return Found::Limit;
            }
            entry.1 = true;
            let state = nodes[idx].state.clone();
            for (step, child) in self.expand(&state) {
                let child_g = g + 1;
                match best.entry(state_key(self.grid, &child)) {
                    Entry::Vacant(v) => {
                        v.insert((child_g, false));
                    }
                    Entry::Occupied(mut o) => {
                        let (old_g, closed) = *o.get();
                        if child_g >= old_g {
                            continue;
                        }
                        if closed {
                            self.reopened += 1;
                        }
                        o.insert((child_g, false));
                    }
                }
                let f = child_g + self.heuristic.estimate(self.grid, &child);
                self.observer.on_enqueue(&child);
                nodes.push(Node { state: child, parent: Some(idx), step: Some(step), g: child_g });
                counter += 1;
                open.push((Reverse(f), order(counter), nodes.len() - 1));
            }
            self.frontier_peak = self.frontier_peak.max(open.len());
        }
        Found::Exhausted
    }

    fn ida_star(&mut self) -> Found {
        let Some(root) = self.root() else { return Found::Exhausted };
        let mut threshold = self.heuristic.estimate(self.grid, &root);
        let mut on_path: HashSet<StateKey> = HashSet::new();
        let mut path: Vec<Step> = Vec::new();
        loop {
            on_path.insert(state_key(self.grid, &root));
            let res = self.bounded_dfs(&root, 0, threshold, &mut on_path, &mut path);
            on_path.clear();
            match res {
                Bounded::Goal => return Found::Goal(path),
                Bounded::Limit => return Found::Limit,
                Bounded::Exceeded(None) => return Found::Exhausted,
                Bounded::Exceeded(Some(next)) => threshold = next,
            }
        }
    }

    fn bounded_dfs(
        &mut self,
        state: &State,
        g: u32,
        threshold: u32,
        on_path: &mut HashSet<StateKey>,
        path: &mut Vec<Step>,
    ) -> Bounded {
        self.observer.on_enqueue(state);
        let f = g + self.heuristic.estimate(self.grid, state);
        if f > threshold {
            return Bounded::Exceeded(Some(f));
        }
        if is_goal_state(self.grid, state) {
            return Bounded::Goal;
        }
        if self.over_limit() {
            return Bounded::Limit;
        }
        self.frontier_peak = self.frontier_peak.max(path.len() + 1);
        let mut next: Option<u32> = None;
        for (step, child) in self.expand(state) {
            let key = state_key(self.grid, &child);
            if on_path.contains(&key) {
                continue;
            }
            on_path.insert(key.clone());
            path.push(step);
            match self.bounded_dfs(&child, g + 1, threshold, on_path, path) {
                Bounded::Exceeded(t) => {
                    next = match (next, t) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                }
                done => return done,
            }
            path.pop();
            on_path.remove(&key);
        }
        Bounded::Exceeded(next)
    }
}

enum Bounded {
    Goal,
    Limit,
    /// Subtree finished without a goal; carries the smallest `f` that was cut
    /// off, if any.
    Exceeded(Option<u32>),
}

fn trace(nodes: &[Node], mut idx: usize) -> Vec<Step> {
    let mut steps = Vec::new();
    while let Some(step) = nodes[idx].step {
        steps.push(step);
        idx = nodes[idx].parent.expect("non-root nodes have a parent");
    }
    steps.reverse();
    steps
}
