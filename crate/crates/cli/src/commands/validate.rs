use std::path::PathBuf;

use clap::Args;
use std::collections::BTreeSet;

use sokoban_core::{dead_squares, Direction, Grid, Square};

use super::plural;
use crate::{exit, levels, CliError};

#[derive(Debug, Args)]
pub struct ValidateArgs {
    level_file: PathBuf,
    /// Draw the level with dead squares marked `x`.
    #[arg(long)]
    show_dead: bool,
    /// 1-based level index inside an archive.
    #[arg(long, value_name = "N", default_value_t = 1)]
    level: usize,
}

pub fn run(args: &ValidateArgs) -> Result<u8, CliError> {
    let level = match levels::load_one(&args.level_file, args.level) {
        Ok(level) => level,
        Err(CliError::Input(msg)) => {
            println!("Invalid: {msg}");
            return Ok(exit::INPUT);
        }
        Err(e) => return Err(e),
    };
    print!("{}", report(&level.grid, args.show_dead));
    Ok(exit::OK)
}

fn report(grid: &Grid, show_dead: bool) -> String {
    let boxes = grid.initial_boxes();
    let dead = dead_squares(grid);
    let inside = interior(grid);
    let on_goal = boxes.iter().filter(|&&b| grid.is_goal(b)).count();
    let stuck: Vec<String> = boxes.iter().filter(|&&b| dead.is_dead(b)).map(|b| b.to_string()).collect();
    let mut out = format!(
        "OK: {}, {}, enclosed\nsize: {}x{}\nfloor squares: {}\nboxes on goals: {on_goal}\ndead squares: {}\n",
        plural(boxes.len(), "box", "boxes"),
        plural(grid.goals().len(), "goal", "goals"),
        grid.width(),
        grid.height(),
        inside.len(),
        inside.iter().filter(|&&s| dead.is_dead(s)).count(),
    );
    if !stuck.is_empty() {
        out.push_str(&format!("boxes on dead squares: {}\n", stuck.join(" ")));
    }
    if show_dead {
        out.push('\n');
        out.push_str(&overlay(grid, &inside));
    }
    out
}

/// The start position with every empty dead square drawn as `x`.
fn overlay(grid: &Grid, inside: &BTreeSet<Square>) -> String {
    let dead = dead_squares(grid);
    let mut rows: Vec<Vec<char>> = grid.to_string().lines().map(|l| l.chars().collect()).collect();
    for sq in dead.dead_squares().filter(|s| inside.contains(s)) {
        let Some(row) = rows.get_mut(sq.row) else { continue };
        if row.len() <= sq.col {
            row.resize(sq.col + 1, ' ');
        }
        if row[sq.col] == ' ' {
            row[sq.col] = 'x';
        }
    }
    rows.into_iter().map(|r| r.into_iter().collect::<String>() + "\n").collect()
}

/// Floor squares connected to the pusher, ignoring boxes.
fn interior(grid: &Grid) -> BTreeSet<Square> {
    let start = grid.initial_pusher();
    let mut seen = BTreeSet::from([start]);
    let mut todo = vec![start];
    while let Some(sq) = todo.pop() {
        for dir in Direction::ALL {
            if let Some(next) = grid.step(sq, dir).filter(|&n| grid.is_floor(n)) {
                if seen.insert(next) {
                    todo.push(next);
                }
            }
        }
    }
    seen
}
