use std::io::{self, Write};
use std::path::PathBuf;
use std::thread;
use std::time::Duration;

use clap::Args;
use sokoban_core::replay::MovePlayer;
use sokoban_core::{animate, pushes_to_moves, solve, Outcome, StrategyKind};

use crate::{exit, levels, CliError, SearchOpts, StrategyArg};

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["lurd_string", "from_solve"]))]
pub struct ReplayArgs {
    level_file: PathBuf,
    /// Moves to play, in LURD notation.
    #[arg(long, value_name = "MOVES")]
    lurd_string: Option<String>,
    /// Solve the level with this strategy and play the result.
    #[arg(long, value_enum, value_name = "STRATEGY")]
    from_solve: Option<StrategyArg>,
    #[command(flatten)]
    search: SearchOpts,
    /// Pause between frames, in milliseconds.
    #[arg(long, value_name = "MS", default_value_t = 0)]
    delay: u64,
    /// Print the played moves in LURD notation after the last frame.
    #[arg(long)]
    lurd: bool,
    /// 1-based level index inside an archive.
    #[arg(long, value_name = "N", default_value_t = 1)]
    level: usize,
}

pub fn run(args: &ReplayArgs) -> Result<u8, CliError> {
    let level = levels::load_one(&args.level_file, args.level)?;
    let grid = &level.grid;
    let (frames, moves) = match (&args.lurd_string, args.from_solve) {
        (Some(lurd), _) => {
            let moves: String = lurd.chars().filter(|c| !c.is_whitespace()).collect();
            let mut player = MovePlayer::new(grid);
            let mut frames = vec![player.render()];
            for (i, ch) in moves.chars().enumerate() {
                player
                    .play(ch)
                    .map_err(|ch| CliError::Input(format!("move {} ({ch:?}) is not legal", i + 1)))?;
                frames.push(player.render());
            }
            if !player.is_solved() {
                eprintln!("note: final position is not solved");
            }
            (frames, moves)
        }
        (None, Some(strategy)) => {
            let config = args.search.config(StrategyKind::from(strategy))?;
            let (solution, metrics) = solve(grid, &config);
            let Some(sol) = solution else {
                return Ok(match metrics.outcome {
                    Outcome::LimitExceeded => {
                        println!("Limit exceeded");
                        exit::LIMIT
                    }
                    _ => {
                        println!("No solution");
                        exit::NO_SOLUTION
                    }
                });
            };
            let to_input = |e: sokoban_core::replay::ReplayError| CliError::Input(e.to_string());
            (animate(grid, &sol).map_err(to_input)?, pushes_to_moves(grid, &sol).map_err(to_input)?)
        }
        (None, None) => return Err(CliError::Usage("one of --lurd-string or --from-solve is required".into())),
    };

    let delay = Duration::from_millis(args.delay);
    let mut stdout = io::stdout().lock();
    for (i, frame) in frames.iter().enumerate() {
        if i > 0 {
            if !delay.is_zero() {
                thread::sleep(delay);
            }
            writeln!(stdout).map_err(io_err)?;
        }
        writeln!(stdout, "{frame}").map_err(io_err)?;
        stdout.flush().map_err(io_err)?;
    }
    if args.lurd {
        writeln!(stdout, "\nlurd: {moves}").map_err(io_err)?;
    }
    Ok(exit::OK)
}

fn io_err(e: io::Error) -> CliError {
    CliError::File("<stdout>".into(), e)
}
