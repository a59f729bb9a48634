//! Multi-level `.sok` style archives.
//!
//! Levels are separated by blank lines. Inside a block, lines made only of
//! level characters are board rows; any other line (a title such as
//! `Level 3`, or a `;` comment) is metadata. The first metadata line of a
//! block, before the board, becomes the level title.

/// One level block from an archive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelText {
    pub title: Option<String>,
    pub board: String,
}

fn is_board_line(line: &str) -> bool {
    let line = line.trim_end();
    !line.is_empty() && line.contains('#') && line.chars().all(|c| "#@+$*.-_ ".contains(c))
}

pub fn split_levels(text: &str) -> Vec<LevelText> {
    let mut out = Vec::new();
    let mut title: Option<String> = None;
    let mut board: Vec<&str> = Vec::new();
    let mut flush = |title: &mut Option<String>, board: &mut Vec<&str>| {
        if !board.is_empty() {
            out.push(LevelText { title: title.take(), board: board.join("\n") });
            board.clear();
        }
    };
    for line in text.lines() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            flush(&mut title, &mut board);
            title = None;
        } else if is_board_line(line) {
            board.push(line);
        } else {
            // metadata after a board closes that level
            flush(&mut title, &mut board);
            if title.is_none() {
                let t = line.trim().trim_start_matches(';').trim();
                if !t.is_empty() {
                    title = Some(t.to_string());
                }
            }
        }
    }
    flush(&mut title, &mut board);
    out
}
