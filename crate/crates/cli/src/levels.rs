//! Level file loading. Files may hold one level or a blank-line separated
//! archive; directories are scanned for `.xsb`, `.sok` and `.txt` files.

use std::fs;
use std::path::{Path, PathBuf};

use sokoban_core::bench::NamedLevel;
use sokoban_core::collection::split_levels;
use sokoban_core::parse_level;

use crate::CliError;

const LEVEL_EXTENSIONS: [&str; 3] = ["xsb", "sok", "txt"];

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

/// All levels in a file, parsed.
pub fn load_file(path: &Path) -> Result<Vec<NamedLevel>, CliError> {
    let text = read(path)?;
    let blocks = split_levels(&text);
    if blocks.is_empty() {
        return Err(CliError::Input(format!("{}: no level found", path.display())));
    }
    let many = blocks.len() > 1;
    blocks
        .into_iter()
        .enumerate()
        .map(|(i, block)| {
            let id = match (block.title, many) {
                (Some(t), _) => t,
                (None, true) => format!("{}#{}", stem(path), i + 1),
                (None, false) => stem(path),
            };
            let grid = parse_level(&block.board).map_err(|e| CliError::Input(format!("{id}: {e}")))?;
            Ok(NamedLevel::new(id, grid))
        })
        .collect()
}

/// Picks the 1-based `index`-th level of a file.
pub fn load_one(path: &Path, index: usize) -> Result<NamedLevel, CliError> {
    let text = read(path)?;
    let blocks = split_levels(&text);
    if index == 0 || index > blocks.len() {
        return Err(CliError::Usage(format!(
            "{} has {} level(s); --level {index} is out of range",
            path.display(),
            blocks.len()
        )));
    }
    let many = blocks.len() > 1;
    let block = blocks.into_iter().nth(index - 1).expect("index checked");
    let id = block.title.unwrap_or_else(|| if many { format!("{}#{index}", stem(path)) } else { stem(path) });
    let grid = parse_level(&block.board).map_err(|e| CliError::Input(format!("{id}: {e}")))?;
    Ok(NamedLevel::new(id, grid))
}

/// Every level under a file or directory.
pub fn load_path(path: &Path) -> Result<Vec<NamedLevel>, CliError> {
    let meta = fs::metadata(path).map_err(|e| CliError::File(path.to_path_buf(), e))?;
    if !meta.is_dir() {
        return load_file(path);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| CliError::File(path.to_path_buf(), e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().and_then(|e| e.to_str()).is_some_and(|e| LEVEL_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!("{}: no level files", path.display())));
    }
    let mut out = Vec::new();
    for f in files {
        out.extend(load_file(&f)?);
    }
    Ok(out)
}
