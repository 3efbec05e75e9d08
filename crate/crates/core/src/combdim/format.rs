use std::fs;
use std::path::Path;

use crate::walsh::{IndexSet, MultiIndex};
use crate::{Error, Result};

/// Parses one element per line, entries decreasing and space separated.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_index_set(text: &str) -> Result<IndexSet> {
    let mut elements = Vec::new();
    let mut order = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: no + 1, message };
        let entries = line
            .split_whitespace()
            .map(|tok| tok.parse::<u32>().map_err(|e| parse_err(format!("`{tok}`: {e}"))))
            .collect::<Result<Vec<u32>>>()?;
        let e = MultiIndex::new(entries).map_err(|e| parse_err(e.to_string()))?;
        match order {
            None => order = Some(e.order()),
            Some(d) if d != e.order() => {
                return Err(parse_err(format!("order {} differs from earlier order {d}", e.order())))
            }
            _ => {}
        }
        elements.push((no + 1, e));
    }
    let d = order.ok_or(Error::EmptyInput("index set file"))?;
    let mut set = IndexSet::new(d)?;
    for (line, e) in elements {
        if !set.insert(e)? {
            return Err(Error::Parse { line, message: "duplicate element".into() });
        }
    }
    Ok(set)
}

pub fn format_index_set(set: &IndexSet) -> String {
    let mut out = String::new();
    for e in set {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

pub fn read_index_set(path: &Path) -> Result<IndexSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_index_set(&text)
}

pub fn write_index_set(set: &IndexSet, path: &Path) -> Result<()> {
    fs::write(path, format_index_set(set)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
