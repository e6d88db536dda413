//! The line-oriented `lattice-v1` text format.
//!
//! ```text
//! lattice-v1
//! n=5
//! name 0 bot
//! cover 0 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Names run to the end
//! of the line.

use super::{FiniteLattice, LatticeError};
use thiserror::Error;

pub const HEADER: &str = "lattice-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((no, other)) => {
            return Err(syntax(no, format!("expected `{HEADER}`, found `{other}`")))
        }
        None => return Err(syntax(1, "empty input")),
    }
    let n = match lines.next() {
        Some((no, l)) => {
            let v = l
                .strip_prefix("n=")
                .ok_or_else(|| syntax(no, "expected `n=<count>`"))?;
            v.trim()
                .parse::<usize>()
                .map_err(|_| syntax(no, format!("bad element count `{v}`")))?
        }
        None => return Err(syntax(1, "missing `n=<count>` line")),
    };
    if n == 0 {
        return Err(LatticeError::Empty.into());
    }

    let mut names: Vec<Option<String>> = vec![None; n];
    let mut covers = Vec::new();
    let index = |no: usize, tok: Option<&str>| -> Result<usize, ParseError> {
        let tok = tok.ok_or_else(|| syntax(no, "missing element index"))?;
        let i = tok
            .parse::<usize>()
            .map_err(|_| syntax(no, format!("bad element index `{tok}`")))?;
        if i >= n {
            return Err(syntax(no, format!("element {i} out of range for n={n}")));
        }
        Ok(i)
    };
    for (no, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim_start();
        match kw {
            "name" => {
                let (idx, name) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let i = index(no, Some(idx).filter(|s| !s.is_empty()))?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(syntax(no, "empty name"));
                }
                if names[i].is_some() {
                    return Err(syntax(no, format!("element {i} named twice")));
                }
                names[i] = Some(name.to_string());
            }
            "cover" => {
                let mut toks = rest.split_whitespace();
                let a = index(no, toks.next())?;
                let b = index(no, toks.next())?;
                if toks.next().is_some() {
                    return Err(syntax(no, "trailing tokens after cover"));
                }
                covers.push((a, b));
            }
            other => return Err(syntax(no, format!("unknown directive `{other}`"))),
        }
    }
    Ok(FiniteLattice::from_covers(n, &covers, Some(names))?)
}

/// Canonical text: header, count, names by index, covers sorted.
pub fn serialize_lattice(l: &FiniteLattice) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n={}\n", l.len()));
    for (i, name) in l.names().iter().enumerate() {
        if let Some(name) = name {
            out.push_str(&format!("name {i} {name}\n"));
        }
    }
    for (a, b) in l.covers() {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out
}
