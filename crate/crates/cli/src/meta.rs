//! `# meta` comment lines carried alongside a lattice-v1 file.
//!
//! ```text
//! # meta algebra nakayama n=3 forbid=1..3
//! # meta brick 4 [1,1] [1,2]
//! ```
//!
//! The parser ignores comments, so metadata never affects the lattice.

use crate::CliError;
use kappalat::generators::{AlgebraModel, Interval, TorsLattice};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Debug, Clone, Default)]
pub struct Meta {
    pub algebra: Option<AlgebraModel>,
    /// Bricks of the torsion class at each element.
    pub bricks: BTreeMap<usize, Vec<Interval>>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

/// `a..b` as used on the command line.
pub fn parse_range(s: &str) -> Option<Interval> {
    let (a, b) = s.trim().split_once("..")?;
    Some(Interval::new(
        a.trim().parse().ok()?,
        b.trim().parse().ok()?,
    ))
}

/// `[a,b]` as printed by `Interval`'s `Display`.
pub fn parse_bracketed(s: &str) -> Option<Interval> {
    let (a, b) = s.strip_prefix('[')?.strip_suffix(']')?.split_once(',')?;
    Some(Interval::new(
        a.trim().parse().ok()?,
        b.trim().parse().ok()?,
    ))
}

impl Meta {
    pub fn parse(text: &str, n: usize) -> Result<Meta, CliError> {
        let mut meta = Meta::default();
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let Some(rest) = line.trim().strip_prefix('#').map(str::trim) else {
                continue;
            };
            let Some(rest) = rest.strip_prefix("meta ") else {
                continue;
            };
            let mut toks = rest.split_whitespace();
            match toks.next() {
                Some("algebra") => {
                    if toks.next() != Some("nakayama") {
                        return Err(bad(no, "only `nakayama` algebras are supported"));
                    }
                    let mut vertices = None;
                    let mut forbidden = Vec::new();
                    for tok in toks {
                        if let Some(v) = tok.strip_prefix("n=") {
                            vertices = Some(
                                v.parse::<usize>()
                                    .map_err(|_| bad(no, format!("bad `{tok}`")))?,
                            );
                        } else if let Some(v) = tok.strip_prefix("forbid=") {
                            for r in v.split(',').filter(|r| !r.is_empty()) {
                                forbidden.push(
                                    parse_range(r)
                                        .ok_or_else(|| bad(no, format!("bad interval `{r}`")))?,
                                );
                            }
                        } else {
                            return Err(bad(no, format!("unexpected `{tok}`")));
                        }
                    }
                    let vertices = vertices.ok_or_else(|| bad(no, "missing `n=`"))?;
                    let model =
                        AlgebraModel::nakayama(vertices, &forbidden).map_err(|e| bad(no, e))?;
                    meta.algebra = Some(model);
                }
                Some("brick") => {
                    let e = toks
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .filter(|&e| e < n)
                        .ok_or_else(|| bad(no, "bad element index"))?;
                    let list = toks
                        .map(|t| {
                            parse_bracketed(t).ok_or_else(|| bad(no, format!("bad brick `{t}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if meta.bricks.insert(e, list).is_some() {
                        return Err(bad(no, format!("element {e} listed twice")));
                    }
                }
                other => {
                    return Err(bad(
                        no,
                        format!("unknown meta kind `{}`", other.unwrap_or("")),
                    ))
                }
            }
        }
        Ok(meta)
    }

    /// Brick sets as masks over the model's indecomposables, when every
    /// element has a brick line.
    pub fn masks(&self, n: usize) -> Result<Option<Vec<u64>>, CliError> {
        let Some(model) = &self.algebra else {
            return Ok(None);
        };
        if self.bricks.len() != n {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(n);
        for list in self.bricks.values() {
            let mut mask = 0u64;
            for &b in list {
                let i = model.index_of(b).ok_or_else(|| {
                    CliError::Input(format!("{b} is not a module of the algebra"))
                })?;
                mask |= 1 << i;
            }
            out.push(mask);
        }
        Ok(Some(out))
    }

    pub fn render(t: &TorsLattice) -> String {
        let mut out = String::new();
        let forbid: Vec<String> = t
            .model
            .forbidden()
            .iter()
            .map(|i| format!("{}..{}", i.a, i.b))
            .collect();
        let _ = write!(out, "# meta algebra nakayama n={}", t.model.vertices());
        if !forbid.is_empty() {
            let _ = write!(out, " forbid={}", forbid.join(","));
        }
        out.push('\n');
        for e in 0..t.lattice.len() {
            let _ = write!(out, "# meta brick {e}");
            for b in t.element_bricks(e) {
                let _ = write!(out, " {b}");
            }
            out.push('\n');
        }
        out
    }
}
