//! Graphviz output. Hasse arrows point upward, `x -> z` for `x ⋖ z`.

use crate::meta::Meta;
use crate::CliError;
use kappalat::modularity::cover_label;
use kappalat::quiver::LabellingQuiver;
use kappalat::{FiniteLattice, Kappa};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotKind {
    Hasse,
    Labelling,
    Brick,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(l: &FiniteLattice, meta: &Meta, kind: DotKind) -> Result<String, CliError> {
    let mut out = String::new();
    match kind {
        DotKind::Hasse => {
            let k = Kappa::new(l).ok();
            out.push_str("digraph hasse {\n");
            for e in 0..l.len() {
                let _ = writeln!(out, "  n{e} [label={}];", quote(&l.name(e)));
            }
            for (x, y) in l.covers() {
                match k.as_ref().and_then(|k| cover_label(l, k, x, y).ok()) {
                    Some(j) => {
                        let _ = writeln!(out, "  n{x} -> n{y} [label={}];", quote(&l.name(j)));
                    }
                    None => {
                        let _ = writeln!(out, "  n{x} -> n{y};");
                    }
                }
            }
        }
        DotKind::Labelling => {
            let k =
                Kappa::new(l).map_err(|e| CliError::Input(format!("not a kappa-lattice: {e}")))?;
            let q = LabellingQuiver::new(l, &k);
            out.push_str("digraph labelling {\n");
            for &j in &q.vertices {
                let _ = writeln!(out, "  n{j} [label={}];", quote(&l.name(j)));
            }
            for &(i, j) in &q.arrows {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
        }
        DotKind::Brick => {
            let model = meta.algebra.as_ref().ok_or_else(|| {
                CliError::Input("brick graph needs a `# meta algebra` line".into())
            })?;
            let bq = model.brick_quiver();
            out.push_str("digraph bricks {\n");
            for (i, b) in bq.vertices.iter().enumerate() {
                let _ = writeln!(out, "  b{i} [label={}];", quote(&b.to_string()));
            }
            for &(x, y) in &bq.arrows {
                let _ = writeln!(out, "  b{x} -> b{y};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
