//! The analysis report behind `kappalat analyze`.

use crate::budget::Budget;
use crate::meta::Meta;
use crate::CliError;
use kappalat::irreducibles::{
    is_distributive, semidistributivity_witness, well_separation_witness, SdLaw,
};
use kappalat::modularity::{
    is_extremal_classical, is_extremal_generalized, left_modular_def_witness, left_modular_set,
    Lambda, ModularityError,
};
use kappalat::quiver::{count_extremal_chains, LabellingQuiver, QuiverError};
use kappalat::{Bitset, Chain, FiniteLattice, Kappa};
use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    #[serde(rename = "report-v")]
    pub version: u32,
    pub n: usize,
    pub length: usize,
    pub ji_count: usize,
    pub mi_count: usize,
    pub flags: Flags,
    pub left_modular: LeftModular,
    pub extremal: Extremal,
    pub trim: bool,
    /// Equal to the left modular set; reported for trim lattices only.
    pub spine: Option<Vec<String>>,
    pub kappa: Option<Vec<KappaEntry>>,
    pub quiver: Option<QuiverSection>,
    pub bricks: Option<BrickSection>,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub lattice_valid: bool,
    pub semidistributive: bool,
    pub distributive: bool,
    pub kappa_lattice: bool,
    pub well_separated: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeftModular {
    pub count: usize,
    pub elements: Vec<String>,
    pub lattice: bool,
    pub chain: Option<Vec<String>>,
    pub closed_under_meet_join: bool,
    pub distributive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Extremal {
    pub classical: bool,
    /// `null` when the bijection search was refused.
    pub generalized: Option<bool>,
    pub lambda: &'static str,
    pub chain: Option<Vec<String>>,
    pub lambda_pairs: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaEntry {
    pub j: String,
    pub kappa: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    pub arrows: Vec<[String; 2]>,
    pub acyclic: bool,
    pub successor_closed_sets: usize,
    pub linear_extensions: Option<u128>,
    pub extremal_chains: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct BrickSection {
    pub brick_directed: bool,
    pub splitting: Vec<String>,
    pub splitting_equals_left_modular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SdTriple {
    pub law: &'static str,
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LmFailure {
    pub t: String,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    pub not_semidistributive: Option<SdTriple>,
    /// `x, y, z` with `x∧(y∨z) ≠ (x∧y)∨(x∧z)`.
    pub not_distributive: Option<[String; 3]>,
    pub not_kappa_lattice: Option<String>,
    pub not_well_separated: Option<[String; 2]>,
    /// Pairs `y ≤ z` with `(y∨t)∧z ≠ y∨(t∧z)`.
    pub not_left_modular: Vec<LmFailure>,
    /// Left modular elements reachable from the bottom by covers; the top
    /// is missing from this set exactly when there is no left modular
    /// maximal chain.
    pub not_left_modular_lattice: Option<Vec<String>>,
    pub not_extremal: Option<String>,
    pub not_trim: Option<String>,
}

fn names(l: &FiniteLattice, items: impl IntoIterator<Item = usize>) -> Vec<String> {
    items.into_iter().map(|e| l.name(e)).collect()
}

fn chain_names(l: &FiniteLattice, c: &Chain) -> Vec<String> {
    names(l, c.elements().iter().copied())
}

/// Least `(x, y, z)` with `x` join-irreducible breaking distributivity; if
/// some triple breaks it, one with join-irreducible `x` does.
fn distributivity_witness(l: &FiniteLattice) -> Option<(usize, usize, usize)> {
    let ji = kappalat::irreducibles::join_irreducibles(l);
    for &x in &ji {
        for y in 0..l.len() {
            for z in 0..l.len() {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn lm_reachable(l: &FiniteLattice, lm: &[usize]) -> Vec<usize> {
    let member = Bitset::from_items(l.len(), lm.iter().copied());
    let mut seen = Bitset::new(l.len());
    let mut stack = vec![l.bottom()];
    seen.insert(l.bottom());
    while let Some(x) = stack.pop() {
        for &y in l.upper_covers(x) {
            if member.contains(y) && !seen.contains(y) {
                seen.insert(y);
                stack.push(y);
            }
        }
    }
    seen.to_vec()
}

pub fn analyze(
    l: &FiniteLattice,
    meta: &Meta,
    budget: &Budget,
) -> Result<AnalysisReport, CliError> {
    let sd = semidistributivity_witness(l);
    let distributive = is_distributive(l);
    let kappa = Kappa::new(l);
    let k = kappa.as_ref().ok();
    let ws = k.map(|k| well_separation_witness(l, k));
    let lm = left_modular_set(l);
    let classical = is_extremal_classical(l);
    let generalized = match is_extremal_generalized(l) {
        Ok(r) => Some(r),
        Err(ModularityError::SearchBudgetExceeded(_)) => None,
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let trim = classical.is_extremal_classical && lm.is_lm_lattice;

    let quiver = match k {
        Some(k) => {
            let q = LabellingQuiver::new(l, k);
            let sets = q
                .successor_closed_sets(budget.max_sets)
                .map_err(|e| match e {
                    QuiverError::BudgetExceeded(m) => CliError::Budget(format!(
                        "more than {m} successor-closed sets (raise --max-sets)"
                    )),
                    other => CliError::Input(other.to_string()),
                })?;
            let linext = if q.acyclic {
                Some(
                    q.count_linear_extensions()
                        .map_err(|e| CliError::Input(e.to_string()))?,
                )
            } else {
                None
            };
            Some(QuiverSection {
                vertices: names(l, q.vertices.iter().copied()),
                arrows: q
                    .arrows
                    .iter()
                    .map(|&(a, b)| [l.name(a), l.name(b)])
                    .collect(),
                acyclic: q.acyclic,
                successor_closed_sets: sets.len(),
                linear_extensions: linext,
                extremal_chains: count_extremal_chains(l, k),
            })
        }
        None => None,
    };

    let bricks = match (&meta.algebra, meta.masks(l.len())?) {
        (Some(model), Some(masks)) => {
            let splitting: Vec<usize> = (0..l.len())
                .filter(|&e| model.is_brick_splitting(masks[e]))
                .collect();
            Some(BrickSection {
                brick_directed: model.is_brick_directed(),
                splitting_equals_left_modular: splitting == lm.lm_set,
                splitting: names(l, splitting),
            })
        }
        _ => None,
    };

    let (gen_verdict, lambda_kind, ext_chain, lambda_pairs) = match &generalized {
        Some(r) => {
            let kind = if k.is_some() {
                "kappa"
            } else {
                "bijection-search"
            };
            let pairs = match &r.lambda_used {
                Some(Lambda::Explicit(p)) => {
                    Some(p.iter().map(|&(j, m)| [l.name(j), l.name(m)]).collect())
                }
                _ => None,
            };
            (
                Some(r.extremal_chain.is_some()),
                kind,
                r.extremal_chain.as_ref().map(|c| chain_names(l, c)),
                pairs,
            )
        }
        None => (None, "refused", None, None),
    };

    let not_left_modular = (0..l.len())
        .filter_map(|t| {
            left_modular_def_witness(l, t).map(|(y, z)| LmFailure {
                t: l.name(t),
                y: l.name(y),
                z: l.name(z),
            })
        })
        .collect();

    let witnesses = Witnesses {
        not_semidistributive: sd.map(|w| SdTriple {
            law: match w.law {
                SdLaw::Join => "join",
                SdLaw::Meet => "meet",
            },
            x: l.name(w.x),
            y: l.name(w.y),
            z: l.name(w.z),
        }),
        not_distributive: if distributive {
            None
        } else {
            distributivity_witness(l).map(|(x, y, z)| [l.name(x), l.name(y), l.name(z)])
        },
        not_kappa_lattice: kappa.as_ref().err().map(|e| e.to_string()),
        not_well_separated: ws.flatten().map(|(a, b)| [l.name(a), l.name(b)]),
        not_left_modular,
        not_left_modular_lattice: if lm.is_lm_lattice {
            None
        } else {
            Some(names(l, lm_reachable(l, &lm.lm_set)))
        },
        not_extremal: if classical.is_extremal_classical {
            None
        } else {
            Some(format!(
                "length {} but {} join-irreducibles and {} meet-irreducibles",
                classical.length, classical.ji_count, classical.mi_count
            ))
        },
        not_trim: match (classical.is_extremal_classical, lm.is_lm_lattice) {
            (true, true) => None,
            (false, true) => Some("not extremal".into()),
            (true, false) => Some("not left modular".into()),
            (false, false) => Some("neither extremal nor left modular".into()),
        },
    };

    Ok(AnalysisReport {
        version: REPORT_VERSION,
        n: l.len(),
        length: classical.length,
        ji_count: classical.ji_count,
        mi_count: classical.mi_count,
        flags: Flags {
            lattice_valid: true,
            semidistributive: sd.is_none(),
            distributive,
            kappa_lattice: k.is_some(),
            well_separated: ws.map(|w| w.is_none()),
        },
        left_modular: LeftModular {
            count: lm.lm_set.len(),
            elements: names(l, lm.lm_set.iter().copied()),
            lattice: lm.is_lm_lattice,
            chain: lm.lm_chain.as_ref().map(|c| chain_names(l, c)),
            closed_under_meet_join: lm.lm_closed_under_meet_join,
            distributive: lm.lm_distributive,
        },
        extremal: Extremal {
            classical: classical.is_extremal_classical,
            generalized: gen_verdict,
            lambda: lambda_kind,
            chain: ext_chain,
            lambda_pairs,
        },
        trim,
        spine: if trim {
            Some(names(l, lm.lm_set.iter().copied()))
        } else {
            None
        },
        kappa: k.map(|k| {
            k.join_irreducibles()
                .iter()
                .map(|&j| KappaEntry {
                    j: l.name(j),
                    kappa: l.name(k.kappa(j)),
                })
                .collect()
        }),
        quiver,
        bricks,
        witnesses,
    })
}

pub fn to_json(r: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Indented `key: value` rendering of the same fields as the JSON form.
pub fn to_text(r: &AnalysisReport) -> String {
    let v = serde_json::to_value(r).expect("report serializes");
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (key, val) in &map {
            write_entry(&mut out, 0, key, val);
        }
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn write_entry(out: &mut String, depth: usize, key: &str, val: &Value) {
    let pad = "  ".repeat(depth);
    let key = key.replace('_', " ");
    match val {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                write_entry(out, depth + 1, k, v);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                out.push_str(&format!("{pad}  - {}\n", inline(item)));
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", inline(other))),
    }
}
