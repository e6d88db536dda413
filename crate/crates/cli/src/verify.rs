//! The cross-check battery behind `kappalat verify`.

use crate::budget::Budget;
use kappalat::irreducibles::{kappa as kappa_by_definition, well_separation_witness};
use kappalat::modularity::{
    cover_label, is_extremal_chain, is_extremal_classical, is_extremal_generalized,
    is_left_modular_cover, is_left_modular_def, left_modular_def_witness,
    left_modular_kappa_witness, left_modular_set, LMReport, ModularityError,
};
use kappalat::quiver::{
    count_extremal_chains, extremal_chain_from_linext, extremal_chains, linext_from_extremal_chain,
    phi, psi, LabellingQuiver, QuiverError,
};
use kappalat::{FiniteLattice, Kappa};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
    Budget(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "PASS {}", self.name),
            Status::Fail(w) => write!(f, "FAIL {}: {w}", self.name),
            Status::Skipped(why) => write!(f, "SKIP {}: skipped: {why}", self.name),
            Status::Budget(why) => write!(f, "BUDGET {}: {why}", self.name),
        }
    }
}

/// 1 if any check failed, else 3 if any was refused for budget, else 0.
pub fn exit_code(checks: &[Check]) -> i32 {
    if checks.iter().any(|c| matches!(c.status, Status::Fail(_))) {
        1
    } else if checks.iter().any(|c| matches!(c.status, Status::Budget(_))) {
        3
    } else {
        0
    }
}

fn outcome(r: Result<(), String>) -> Status {
    match r {
        Ok(()) => Status::Pass,
        Err(w) => Status::Fail(w),
    }
}

const NOT_KAPPA: &str = "not a κ-lattice";

pub fn run(l: &FiniteLattice, budget: &Budget) -> Vec<Check> {
    let name = |e: usize| l.name(e);
    let lm = left_modular_set(l);
    let kappa = Kappa::new(l).ok();
    let mut out = Vec::new();
    let mut push = |name: &'static str, status: Status| out.push(Check { name, status });

    push("lm-definition-witnesses", outcome(lm_witnesses(l, &lm)));
    push(
        "extremality-classical-vs-generalized",
        extremality_agreement(l),
    );

    let Some(k) = kappa else {
        for n in [
            "kappa-table",
            "cover-labels",
            "lm-three-criteria",
            "lm-sublattice",
            "quiver-bijection",
            "linext-round-trip",
            "extremal-implies-acyclic",
            "lm-iff-extremal",
        ] {
            push(n, Status::Skipped(NOT_KAPPA.into()));
        }
        return out;
    };
    let q = LabellingQuiver::new(l, &k);

    push(
        "kappa-table",
        outcome(
            k.join_irreducibles()
                .iter()
                .try_for_each(|&j| match kappa_by_definition(l, j) {
                    Ok(m) if m == k.kappa(j) => Ok(()),
                    other => Err(format!(
                        "κ({}) table {} vs definition {other:?}",
                        name(j),
                        name(k.kappa(j))
                    )),
                }),
        ),
    );
    push(
        "cover-labels",
        outcome(l.covers().into_iter().try_for_each(|(x, y)| {
            cover_label(l, &k, x, y)
                .map(|_| ())
                .map_err(|e| format!("{} ⋖ {}: {e}", name(x), name(y)))
        })),
    );
    push(
        "lm-three-criteria",
        outcome((0..l.len()).try_for_each(|t| {
            let d = is_left_modular_def(l, t);
            let kc = left_modular_kappa_witness(l, &k, t).is_none();
            let c = is_left_modular_cover(l, t);
            if d == kc && kc == c {
                Ok(())
            } else {
                Err(format!(
                    "{}: definition {d}, κ criterion {kc}, cover criterion {c}",
                    name(t)
                ))
            }
        })),
    );
    push(
        "lm-sublattice",
        outcome(if !lm.lm_closed_under_meet_join {
            Err("left modular set not closed under meet and join".into())
        } else if !lm.lm_distributive {
            Err("left modular sublattice not distributive".into())
        } else {
            Ok(())
        }),
    );
    push("quiver-bijection", bijection(l, &k, &q, &lm, budget));
    push("linext-round-trip", round_trip(l, &k, &q, budget));

    let extremal = is_extremal_classical(l).is_extremal_classical;
    push(
        "extremal-implies-acyclic",
        outcome(if extremal && !q.acyclic {
            Err("extremal but the labelling quiver has a cycle".into())
        } else {
            Ok(())
        }),
    );
    let ws = well_separation_witness(l, &k);
    push(
        "lm-iff-extremal",
        match ws {
            Some((a, b)) => {
                Status::Skipped(format!("not well-separated at ({}, {})", name(a), name(b)))
            }
            None if lm.is_lm_lattice == extremal => Status::Pass,
            None => Status::Fail(format!(
                "left modular lattice {} but extremal {extremal}",
                lm.is_lm_lattice
            )),
        },
    );
    out
}

fn lm_witnesses(l: &FiniteLattice, lm: &LMReport) -> Result<(), String> {
    for t in 0..l.len() {
        match left_modular_def_witness(l, t) {
            Some((y, z)) => {
                if !l.leq(y, z) || l.meet(l.join(y, t), z) == l.join(y, l.meet(t, z)) {
                    return Err(format!(
                        "witness ({y}, {z}) for {t} does not violate the definition"
                    ));
                }
                if lm.lm_set.contains(&t) {
                    return Err(format!("{t} listed as left modular but has a witness"));
                }
            }
            None if !lm.lm_set.contains(&t) => {
                return Err(format!("{t} missing from the left modular set"))
            }
            None => {}
        }
    }
    if let Some(c) = &lm.lm_chain {
        if !c.is_maximal(l) || c.elements().iter().any(|e| !lm.lm_set.contains(e)) {
            return Err(format!(
                "reported chain {:?} is not a left modular maximal chain",
                c.elements()
            ));
        }
    }
    Ok(())
}

fn extremality_agreement(l: &FiniteLattice) -> Status {
    let classical = is_extremal_classical(l).is_extremal_classical;
    match is_extremal_generalized(l) {
        Ok(r) => {
            let generalized = r.extremal_chain.is_some();
            if generalized != classical {
                return Status::Fail(format!("classical {classical}, generalized {generalized}"));
            }
            if let (Some(c), Ok(k)) = (&r.extremal_chain, Kappa::new(l)) {
                if is_extremal_chain(l, &k, c) != Ok(true) {
                    return Status::Fail(format!(
                        "certificate chain {:?} is not extremal",
                        c.elements()
                    ));
                }
            }
            Status::Pass
        }
        Err(ModularityError::SearchBudgetExceeded(n)) => Status::Budget(format!(
            "bijection search refused for {n} join-irreducibles"
        )),
        Err(e) => Status::Fail(e.to_string()),
    }
}

fn bijection(
    l: &FiniteLattice,
    k: &Kappa,
    q: &LabellingQuiver,
    lm: &LMReport,
    budget: &Budget,
) -> Status {
    let sets = match q.successor_closed_sets(budget.max_sets) {
        Ok(s) => s,
        Err(QuiverError::BudgetExceeded(m)) => {
            return Status::Budget(format!("more than {m} successor-closed sets"))
        }
        Err(e) => return Status::Fail(e.to_string()),
    };
    if sets.len() != lm.lm_set.len() {
        return Status::Fail(format!(
            "{} successor-closed sets, {} left modular elements",
            sets.len(),
            lm.lm_set.len()
        ));
    }
    for s in &sets {
        let t = match psi(l, q, s) {
            Ok(t) => t,
            Err(e) => return Status::Fail(e.to_string()),
        };
        match phi(l, k, t) {
            Ok(back) if back == *s => {}
            other => return Status::Fail(format!("φ(ψ({s:?})) = {other:?}")),
        }
    }
    for &t in &lm.lm_set {
        let s = match phi(l, k, t) {
            Ok(s) => s,
            Err(e) => return Status::Fail(e.to_string()),
        };
        if !q.is_successor_closed(&s) {
            return Status::Fail(format!("φ({}) is not successor-closed", l.name(t)));
        }
        match psi(l, q, &s) {
            Ok(back) if back == t => {}
            other => return Status::Fail(format!("ψ(φ({})) = {other:?}", l.name(t))),
        }
    }
    Status::Pass
}

fn round_trip(l: &FiniteLattice, k: &Kappa, q: &LabellingQuiver, budget: &Budget) -> Status {
    if !q.acyclic {
        return Status::Skipped("labelling quiver has an oriented cycle".into());
    }
    let chains = count_extremal_chains(l, k);
    let linexts = match q.count_linear_extensions() {
        Ok(c) => c,
        Err(e) => return Status::Fail(e.to_string()),
    };
    if chains != linexts {
        return Status::Fail(format!(
            "{linexts} linear extensions, {chains} extremal chains"
        ));
    }
    if chains > budget.max_chains as u128 {
        return Status::Budget(format!(
            "{chains} extremal chains exceed --max-chains {}",
            budget.max_chains
        ));
    }
    let mut seen = BTreeSet::new();
    let iter = match q.linear_extension_iter() {
        Ok(it) => it,
        Err(e) => return Status::Fail(e.to_string()),
    };
    for order in iter {
        let c = match extremal_chain_from_linext(l, q, &order) {
            Ok(c) => c,
            Err(e) => return Status::Fail(format!("{order:?}: {e}")),
        };
        match linext_from_extremal_chain(l, k, &c) {
            Ok(back) if back == order => {}
            other => return Status::Fail(format!("{order:?} maps back to {other:?}")),
        }
        seen.insert(c.elements().to_vec());
    }
    let mut direct = 0u128;
    for c in extremal_chains(l, k) {
        direct += 1;
        if !seen.contains(c.elements()) {
            return Status::Fail(format!(
                "extremal chain {:?} is not the image of a linear extension",
                c.elements()
            ));
        }
    }
    if direct != chains || seen.len() as u128 != chains {
        return Status::Fail(format!(
            "{direct} chains enumerated, {} images, {chains} counted",
            seen.len()
        ));
    }
    Status::Pass
}
