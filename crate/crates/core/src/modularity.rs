//! Left modular elements, cover labels, extremality and trimness.

use crate::bitset::Bitset;
use crate::generators::next_permutation;
use crate::irreducibles::{
    is_distributive, join_irreducibles, meet_irreducibles, Kappa, KappaError,
};
use crate::lattice::{Chain, FiniteLattice};
use thiserror::Error;

/// Largest number of join-irreducibles for which bijections `JI → MI` are
/// searched on lattices that are not κ-lattices.
pub const MAX_LAMBDA_SEARCH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularityError {
    #[error("{0} is not covered by {1}")]
    NotACover(usize, usize),
    #[error("not a maximal chain")]
    NotMaximalChain,
    #[error("no unique label for the cover {0} < {1}")]
    NoUniqueLabel(usize, usize),
    #[error("bijection search refused: {0} join-irreducibles exceeds the limit")]
    SearchBudgetExceeded(usize),
    #[error(transparent)]
    Kappa(#[from] KappaError),
}

/// Least pair `y ≤ z` (by `y`, then `z`) with `(y∨t)∧z ≰ y∨(t∧z)`.
pub fn left_modular_def_witness(l: &FiniteLattice, t: usize) -> Option<(usize, usize)> {
    for y in 0..l.len() {
        // a failure at (y, z) persists at (y, z ∧ (y∨t)), so the interval
        // [y, y∨t] decides whether y has any failing partner
        let yt = l.join(y, t);
        let mut window = l.up_set(y).clone();
        window.intersect_with(l.down_set(yt));
        if window.iter().all(|z| holds(l, t, y, z)) {
            continue;
        }
        return l
            .up_set(y)
            .iter()
            .find(|&z| !holds(l, t, y, z))
            .map(|z| (y, z));
    }
    None
}

fn holds(l: &FiniteLattice, t: usize, y: usize, z: usize) -> bool {
    l.leq(l.meet(l.join(y, t), z), l.join(y, l.meet(t, z)))
}

pub fn is_left_modular_def(l: &FiniteLattice, t: usize) -> bool {
    left_modular_def_witness(l, t).is_none()
}

/// Least join-irreducible `j` for which not exactly one of `j ≤ t`,
/// `t ≤ κ(j)` holds.
pub fn left_modular_kappa_witness(l: &FiniteLattice, k: &Kappa, t: usize) -> Option<usize> {
    k.join_irreducibles()
        .iter()
        .enumerate()
        .find(|&(p, &j)| l.leq(j, t) == l.leq(t, k.kappa_at(p)))
        .map(|(_, &j)| j)
}

pub fn is_left_modular_kappa(l: &FiniteLattice, t: usize) -> Result<bool, KappaError> {
    let k = Kappa::new(l)?;
    Ok(left_modular_kappa_witness(l, &k, t).is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverFailure {
    /// Neither `t∨y = t∨z` nor `t∧y = t∧z`.
    Neither,
    /// Both equalities hold.
    Both,
}

/// Least cover `y ⋖ z` on which not exactly one of `t∨y = t∨z`,
/// `t∧y = t∧z` holds.
pub fn left_modular_cover_witness(
    l: &FiniteLattice,
    t: usize,
) -> Option<(usize, usize, CoverFailure)> {
    for y in 0..l.len() {
        for &z in l.upper_covers(y) {
            let j = l.join(t, y) == l.join(t, z);
            let m = l.meet(t, y) == l.meet(t, z);
            match (j, m) {
                (true, true) => return Some((y, z, CoverFailure::Both)),
                (false, false) => return Some((y, z, CoverFailure::Neither)),
                _ => {}
            }
        }
    }
    None
}

pub fn is_left_modular_cover(l: &FiniteLattice, t: usize) -> bool {
    left_modular_cover_witness(l, t).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMReport {
    pub lm_set: Vec<usize>,
    pub is_lm_lattice: bool,
    /// Lexicographically least maximal chain inside `lm_set`.
    pub lm_chain: Option<Chain>,
    pub lm_closed_under_meet_join: bool,
    pub lm_distributive: bool,
}

pub fn left_modular_set(l: &FiniteLattice) -> LMReport {
    let lm_set: Vec<usize> = (0..l.len())
        .filter(|&t| is_left_modular_def(l, t))
        .collect();
    lm_report_from_set(l, lm_set)
}

/// Builds the report for a known set of left modular elements.
pub fn lm_report_from_set(l: &FiniteLattice, lm_set: Vec<usize>) -> LMReport {
    let member = Bitset::from_items(l.len(), lm_set.iter().copied());
    let lm_chain = least_path(l, |x| member.contains(x), |_, _| true);
    // closure under binary operations gives closure under arbitrary
    // subsets once the bounds are members (empty meet and join)
    let closed = member.contains(l.bottom())
        && member.contains(l.top())
        && lm_set.iter().enumerate().all(|(i, &a)| {
            lm_set[i + 1..]
                .iter()
                .all(|&b| member.contains(l.meet(a, b)) && member.contains(l.join(a, b)))
        });
    let lm_distributive = closed && {
        let sub = FiniteLattice::from_order(lm_set.len(), |i, k| l.leq(lm_set[i], lm_set[k]), None)
            .expect("a sublattice is a lattice");
        is_distributive(&sub)
    };
    LMReport {
        is_lm_lattice: lm_chain.is_some(),
        lm_chain,
        lm_closed_under_meet_join: closed,
        lm_distributive,
        lm_set,
    }
}

/// Lexicographically least bottom-to-top cover path through allowed
/// elements and allowed covers.
pub(crate) fn least_path<E, C>(l: &FiniteLattice, element_ok: E, cover_ok: C) -> Option<Chain>
where
    E: Fn(usize) -> bool,
    C: Fn(usize, usize) -> bool,
{
    // reach[x]: a path from x to the top exists
    let mut reach = vec![false; l.len()];
    let order = l.linear_order();
    for &x in order.iter().rev() {
        reach[x] = element_ok(x)
            && (x == l.top()
                || l.upper_covers(x)
                    .iter()
                    .any(|&y| reach[y] && cover_ok(x, y)));
    }
    if !reach[l.bottom()] {
        return None;
    }
    let mut path = vec![l.bottom()];
    let mut x = l.bottom();
    while x != l.top() {
        x = *l
            .upper_covers(x)
            .iter()
            .find(|&&y| reach[y] && cover_ok(x, y))
            .expect("reachability was computed");
        path.push(x);
    }
    Some(Chain(path))
}

/// The unique join-irreducible `j` with `x∨j = y` and `y∧κ(j) = x`.
pub fn cover_label(
    l: &FiniteLattice,
    k: &Kappa,
    x: usize,
    y: usize,
) -> Result<usize, ModularityError> {
    l.check_element(x)
        .map_err(|_| ModularityError::NotACover(x, y))?;
    l.check_element(y)
        .map_err(|_| ModularityError::NotACover(x, y))?;
    if !l.is_cover(x, y) {
        return Err(ModularityError::NotACover(x, y));
    }
    let mut found = None;
    for (p, &j) in k.join_irreducibles().iter().enumerate() {
        if l.join(x, j) == y && l.meet(y, k.kappa_at(p)) == x {
            if found.is_some() {
                return Err(ModularityError::NoUniqueLabel(x, y));
            }
            found = Some(j);
        }
    }
    found.ok_or(ModularityError::NoUniqueLabel(x, y))
}

/// `min{a : a∨x = y}` when that set has a least element.
pub fn least_join_complement(l: &FiniteLattice, x: usize, y: usize) -> Option<usize> {
    let cands: Vec<usize> = l
        .down_set(y)
        .iter()
        .filter(|&a| l.join(a, x) == y)
        .collect();
    let m = l.meet_set(cands.iter().copied());
    cands.contains(&m).then_some(m)
}

/// A bijection `λ: JI → MI` given as pairs `(j, λ(j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lambda {
    Kappa,
    Explicit(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalityReport {
    pub length: usize,
    pub ji_count: usize,
    pub mi_count: usize,
    pub is_extremal_classical: bool,
    pub extremal_chain: Option<Chain>,
    pub lambda_used: Option<Lambda>,
}

pub fn is_extremal_classical(l: &FiniteLattice) -> ExtremalityReport {
    let length = l.length();
    let ji_count = join_irreducibles(l).len();
    let mi_count = meet_irreducibles(l).len();
    ExtremalityReport {
        length,
        ji_count,
        mi_count,
        is_extremal_classical: length == ji_count && length == mi_count,
        extremal_chain: None,
        lambda_used: None,
    }
}

/// Cover labels along a maximal chain and the join-irreducibles that label
/// none of its covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLabels {
    pub labels: Vec<usize>,
    pub missing: Vec<usize>,
}

impl ChainLabels {
    pub fn is_extremal(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn chain_labels(
    l: &FiniteLattice,
    k: &Kappa,
    chain: &Chain,
) -> Result<ChainLabels, ModularityError> {
    if !chain.is_maximal(l) {
        return Err(ModularityError::NotMaximalChain);
    }
    let labels = chain
        .steps()
        .map(|(x, y)| cover_label(l, k, x, y))
        .collect::<Result<Vec<_>, _>>()?;
    let missing = k
        .join_irreducibles()
        .iter()
        .copied()
        .filter(|j| !labels.contains(j))
        .collect();
    Ok(ChainLabels { labels, missing })
}

pub fn is_extremal_chain(
    l: &FiniteLattice,
    k: &Kappa,
    chain: &Chain,
) -> Result<bool, ModularityError> {
    Ok(chain_labels(l, k, chain)?.is_extremal())
}

/// Searches for a maximal chain satisfying the λ-extremality conditions,
/// with `λ = κ` on κ-lattices and a search over all bijections otherwise.
pub fn is_extremal_generalized(l: &FiniteLattice) -> Result<ExtremalityReport, ModularityError> {
    let mut report = is_extremal_classical(l);
    let ji = join_irreducibles(l);
    let mi = meet_irreducibles(l);
    if let Ok(k) = Kappa::new(l) {
        let lambda: Vec<usize> = (0..ji.len()).map(|p| k.kappa_at(p)).collect();
        if let Some(c) = lambda_chain(l, &ji, &mi, &lambda) {
            report.extremal_chain = Some(c);
            report.lambda_used = Some(Lambda::Kappa);
        }
        return Ok(report);
    }
    if ji.len() != mi.len() {
        return Ok(report);
    }
    if ji.len() > MAX_LAMBDA_SEARCH {
        return Err(ModularityError::SearchBudgetExceeded(ji.len()));
    }
    let mut lambda = mi.clone();
    loop {
        if let Some(c) = lambda_chain(l, &ji, &mi, &lambda) {
            report.extremal_chain = Some(c);
            report.lambda_used = Some(Lambda::Explicit(
                ji.iter().copied().zip(lambda.iter().copied()).collect(),
            ));
            return Ok(report);
        }
        if !next_permutation(&mut lambda) {
            return Ok(report);
        }
    }
}

pub fn find_extremal_chain(l: &FiniteLattice) -> Result<Option<Chain>, ModularityError> {
    Ok(is_extremal_generalized(l)?.extremal_chain)
}

/// Least maximal chain `X` such that every `x ∈ X` satisfies `j ≰ x ⇒
/// x ≤ λ(j)`, and every cover `x ⋖ y` of `X` has a unique `j` with
/// `j ≤ y, j ≰ x`, a unique `m` with `x ≤ m, y ≰ m`, and `λ(j) = m`.
fn lambda_chain(l: &FiniteLattice, ji: &[usize], mi: &[usize], lambda: &[usize]) -> Option<Chain> {
    let element_ok = |x: usize| {
        ji.iter()
            .zip(lambda)
            .all(|(&j, &m)| l.leq(j, x) || l.leq(x, m))
    };
    let cover_ok = |x: usize, y: usize| {
        let mut js = ji
            .iter()
            .enumerate()
            .filter(|&(_, &j)| l.leq(j, y) && !l.leq(j, x));
        let mut ms = mi.iter().filter(|&&m| l.leq(x, m) && !l.leq(y, m));
        match (js.next(), js.next(), ms.next(), ms.next()) {
            (Some((p, _)), None, Some(&m), None) => lambda[p] == m,
            _ => false,
        }
    };
    least_path(l, element_ok, cover_ok)
}

/// Extremal and possessing a maximal chain of left modular elements.
pub fn is_trim(l: &FiniteLattice) -> bool {
    is_extremal_classical(l).is_extremal_classical && left_modular_set(l).is_lm_lattice
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{boolean_lattice, chain_lattice, weak_order};

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (2, 3), (3, 4), (1, 4)], None).unwrap()
    }

    fn by_name(l: &FiniteLattice, s: &str) -> usize {
        (0..l.len()).find(|&a| l.name(a) == s).unwrap()
    }

    #[test]
    fn pentagon_definition() {
        let l = pentagon();
        assert!(is_left_modular_def(&l, 2));
        assert_eq!(left_modular_def_witness(&l, 1), Some((2, 3)));
        assert!(is_left_modular_def(&l, 0) && is_left_modular_def(&l, 4));
    }

    #[test]
    fn pentagon_kappa_and_cover() {
        let l = pentagon();
        let k = Kappa::new(&l).unwrap();
        assert_eq!(left_modular_kappa_witness(&l, &k, 3), None);
        assert_eq!(left_modular_kappa_witness(&l, &k, 1), Some(3));
        assert!(is_left_modular_cover(&l, 2));
        assert_eq!(
            left_modular_cover_witness(&l, 1),
            Some((2, 3, CoverFailure::Both))
        );
    }

    #[test]
    fn pentagon_lm_report() {
        let r = left_modular_set(&pentagon());
        assert_eq!(r.lm_set, vec![0, 2, 3, 4]);
        assert_eq!(r.lm_chain, Some(Chain(vec![0, 2, 3, 4])));
        assert!(r.is_lm_lattice && r.lm_closed_under_meet_join && r.lm_distributive);
    }

    #[test]
    fn pentagon_labels() {
        let l = pentagon();
        let k = Kappa::new(&l).unwrap();
        assert_eq!(cover_label(&l, &k, 3, 4), Ok(1));
        assert_eq!(cover_label(&l, &k, 0, 2), Ok(2));
        assert_eq!(cover_label(&l, &k, 2, 3), Ok(3));
        assert_eq!(
            cover_label(&l, &k, 0, 3),
            Err(ModularityError::NotACover(0, 3))
        );
        for (x, y) in l.covers() {
            assert_eq!(
                least_join_complement(&l, x, y),
                cover_label(&l, &k, x, y).ok()
            );
        }
    }

    #[test]
    fn pentagon_extremality() {
        let l = pentagon();
        let k = Kappa::new(&l).unwrap();
        let c = is_extremal_classical(&l);
        assert_eq!(
            (c.length, c.ji_count, c.mi_count, c.is_extremal_classical),
            (3, 3, 3, true)
        );
        let good = Chain(vec![0, 2, 3, 4]);
        let labels = chain_labels(&l, &k, &good).unwrap();
        assert_eq!(labels.labels, vec![2, 3, 1]);
        assert!(labels.is_extremal());
        assert_eq!(is_extremal_chain(&l, &k, &Chain(vec![0, 1, 4])), Ok(false));
        assert_eq!(
            is_extremal_chain(&l, &k, &Chain(vec![0, 2, 4])),
            Err(ModularityError::NotMaximalChain)
        );
        let g = is_extremal_generalized(&l).unwrap();
        assert_eq!(g.extremal_chain, Some(good));
        assert_eq!(g.lambda_used, Some(Lambda::Kappa));
        assert!(is_trim(&l));
    }

    #[test]
    fn hexagon() {
        let l = weak_order(3).unwrap();
        let r = left_modular_set(&l);
        assert_eq!(r.lm_set, vec![l.bottom(), l.top()]);
        assert!(!r.is_lm_lattice);
        assert!(!is_left_modular_def(&l, by_name(&l, "213")));
        let c = is_extremal_classical(&l);
        assert_eq!((c.length, c.ji_count, c.mi_count), (3, 4, 4));
        assert!(!c.is_extremal_classical);
        assert_eq!(find_extremal_chain(&l), Ok(None));
        assert!(!is_trim(&l));
    }

    #[test]
    fn boolean_and_chain() {
        let b = boolean_lattice(3).unwrap();
        let r = left_modular_set(&b);
        assert_eq!(r.lm_set.len(), 8);
        assert!(is_trim(&b));
        let c = chain_lattice(4);
        let k = Kappa::new(&c).unwrap();
        for ch in c.maximal_chains(10).unwrap() {
            assert_eq!(is_extremal_chain(&c, &k, &ch), Ok(true));
        }
        assert_eq!(cover_label(&b, &Kappa::new(&b).unwrap(), 0, 4), Ok(4));
    }

    #[test]
    fn m3_uses_bijection_search() {
        let m3 =
            FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], None)
                .unwrap();
        let r = is_extremal_generalized(&m3).unwrap();
        assert!(!r.is_extremal_classical);
        assert_eq!(r.extremal_chain, None);
        // M3 is modular, so every element is left modular
        let lm = left_modular_set(&m3);
        assert_eq!(lm.lm_set, vec![0, 1, 2, 3, 4]);
        assert!(lm.is_lm_lattice && !lm.lm_distributive);
    }

    #[test]
    fn generalized_agrees_without_kappa() {
        // M3 with one atom pushed under an extra element
        let l = FiniteLattice::from_covers(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
            None,
        )
        .unwrap();
        assert!(Kappa::new(&l).is_err());
        let c = is_extremal_classical(&l);
        let g = is_extremal_generalized(&l).unwrap();
        assert_eq!(c.is_extremal_classical, g.extremal_chain.is_some());
    }
}
