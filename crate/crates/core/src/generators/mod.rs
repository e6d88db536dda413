//! Lattice families used as benchmarks and controls.

mod nakayama;

pub use nakayama::{
    AlgebraError, AlgebraModel, BrickQuiver, Interval, TorsLattice, DEFAULT_MAX_INDECOMPOSABLES,
};

use crate::bitset::Bitset;
use crate::lattice::{FiniteLattice, LatticeError};
use std::collections::HashMap;
use thiserror::Error;

/// Largest element count produced by the generic families.
pub const MAX_GENERATED: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{family} would have more than {limit} elements")]
    BudgetExceeded { family: &'static str, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Subsets of a `k`-element set under inclusion. Element `i` is the subset
/// whose bitmask is `i`.
pub fn boolean_lattice(k: usize) -> Result<FiniteLattice, GeneratorError> {
    if k > 16 {
        return Err(GeneratorError::BudgetExceeded {
            family: "boolean",
            limit: MAX_GENERATED,
        });
    }
    let n = 1usize << k;
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| {
            (0..k)
                .filter(move |b| s >> b & 1 == 0)
                .map(move |b| (s, s | 1 << b))
        })
        .collect();
    let names = (0..n)
        .map(|s| {
            let members: Vec<String> = (0..k)
                .filter(|b| s >> b & 1 == 1)
                .map(|b| (b + 1).to_string())
                .collect();
            Some(format!("{{{}}}", members.join(",")))
        })
        .collect();
    Ok(FiniteLattice::from_covers(n, &covers, Some(names))?)
}

/// The chain `0 < 1 < … < m` of length `m`.
pub fn chain_lattice(m: usize) -> FiniteLattice {
    let covers: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
    FiniteLattice::from_covers(m + 1, &covers, None).expect("a chain is a lattice")
}

/// A finite poset on `0..n` given by generating relations `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    // below[b] = {a : a < b}
    below: Vec<Bitset>,
}

impl Poset {
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Poset, GeneratorError> {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(GeneratorError::InvalidParameter(format!(
                    "relation {a}<{b} out of range for {n} points"
                )));
            }
            succ[a].push(b);
        }
        // reflexive-transitive closure by DFS from each point
        let mut below = vec![Bitset::new(n); n];
        for a in 0..n {
            let mut seen = Bitset::new(n);
            let mut stack = succ[a].clone();
            while let Some(b) = stack.pop() {
                if b == a {
                    return Err(GeneratorError::InvalidParameter(format!(
                        "relations contain a cycle through {a}"
                    )));
                }
                if !seen.contains(b) {
                    seen.insert(b);
                    below[b].insert(a);
                    stack.extend(succ[b].iter().copied());
                }
            }
        }
        Ok(Poset { n, below })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }
}

/// Down-sets of `poset` under inclusion, ordered by (size, members).
pub fn downset_lattice(poset: &Poset) -> Result<FiniteLattice, GeneratorError> {
    let n = poset.len();
    // strictly smaller points have strictly smaller down-sets
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (poset.below[x].len(), x));
    let mut sets: Vec<Bitset> = Vec::new();
    let mut current = Bitset::new(n);
    enumerate_downsets(poset, &order, 0, &mut current, &mut sets)?;
    sets.sort_by_key(|s| (s.len(), s.to_vec()));
    let index: HashMap<&Bitset, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        for x in 0..n {
            if !s.contains(x) && poset.below[x].is_subset(s) {
                let mut t = s.clone();
                t.insert(x);
                covers.push((i, index[&t]));
            }
        }
    }
    let names = sets
        .iter()
        .map(|s| {
            let m: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            Some(format!("{{{}}}", m.join(",")))
        })
        .collect();
    Ok(FiniteLattice::from_covers(
        sets.len(),
        &covers,
        Some(names),
    )?)
}

fn enumerate_downsets(
    poset: &Poset,
    order: &[usize],
    pos: usize,
    current: &mut Bitset,
    out: &mut Vec<Bitset>,
) -> Result<(), GeneratorError> {
    let Some(&x) = order.get(pos) else {
        if out.len() == MAX_GENERATED {
            return Err(GeneratorError::BudgetExceeded {
                family: "downset",
                limit: MAX_GENERATED,
            });
        }
        out.push(current.clone());
        return Ok(());
    };
    enumerate_downsets(poset, order, pos + 1, current, out)?;
    if poset.below[x].is_subset(current) {
        current.insert(x);
        enumerate_downsets(poset, order, pos + 1, current, out)?;
        current.remove(x);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn all(k: usize) -> Vec<Tree> {
        if k == 0 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for left in 0..k {
            for l in Tree::all(left) {
                for r in Tree::all(k - 1 - left) {
                    out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }

    fn render(&self, out: &mut String) {
        match self {
            Tree::Leaf => out.push('x'),
            Tree::Node(l, r) => {
                out.push('(');
                l.render(out);
                r.render(out);
                out.push(')');
            }
        }
    }

    /// All trees reachable by one right rotation `((A B) C) → (A (B C))`.
    fn right_rotations(&self) -> Vec<Tree> {
        let mut out = Vec::new();
        if let Tree::Node(l, r) = self {
            if let Tree::Node(a, b) = l.as_ref() {
                out.push(Tree::Node(
                    a.clone(),
                    Box::new(Tree::Node(b.clone(), r.clone())),
                ));
            }
            for l2 in l.right_rotations() {
                out.push(Tree::Node(Box::new(l2), r.clone()));
            }
            for r2 in r.right_rotations() {
                out.push(Tree::Node(l.clone(), Box::new(r2)));
            }
        }
        out
    }
}

fn catalan(k: usize) -> u128 {
    (0..k).fold(1u128, |c, i| c * 2 * (2 * i as u128 + 1) / (i as u128 + 2))
}

/// Binary trees with `k` internal nodes under right rotation.
pub fn tamari(k: usize) -> Result<FiniteLattice, GeneratorError> {
    if catalan(k) > MAX_GENERATED as u128 {
        return Err(GeneratorError::BudgetExceeded {
            family: "tamari",
            limit: MAX_GENERATED,
        });
    }
    let trees = Tree::all(k);
    let names: Vec<String> = trees
        .iter()
        .map(|t| {
            let mut s = String::new();
            t.render(&mut s);
            s
        })
        .collect();
    let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut covers = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for r in t.right_rotations() {
            covers.push((i, index[&r]));
        }
    }
    Ok(FiniteLattice::from_covers(
        trees.len(),
        &covers,
        Some(names.into_iter().map(Some).collect()),
    )?)
}

/// Right weak order on permutations of `1..=n`, `2 ≤ n ≤ 6`. Elements are
/// the permutations in lexicographic order of their one-line notation; the
/// identity is element 0.
pub fn weak_order(n: usize) -> Result<FiniteLattice, GeneratorError> {
    if !(2..=6).contains(&n) {
        return Err(GeneratorError::InvalidParameter(format!(
            "weak order needs 2 <= n <= 6, got {n}"
        )));
    }
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut p: Vec<u8> = (1..=n as u8).collect();
    loop {
        perms.push(p.clone());
        if !next_permutation(&mut p) {
            break;
        }
    }
    let index: HashMap<&Vec<u8>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (i, w) in perms.iter().enumerate() {
        for s in 0..n - 1 {
            if w[s] < w[s + 1] {
                let mut ws = w.clone();
                ws.swap(s, s + 1);
                covers.push((i, index[&ws]));
            }
        }
    }
    let names = perms
        .iter()
        .map(|w| Some(w.iter().map(|d| char::from(b'0' + d)).collect()))
        .collect();
    Ok(FiniteLattice::from_covers(
        perms.len(),
        &covers,
        Some(names),
    )?)
}

pub(crate) fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_sizes() {
        let b = boolean_lattice(3).unwrap();
        assert_eq!(b.len(), 8);
        assert_eq!(b.length(), 3);
        assert_eq!(b.name(5), "{1,3}");
        assert!(boolean_lattice(17).is_err());
        assert_eq!(boolean_lattice(0).unwrap().len(), 1);
    }

    #[test]
    fn chain_shape() {
        let c = chain_lattice(4);
        assert_eq!(c.len(), 5);
        assert_eq!(c.count_maximal_chains(), 1);
    }

    #[test]
    fn downsets_of_antichain_and_chain() {
        let anti = Poset::new(3, &[]).unwrap();
        assert_eq!(downset_lattice(&anti).unwrap().len(), 8);
        let ch = Poset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(downset_lattice(&ch).unwrap().len(), 4);
        // a relation pointing from a larger index to a smaller one
        let rev = Poset::new(3, &[(2, 0)]).unwrap();
        let l = downset_lattice(&rev).unwrap();
        // downsets: {}, {1}, {2}, {1,2}, {0,2}, {0,1,2}
        assert_eq!(l.len(), 6);
        assert!(Poset::new(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn tamari_sizes() {
        for (k, c) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 14), (5, 42)] {
            assert_eq!(tamari(k).unwrap().len(), c);
        }
        let t3 = tamari(3).unwrap();
        assert_eq!(t3.cover_count(), 5);
        assert_eq!(t3.name(t3.bottom()), "(((xx)x)x)");
        assert_eq!(t3.name(t3.top()), "(x(x(xx)))");
        assert!(tamari(12).is_err());
    }

    #[test]
    fn weak_order_shapes() {
        let w3 = weak_order(3).unwrap();
        assert_eq!(w3.len(), 6);
        assert_eq!(w3.length(), 3);
        assert_eq!(
            (w3.name(w3.bottom()), w3.name(w3.top())),
            ("123".into(), "321".into())
        );
        let w4 = weak_order(4).unwrap();
        assert_eq!((w4.len(), w4.length()), (24, 6));
        assert_eq!(weak_order(2).unwrap().len(), 2);
        assert!(weak_order(7).is_err());
        assert!(weak_order(1).is_err());
    }
}
