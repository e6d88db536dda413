//! The labelling quiver of a κ-lattice: successor-closed sets, the
//! correspondence with left modular elements, and linear extensions versus
//! extremal chains.

use crate::bitset::Bitset;
use crate::irreducibles::{Kappa, KappaError};
use crate::lattice::{Chain, FiniteLattice};
use crate::modularity::{chain_labels, left_modular_kappa_witness, ModularityError};
use std::collections::HashMap;
use thiserror::Error;

/// Default cap on enumerated successor-closed sets and linear extensions.
pub const DEFAULT_MAX_ENUMERATION: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("enumeration exceeded {0} results")]
    BudgetExceeded(usize),
    #[error("the quiver has an oriented cycle")]
    NotAcyclic,
    #[error("element {0} is not left modular")]
    NotLeftModular(usize),
    #[error("set is not successor-closed: arrow {0} -> {1} leaves it")]
    NotSuccessorClosed(usize, usize),
    #[error("not a linear extension")]
    NotLinearExtension,
    #[error("not an extremal chain")]
    NotExtremalChain,
    #[error(transparent)]
    Kappa(#[from] KappaError),
    #[error(transparent)]
    Modularity(#[from] ModularityError),
}

/// Vertices are the join-irreducibles; `i → j` iff `i ≠ j` and `i ≰ κ(j)`.
/// Vertices are addressed by position in `vertices` unless noted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabellingQuiver {
    pub vertices: Vec<usize>,
    /// Arrows as element pairs `(i, j)`, lexicographically sorted.
    pub arrows: Vec<(usize, usize)>,
    pub acyclic: bool,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    // reach[p]: positions reachable from p, including p
    reach: Vec<Bitset>,
}

impl LabellingQuiver {
    pub fn new(l: &FiniteLattice, k: &Kappa) -> LabellingQuiver {
        let vertices = k.join_irreducibles().to_vec();
        let v = vertices.len();
        let mut succ = vec![Vec::new(); v];
        let mut pred = vec![Vec::new(); v];
        let mut arrows = Vec::new();
        for (p, &i) in vertices.iter().enumerate() {
            for q in 0..v {
                if p != q && !l.leq(i, k.kappa_at(q)) {
                    succ[p].push(q);
                    pred[q].push(p);
                    arrows.push((i, vertices[q]));
                }
            }
        }
        let reach: Vec<Bitset> = (0..v)
            .map(|p| {
                let mut seen = Bitset::new(v);
                let mut stack = vec![p];
                seen.insert(p);
                while let Some(x) = stack.pop() {
                    for &y in &succ[x] {
                        if !seen.contains(y) {
                            seen.insert(y);
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect();
        let acyclic = (0..v).all(|p| succ[p].iter().all(|&q| !reach[q].contains(p)));
        LabellingQuiver {
            vertices,
            arrows,
            acyclic,
            succ,
            pred,
            reach,
        }
    }

    pub fn build(l: &FiniteLattice) -> Result<LabellingQuiver, KappaError> {
        Ok(LabellingQuiver::new(l, &Kappa::new(l)?))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, j: usize) -> Option<usize> {
        self.vertices.binary_search(&j).ok()
    }

    /// Successor positions of position `p`.
    pub fn successors(&self, p: usize) -> &[usize] {
        &self.succ[p]
    }

    /// The first arrow leaving `members` (element indices), if any.
    pub fn escaping_arrow(&self, members: &[usize]) -> Option<(usize, usize)> {
        let set = self.positions(members)?;
        for p in set.iter() {
            for &q in &self.succ[p] {
                if !set.contains(q) {
                    return Some((self.vertices[p], self.vertices[q]));
                }
            }
        }
        None
    }

    pub fn is_successor_closed(&self, members: &[usize]) -> bool {
        self.positions(members).is_some() && self.escaping_arrow(members).is_none()
    }

    fn positions(&self, members: &[usize]) -> Option<Bitset> {
        let mut set = Bitset::new(self.len());
        for &j in members {
            set.insert(self.position(j)?);
        }
        Some(set)
    }

    /// `x ⪯ y` iff an oriented path leads from `y` to `x`; row `p` holds the
    /// positions below position `p`.
    pub fn poset(&self) -> Result<Vec<Bitset>, QuiverError> {
        if !self.acyclic {
            return Err(QuiverError::NotAcyclic);
        }
        Ok(self.reach.clone())
    }

    /// Element-index form of [`Self::poset`]: `precedes(x, y)` is `x ⪯ y`.
    pub fn precedes(&self, x: usize, y: usize) -> Option<bool> {
        let (px, py) = (self.position(x)?, self.position(y)?);
        Some(self.reach[py].contains(px))
    }

    /// All successor-closed sets as sorted element lists, ordered by size
    /// and then lexicographically.
    pub fn successor_closed_sets(&self, max_sets: usize) -> Result<Vec<Vec<usize>>, QuiverError> {
        let v = self.len();
        // strongly connected components: p and q share one iff each reaches
        // the other; a component reaches strictly fewer vertices than any
        // component with an arrow into it
        let mut comp_of = vec![usize::MAX; v];
        let mut comps: Vec<Bitset> = Vec::new();
        for p in 0..v {
            if comp_of[p] != usize::MAX {
                continue;
            }
            let mut c = Bitset::new(v);
            for q in self.reach[p].iter() {
                if self.reach[q].contains(p) {
                    c.insert(q);
                    comp_of[q] = comps.len();
                }
            }
            comps.push(c);
        }
        let mut order: Vec<usize> = (0..comps.len()).collect();
        order.sort_by_key(|&c| self.reach[comps[c].first().unwrap()].len());
        let closure: Vec<Bitset> = order
            .iter()
            .map(|&c| self.reach[comps[c].first().unwrap()].clone())
            .collect();
        let comps: Vec<Bitset> = order.iter().map(|&c| comps[c].clone()).collect();

        let mut out = Vec::new();
        let mut current = Bitset::new(v);
        self.closed_rec(&comps, &closure, 0, &mut current, &mut out, max_sets)?;
        let mut sets: Vec<Vec<usize>> = out
            .into_iter()
            .map(|s| s.iter().map(|p| self.vertices[p]).collect())
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(sets)
    }

    fn closed_rec(
        &self,
        comps: &[Bitset],
        closure: &[Bitset],
        i: usize,
        current: &mut Bitset,
        out: &mut Vec<Bitset>,
        max_sets: usize,
    ) -> Result<(), QuiverError> {
        if i == comps.len() {
            if out.len() == max_sets {
                return Err(QuiverError::BudgetExceeded(max_sets));
            }
            out.push(current.clone());
            return Ok(());
        }
        self.closed_rec(comps, closure, i + 1, current, out, max_sets)?;
        let mut with = current.clone();
        with.union_with(&comps[i]);
        if closure[i].is_subset(&with) {
            let saved = std::mem::replace(current, with);
            self.closed_rec(comps, closure, i + 1, current, out, max_sets)?;
            *current = saved;
        }
        Ok(())
    }

    /// Linear extensions of `⪯` as element sequences, smallest first, in
    /// lexicographic order of vertex positions.
    pub fn linear_extensions(&self, max: usize) -> Result<Vec<Vec<usize>>, QuiverError> {
        let mut out = Vec::new();
        for e in self.linear_extension_iter()? {
            if out.len() == max {
                return Err(QuiverError::BudgetExceeded(max));
            }
            out.push(e);
        }
        Ok(out)
    }

    pub fn linear_extension_iter(&self) -> Result<LinearExtensions<'_>, QuiverError> {
        if !self.acyclic {
            return Err(QuiverError::NotAcyclic);
        }
        Ok(LinearExtensions::new(self))
    }

    /// Number of linear extensions, by dynamic programming over the
    /// successor-closed sets (saturating).
    pub fn count_linear_extensions(&self) -> Result<u128, QuiverError> {
        if !self.acyclic {
            return Err(QuiverError::NotAcyclic);
        }
        let mut memo: HashMap<Bitset, u128> = HashMap::new();
        Ok(self.count_rec(Bitset::full(self.len()), &mut memo))
    }

    fn count_rec(&self, set: Bitset, memo: &mut HashMap<Bitset, u128>) -> u128 {
        if set.is_empty() {
            return 1;
        }
        if let Some(&c) = memo.get(&set) {
            return c;
        }
        let mut total = 0u128;
        // the last vertex placed has no arrow into it from the set
        for p in set.iter() {
            if self.pred[p].iter().all(|&q| !set.contains(q)) {
                let mut rest = set.clone();
                rest.remove(p);
                total = total.saturating_add(self.count_rec(rest, memo));
            }
        }
        memo.insert(set, total);
        total
    }

    /// Checks that `order` lists every vertex once, after all of its
    /// successors.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut placed = Bitset::new(self.len());
        for &j in order {
            match self.position(j) {
                Some(p)
                    if !placed.contains(p) && self.succ[p].iter().all(|&q| placed.contains(q)) =>
                {
                    placed.insert(p)
                }
                _ => return false,
            }
        }
        true
    }
}

/// Lexicographic generation of linear extensions: at each step the
/// available vertices (all successors placed) are tried in index order.
pub struct LinearExtensions<'a> {
    q: &'a LabellingQuiver,
    stack: Vec<usize>,
    placed: Bitset,
    // remaining[p]: successors of p not yet placed
    remaining: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(q: &'a LabellingQuiver) -> Self {
        LinearExtensions {
            q,
            stack: Vec::new(),
            placed: Bitset::new(q.len()),
            remaining: (0..q.len()).map(|p| q.succ[p].len()).collect(),
            started: false,
            done: false,
        }
    }

    fn place(&mut self, p: usize) {
        self.placed.insert(p);
        self.stack.push(p);
        for &r in &self.q.pred[p] {
            self.remaining[r] -= 1;
        }
    }

    fn unplace(&mut self) -> Option<usize> {
        let p = self.stack.pop()?;
        self.placed.remove(p);
        for &r in &self.q.pred[p] {
            self.remaining[r] += 1;
        }
        Some(p)
    }

    fn available_after(&self, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |a| a + 1);
        (start..self.q.len()).find(|&p| !self.placed.contains(p) && self.remaining[p] == 0)
    }

    /// Extends the current prefix greedily; always succeeds in a DAG.
    fn fill(&mut self) {
        while let Some(p) = self.available_after(None) {
            self.place(p);
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else {
            loop {
                let Some(p) = self.unplace() else {
                    self.done = true;
                    return None;
                };
                if let Some(next) = self.available_after(Some(p)) {
                    self.place(next);
                    self.fill();
                    break;
                }
            }
        }
        Some(self.stack.iter().map(|&p| self.q.vertices[p]).collect())
    }
}

/// `φ(t) = {j : j ≤ t}` for a left modular `t`.
pub fn phi(l: &FiniteLattice, k: &Kappa, t: usize) -> Result<Vec<usize>, QuiverError> {
    if t >= l.len() || left_modular_kappa_witness(l, k, t).is_some() {
        return Err(QuiverError::NotLeftModular(t));
    }
    Ok(k.join_irreducibles()
        .iter()
        .copied()
        .filter(|&j| l.leq(j, t))
        .collect())
}

/// `ψ(S) = ⋁S` for a successor-closed `S`.
pub fn psi(l: &FiniteLattice, q: &LabellingQuiver, s: &[usize]) -> Result<usize, QuiverError> {
    if let Some(&bad) = s.iter().find(|&&j| q.position(j).is_none()) {
        return Err(QuiverError::NotSuccessorClosed(bad, bad));
    }
    if let Some((i, j)) = q.escaping_arrow(s) {
        return Err(QuiverError::NotSuccessorClosed(i, j));
    }
    Ok(l.join_set(s.iter().copied()))
}

/// Joins of the prefixes of a linear extension.
pub fn extremal_chain_from_linext(
    l: &FiniteLattice,
    q: &LabellingQuiver,
    order: &[usize],
) -> Result<Chain, QuiverError> {
    if !q.acyclic || !q.is_linear_extension(order) {
        return Err(QuiverError::NotLinearExtension);
    }
    let mut chain = vec![l.bottom()];
    let mut x = l.bottom();
    for &j in order {
        x = l.join(x, j);
        chain.push(x);
    }
    Ok(Chain(chain))
}

/// Cover labels read from bottom to top.
pub fn linext_from_extremal_chain(
    l: &FiniteLattice,
    k: &Kappa,
    chain: &Chain,
) -> Result<Vec<usize>, QuiverError> {
    let labels = chain_labels(l, k, chain).map_err(|e| match e {
        ModularityError::NotMaximalChain => QuiverError::NotExtremalChain,
        other => QuiverError::Modularity(other),
    })?;
    if !labels.is_extremal() || labels.labels.len() != k.join_irreducibles().len() {
        return Err(QuiverError::NotExtremalChain);
    }
    Ok(labels.labels)
}

/// Maximal chains of length `|JI|`, lexicographically. On a κ-lattice
/// these are exactly the extremal chains, since the labels along a maximal
/// chain are distinct.
pub fn extremal_chains<'a>(l: &'a FiniteLattice, k: &Kappa) -> impl Iterator<Item = Chain> + 'a {
    let target = k.join_irreducibles().len();
    let (depth, height) = depth_and_height(l);
    let on_path: Vec<bool> = (0..l.len())
        .map(|x| depth[x] + height[x] == target)
        .collect();
    let feasible = on_path[l.bottom()];
    LongestChains {
        l,
        on_path,
        depth,
        path: Vec::new(),
        cursor: Vec::new(),
        state: if feasible { 0 } else { 2 },
    }
}

/// Number of maximal chains of length `|JI|` (saturating).
pub fn count_extremal_chains(l: &FiniteLattice, k: &Kappa) -> u128 {
    let target = k.join_irreducibles().len();
    let (depth, height) = depth_and_height(l);
    if depth[l.top()] != target {
        return 0;
    }
    let mut count = vec![0u128; l.len()];
    count[l.bottom()] = 1;
    for x in l.linear_order() {
        for &y in l.upper_covers(x) {
            if depth[y] == depth[x] + 1 && depth[y] + height[y] == target {
                count[y] = count[y].saturating_add(count[x]);
            }
        }
    }
    count[l.top()]
}

// depth: longest path from the bottom; height: longest path to the top
fn depth_and_height(l: &FiniteLattice) -> (Vec<usize>, Vec<usize>) {
    let order = l.linear_order();
    let mut depth = vec![0usize; l.len()];
    for &x in &order {
        for &y in l.upper_covers(x) {
            depth[y] = depth[y].max(depth[x] + 1);
        }
    }
    let mut height = vec![0usize; l.len()];
    for &x in order.iter().rev() {
        for &y in l.upper_covers(x) {
            height[x] = height[x].max(height[y] + 1);
        }
    }
    (depth, height)
}

struct LongestChains<'a> {
    l: &'a FiniteLattice,
    on_path: Vec<bool>,
    depth: Vec<usize>,
    path: Vec<usize>,
    cursor: Vec<usize>,
    // 0 = not started, 1 = running, 2 = exhausted
    state: u8,
}

impl Iterator for LongestChains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        let l = self.l;
        match self.state {
            0 => {
                self.state = 1;
                self.path.push(l.bottom());
                self.cursor.push(0);
            }
            1 => {
                self.path.pop();
                self.cursor.pop();
            }
            _ => return None,
        }
        while let Some(&x) = self.path.last() {
            if x == l.top() {
                return Some(Chain(self.path.clone()));
            }
            let d = self.path.len() - 1;
            let ups = l.upper_covers(x);
            let mut k = self.cursor[d];
            while k < ups.len()
                && !(self.on_path[ups[k]] && self.depth[ups[k]] == self.depth[x] + 1)
            {
                k += 1;
            }
            if k < ups.len() {
                self.cursor[d] = k + 1;
                self.path.push(ups[k]);
                self.cursor.push(0);
            } else {
                self.path.pop();
                self.cursor.pop();
            }
        }
        self.state = 2;
        None
    }
}
