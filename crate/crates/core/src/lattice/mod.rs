//! Finite lattices stored as dense order rows plus precomputed meet and
//! join tables.
//!
//! Elements are the indices `0..n`. Construction takes the cover relation
//! (the Hasse diagram), closes it transitively, checks that every pair has
//! a meet and a join, and tabulates both operations. Everything downstream
//! is table lookups over an immutable [`FiniteLattice`].

mod chain;
mod io;

pub use chain::{Chain, MaximalChains, DEFAULT_MAX_CHAINS};
pub use io::{parse_lattice, serialize_lattice, ParseError};

use crate::bitset::Bitset;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("meet"),
            BoundKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("cover ({a}, {b}) is out of range for n={n}")]
    IndexOutOfRange { a: usize, b: usize, n: usize },
    #[error("cover ({0}, {1}) is listed twice")]
    DuplicateCover(usize, usize),
    #[error("cover graph has a cycle through element {0}")]
    CycleDetected(usize),
    #[error("cover ({0}, {1}) is implied by transitivity")]
    CoverNotReduced(usize, usize),
    #[error("elements {a} and {b} have no {kind}")]
    NotALattice { a: usize, b: usize, kind: BoundKind },
    #[error("{0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("more than {0} maximal chains")]
    ChainBudgetExceeded(usize),
    #[error("name list has {got} entries for {n} elements")]
    NameCount { got: usize, n: usize },
}

/// Dense n×n table of element indices, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Table {
    n: usize,
    cells: Vec<u32>,
}

impl Table {
    #[inline]
    fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b] as usize
    }
}

/// A validated finite lattice on the elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    up: Vec<Bitset>,
    down: Vec<Bitset>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    meet: Table,
    join: Table,
    names: Vec<Option<String>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from its cover relation. `covers` lists pairs
    /// `(a, b)` meaning `a ⋖ b`.
    pub fn from_covers(
        n: usize,
        covers: &[(usize, usize)],
        names: Option<Vec<Option<String>>>,
    ) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let names = match names {
            Some(v) if v.len() != n => {
                return Err(LatticeError::NameCount { got: v.len(), n });
            }
            Some(v) => v,
            None => vec![None; n],
        };
        let mut sorted = covers.to_vec();
        for &(a, b) in &sorted {
            if a >= n || b >= n {
                return Err(LatticeError::IndexOutOfRange { a, b, n });
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(LatticeError::DuplicateCover(w[0].0, w[0].1));
        }
        if let Some(&(a, _)) = sorted.iter().find(|(a, b)| a == b) {
            return Err(LatticeError::CycleDetected(a));
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in &sorted {
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        let topo = topological_order(&upper_covers, &lower_covers)?;

        let mut up = vec![Bitset::new(n); n];
        for &a in topo.iter().rev() {
            let mut row = Bitset::new(n);
            row.insert(a);
            for &c in &upper_covers[a] {
                row.union_with(&up[c]);
            }
            up[a] = row;
        }
        let mut down = vec![Bitset::new(n); n];
        for &b in &topo {
            let mut row = Bitset::new(n);
            row.insert(b);
            for &c in &lower_covers[b] {
                row.union_with(&down[c]);
            }
            down[b] = row;
        }

        for &(a, b) in &sorted {
            let implied = upper_covers[a].iter().any(|&c| c != b && up[c].contains(b));
            if implied {
                return Err(LatticeError::CoverNotReduced(a, b));
            }
        }

        let meet = bound_table(n, &topo, &lower_covers, &up);
        let meet = meet.map_err(|()| first_missing_bound(n, &down, BoundKind::Meet))?;
        let rev: Vec<usize> = topo.iter().rev().copied().collect();
        let join = bound_table(n, &rev, &upper_covers, &down);
        let join = join.map_err(|()| first_missing_bound(n, &up, BoundKind::Join))?;

        // with all pairwise bounds present the order has a single minimum and maximum
        let bottom = topo[0];
        let top = topo[n - 1];

        Ok(FiniteLattice {
            n,
            up,
            down,
            upper_covers,
            lower_covers,
            meet,
            join,
            names,
            bottom,
            top,
        })
    }

    /// Builds a lattice from an order predicate; covers are recovered as the
    /// transitive reduction. Quadratic in `n` with bitset rows, intended for
    /// derived lattices of moderate size.
    pub fn from_order<F>(
        n: usize,
        leq: F,
        names: Option<Vec<Option<String>>>,
    ) -> Result<Self, LatticeError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let mut strict_up = vec![Bitset::new(n); n];
        for (a, row) in strict_up.iter_mut().enumerate() {
            for b in 0..n {
                if a != b && leq(a, b) {
                    row.insert(b);
                }
            }
        }
        let mut strict_down = vec![Bitset::new(n); n];
        for (a, row) in strict_up.iter().enumerate() {
            for b in row.iter() {
                strict_down[b].insert(a);
            }
        }
        let mut covers = Vec::new();
        for (a, row) in strict_up.iter().enumerate() {
            for b in row.iter() {
                if row.is_disjoint(&strict_down[b]) {
                    covers.push((a, b));
                }
            }
        }
        FiniteLattice::from_covers(n, &covers, names)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join.get(a, b)
    }

    /// Meet of a subset; the empty meet is the top element.
    pub fn meet_set<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a subset; the empty join is the bottom element.
    pub fn join_set<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `{b : a ≤ b}`
    pub fn up_set(&self, a: usize) -> &Bitset {
        &self.up[a]
    }

    /// `{b : b ≤ a}`
    pub fn down_set(&self, a: usize) -> &Bitset {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].binary_search(&b).is_ok()
    }

    /// All cover pairs in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    /// Display name of an element: its given name, or its index.
    pub fn name(&self, a: usize) -> String {
        match &self.names[a] {
            Some(s) => s.clone(),
            None => a.to_string(),
        }
    }

    /// Elements in an order compatible with `≤` (ranked by down-set size,
    /// ties by index).
    pub fn linear_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (self.down[a].len(), a));
        order
    }

    /// Length of the longest chain (number of covers on it).
    pub fn length(&self) -> usize {
        let mut longest = vec![0usize; self.n];
        for a in self.linear_order() {
            longest[a] = self.lower_covers[a]
                .iter()
                .map(|&c| longest[c] + 1)
                .max()
                .unwrap_or(0);
        }
        longest[self.top]
    }

    /// The order-dual lattice; element indices and names are preserved.
    pub fn dual(&self) -> FiniteLattice {
        let covers: Vec<(usize, usize)> = self.covers().into_iter().map(|(a, b)| (b, a)).collect();
        FiniteLattice::from_covers(self.n, &covers, Some(self.names.clone()))
            .expect("dual of a lattice is a lattice")
    }

    /// Elements of the interval `[x, y]` in increasing index order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Result<Vec<usize>, LatticeError> {
        self.check_element(x)?;
        self.check_element(y)?;
        if !self.leq(x, y) {
            return Err(LatticeError::NotComparable(x, y));
        }
        let mut s = self.up[x].clone();
        s.intersect_with(&self.down[y]);
        Ok(s.to_vec())
    }

    /// The interval `[x, y]` as a lattice in its own right. Element `k` of
    /// the result is the `k`-th smallest index of the interval; names are
    /// inherited (unnamed elements are named by their parent index).
    pub fn interval(&self, x: usize, y: usize) -> Result<FiniteLattice, LatticeError> {
        let elems = self.interval_elements(x, y)?;
        let mut local = vec![usize::MAX; self.n];
        for (k, &e) in elems.iter().enumerate() {
            local[e] = k;
        }
        let mut covers = Vec::new();
        for (k, &e) in elems.iter().enumerate() {
            for &f in &self.upper_covers[e] {
                if local[f] != usize::MAX {
                    covers.push((k, local[f]));
                }
            }
        }
        let names = elems.iter().map(|&e| Some(self.name(e))).collect();
        FiniteLattice::from_covers(elems.len(), &covers, Some(names))
    }

    pub fn check_element(&self, a: usize) -> Result<(), LatticeError> {
        if a < self.n {
            Ok(())
        } else {
            Err(LatticeError::ElementOutOfRange(a))
        }
    }
}

/// Kahn's algorithm, smallest available index first so the order is
/// deterministic.
fn topological_order(
    upper: &[Vec<usize>],
    lower: &[Vec<usize>],
) -> Result<Vec<usize>, LatticeError> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let n = upper.len();
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&a| indeg[a] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(a)) = ready.pop() {
        order.push(a);
        for &b in &upper[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&a| indeg[a] > 0).unwrap_or(0);
        return Err(LatticeError::CycleDetected(stuck));
    }
    Ok(order)
}

/// Tabulates meets (or, with the arguments mirrored, joins).
///
/// Processing `a` in `order`, the meet of incomparable `a, b` is the
/// largest of `meet(c, b)` over the lower covers `c` of `a`: every common
/// lower bound lies below some lower cover of `a`. When those candidates
/// have no largest element the pair has no meet.
fn bound_table(
    n: usize,
    order: &[usize],
    below: &[Vec<usize>],
    up: &[Bitset],
) -> Result<Table, ()> {
    // Rows are filled in `order`, each as the pointwise greatest of the rows
    // of its lower covers; working in order positions keeps every row scan
    // sequential.
    let mut pos = vec![0usize; n];
    for (p, &a) in order.iter().enumerate() {
        pos[a] = p;
    }
    let mut above = vec![0u64; n.div_ceil(64)];
    let mut full = vec![0u32; n * n];
    for (p, &a) in order.iter().enumerate() {
        let (done, rest) = full.split_at_mut(p * n);
        let row = &mut rest[..n];
        if below[a].is_empty() {
            if p > 0 {
                return Err(());
            }
            row.fill(0);
            continue;
        }
        // every candidate lies below the true bound, which therefore has the
        // largest position among them
        row.fill(0);
        for &c in &below[a] {
            let other = &done[pos[c] * n..pos[c] * n + n];
            for (best, &m) in row.iter_mut().zip(other) {
                *best = (*best).max(m);
            }
        }
        // in a lattice c∧b = c∧(a∧b) for c ≤ a, which only reads row c
        // up-set of a in position coordinates
        above.fill(0);
        for b in up[a].iter() {
            above[pos[b] / 64] |= 1 << (pos[b] % 64);
        }
        let several = if below[a].len() > 1 {
            &below[a][..]
        } else {
            &[]
        };
        for &c in several {
            let other = &done[pos[c] * n..pos[c] * n + n];
            let mut bad = false;
            for (q, (&best, &m)) in row.iter().zip(other).enumerate() {
                let comparable = above[q / 64] >> (q % 64) & 1 == 1;
                bad |= (m != best) & (m != other[best as usize]) & !comparable;
            }
            if bad {
                return Err(());
            }
        }
        // comparable pairs are settled directly
        for b in up[a].iter() {
            row[pos[b]] = p as u32;
        }
    }
    let mut cells = vec![0u32; n * n];
    for (a, out) in cells.chunks_exact_mut(n).enumerate() {
        let r = &full[pos[a] * n..pos[a] * n + n];
        for (b, cell) in out.iter_mut().enumerate() {
            *cell = order[r[pos[b]] as usize] as u32;
        }
    }
    Ok(Table { n, cells })
}

/// Lexicographically least pair without a greatest common lower bound
/// (`rows` = down-sets) or least common upper bound (`rows` = up-sets).
fn first_missing_bound(n: usize, rows: &[Bitset], kind: BoundKind) -> LatticeError {
    for a in 0..n {
        for b in a + 1..n {
            let mut common = rows[a].clone();
            common.intersect_with(&rows[b]);
            let ok = common
                .iter()
                .max_by_key(|&c| rows[c].len())
                .is_some_and(|c| common.is_subset(&rows[c]));
            if !ok {
                return LatticeError::NotALattice { a, b, kind };
            }
        }
    }
    unreachable!("bound table failed but every pair has a {kind}")
}
