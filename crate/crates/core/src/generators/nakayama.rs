//! Serial modules over the linear quiver `1 → 2 → … → n` with monomial
//! relations, and their lattices of torsion classes.
//!
//! `M[a,b]` is the interval module with top `S_a` and socle `S_b`. A set of
//! relations is described by forbidden intervals; an interval module exists
//! iff it contains no forbidden interval.

use crate::irreducibles::{Kappa, KappaError};
use crate::lattice::{FiniteLattice, LatticeError};
use crate::modularity::{cover_label, ModularityError};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Default cap on the number of indecomposables for torsion-class
/// enumeration.
pub const DEFAULT_MAX_INDECOMPOSABLES: usize = 20;

const HARD_MAX_INDECOMPOSABLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid interval {0}: {1}")]
    InvalidInterval(Interval, &'static str),
    #[error("need at least one vertex")]
    NoVertices,
    #[error("{count} indecomposables exceeds the limit of {limit}")]
    BudgetExceeded { count: usize, limit: usize },
    #[error("brick labels disagree on the cover {0} < {1}")]
    LabelMismatch(usize, usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Kappa(#[from] KappaError),
    #[error(transparent)]
    Modularity(#[from] ModularityError),
}

/// The interval `[a,b]` (1-based vertices, `a ≤ b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Interval {
        Interval { a, b }
    }

    /// Number of arrows in the path, `b - a`.
    pub fn arrows(&self) -> usize {
        self.b - self.a
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.a <= other.a && other.b <= self.b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraModel {
    n: usize,
    // reach[a-1]: largest b with M[a,b] allowed
    reach: Vec<usize>,
    indecomposables: Vec<Interval>,
    index: HashMap<Interval, usize>,
}

impl AlgebraModel {
    /// Line quiver on `n` vertices with the given forbidden intervals. Each
    /// forbidden interval must span at least two arrows.
    pub fn nakayama(n: usize, forbidden: &[Interval]) -> Result<AlgebraModel, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::NoVertices);
        }
        for &iv in forbidden {
            if iv.a < 1 || iv.b > n || iv.a > iv.b {
                return Err(AlgebraError::InvalidInterval(iv, "outside the quiver"));
            }
            if iv.arrows() < 2 {
                return Err(AlgebraError::InvalidInterval(
                    iv,
                    "relations need paths of length at least 2",
                ));
            }
        }
        let reach = (1..=n)
            .map(|a| {
                forbidden
                    .iter()
                    .filter(|iv| iv.a >= a)
                    .map(|iv| iv.b - 1)
                    .fold(n, usize::min)
            })
            .collect();
        Ok(AlgebraModel::from_reach(n, reach))
    }

    /// The path algebra of the line quiver (no relations).
    pub fn path_algebra(n: usize) -> Result<AlgebraModel, AlgebraError> {
        AlgebraModel::nakayama(n, &[])
    }

    fn from_reach(n: usize, reach: Vec<usize>) -> AlgebraModel {
        let mut indecomposables: Vec<Interval> = (1..=n)
            .flat_map(|a| (a..=reach[a - 1]).map(move |b| Interval::new(a, b)))
            .collect();
        indecomposables.sort_by_key(|iv| (iv.arrows(), std::cmp::Reverse(iv.a)));
        let index = indecomposables
            .iter()
            .enumerate()
            .map(|(i, &iv)| (iv, i))
            .collect();
        AlgebraModel {
            n,
            reach,
            indecomposables,
            index,
        }
    }

    /// Every model on `1..=n_max` vertices with at most `max_ind`
    /// indecomposables, ordered by vertex count and then by relations.
    pub fn all_models(n_max: usize, max_ind: usize) -> Vec<AlgebraModel> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            let mut reach = Vec::with_capacity(n);
            models_rec(n, &mut reach, 0, max_ind, &mut out);
        }
        out
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn indecomposables(&self) -> &[Interval] {
        &self.indecomposables
    }

    /// Every indecomposable is a brick, so the bricks are the indecomposables.
    pub fn bricks(&self) -> &[Interval] {
        &self.indecomposables
    }

    pub fn index_of(&self, iv: Interval) -> Option<usize> {
        self.index.get(&iv).copied()
    }

    pub fn is_allowed(&self, iv: Interval) -> bool {
        iv.a >= 1 && iv.a <= iv.b && iv.b <= self.n && iv.b <= self.reach[iv.a - 1]
    }

    /// Inclusion-minimal forbidden intervals.
    pub fn forbidden(&self) -> Vec<Interval> {
        (1..=self.n)
            .filter(|&a| {
                let r = self.reach[a - 1];
                r < self.n && (a == self.n || self.reach[a] > r)
            })
            .map(|a| Interval::new(a, self.reach[a - 1] + 1))
            .collect()
    }

    /// `Hom(M[a,b], M[c,d]) ≠ 0` iff `c ≤ a ≤ d ≤ b`.
    pub fn hom_nonzero(x: Interval, y: Interval) -> bool {
        y.a <= x.a && x.a <= y.b && y.b <= x.b
    }

    /// Middle term of the nonsplit extension with quotient `x` and
    /// submodule `y`, when one exists.
    pub fn ext_middle(&self, x: Interval, y: Interval) -> Option<Interval> {
        let m = Interval::new(x.a, y.b);
        (y.a == x.b + 1 && self.is_allowed(m)).then_some(m)
    }

    pub fn quotients(x: Interval) -> impl Iterator<Item = Interval> {
        (x.a..=x.b).map(move |e| Interval::new(x.a, e))
    }

    pub fn submodules(x: Interval) -> impl Iterator<Item = Interval> {
        (x.a..=x.b).map(move |f| Interval::new(f, x.b))
    }

    /// Bit mask of `T^⊥`, the indecomposables receiving no map from `T`.
    pub fn right_perp(&self, t: u64) -> u64 {
        self.mask_where(|y| bits(t).all(|x| !Self::hom_nonzero(self.indecomposables[x], y)))
    }

    /// Bit mask of `⊥F`, the indecomposables mapping to nothing in `F`.
    pub fn left_perp(&self, f: u64) -> u64 {
        self.mask_where(|x| bits(f).all(|y| !Self::hom_nonzero(x, self.indecomposables[y])))
    }

    /// Every brick lies in `T` or in `T^⊥`.
    pub fn is_brick_splitting(&self, t: u64) -> bool {
        t | self.right_perp(t) == self.full_mask()
    }

    pub fn full_mask(&self) -> u64 {
        mask_of(self.indecomposables.len())
    }

    fn mask_where(&self, pred: impl Fn(Interval) -> bool) -> u64 {
        self.indecomposables
            .iter()
            .enumerate()
            .filter(|&(_, &iv)| pred(iv))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn brick_quiver(&self) -> BrickQuiver {
        let v = &self.indecomposables;
        let mut arrows = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            for (k, &y) in v.iter().enumerate() {
                if i != k && Self::hom_nonzero(x, y) {
                    arrows.push((i, k));
                }
            }
        }
        let acyclic = is_acyclic(v.len(), &arrows);
        BrickQuiver {
            vertices: v.clone(),
            arrows,
            acyclic,
        }
    }

    pub fn is_brick_directed(&self) -> bool {
        self.brick_quiver().acyclic
    }

    /// The lattice of torsion classes, refusing models with more than
    /// `max_ind` indecomposables.
    pub fn torsion_classes(&self, max_ind: usize) -> Result<TorsLattice, AlgebraError> {
        let k = self.indecomposables.len();
        let limit = max_ind.min(HARD_MAX_INDECOMPOSABLES);
        if k > limit {
            return Err(AlgebraError::BudgetExceeded { count: k, limit });
        }
        let closer = Closure::new(self);
        let mut seen: HashSet<u64> = HashSet::from([0]);
        let mut queue = VecDeque::from([0u64]);
        let mut upper: HashMap<u64, Vec<u64>> = HashMap::new();
        while let Some(t) = queue.pop_front() {
            let mut cands: Vec<u64> = (0..k)
                .filter(|&x| t >> x & 1 == 0)
                .map(|x| closer.close(t | 1 << x))
                .collect();
            cands.sort_unstable();
            cands.dedup();
            let minimal: Vec<u64> = cands
                .iter()
                .copied()
                .filter(|&c| !cands.iter().any(|&d| d != c && d & c == d))
                .collect();
            for &c in &minimal {
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
            upper.insert(t, minimal);
        }
        let mut classes: Vec<u64> = seen.into_iter().collect();
        classes.sort_by_key(|&m| (m.count_ones(), m));
        let pos: HashMap<u64, usize> = classes.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let covers: Vec<(usize, usize)> = classes
            .iter()
            .flat_map(|t| upper[t].iter().map(|u| (pos[t], pos[u])))
            .collect();
        let names = classes.iter().map(|&m| Some(self.class_name(m))).collect();
        let lattice = FiniteLattice::from_covers(classes.len(), &covers, Some(names))?;

        let kappa = Kappa::new(&lattice)?;
        // brick of a join-irreducible T: the unique brick of T in (T_*)^⊥
        let mut ji_brick = HashMap::new();
        for &j in kappa.join_irreducibles() {
            let b = self
                .cover_brick(classes[kappa.j_star(j)], classes[j])
                .ok_or(AlgebraError::LabelMismatch(kappa.j_star(j), j))?;
            ji_brick.insert(j, b);
        }
        let mut cover_labels = BTreeMap::new();
        for &(x, y) in &covers {
            let j = cover_label(&lattice, &kappa, x, y)?;
            let b = ji_brick[&j];
            if self.cover_brick(classes[x], classes[y]) != Some(b) {
                return Err(AlgebraError::LabelMismatch(x, y));
            }
            cover_labels.insert((x, y), b);
        }
        Ok(TorsLattice {
            model: self.clone(),
            lattice,
            classes,
            cover_labels,
        })
    }

    /// The unique brick in `U ∩ T^⊥` for `T ⊂ U`.
    fn cover_brick(&self, t: u64, u: u64) -> Option<usize> {
        let m = u & self.right_perp(t);
        (m.count_ones() == 1).then(|| m.trailing_zeros() as usize)
    }

    fn class_name(&self, m: u64) -> String {
        let parts: Vec<String> = bits(m)
            .map(|i| self.indecomposables[i].to_string())
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn models_rec(
    n: usize,
    reach: &mut Vec<usize>,
    count: usize,
    max_ind: usize,
    out: &mut Vec<AlgebraModel>,
) {
    let a = reach.len() + 1;
    if a > n {
        out.push(AlgebraModel::from_reach(n, reach.clone()));
        return;
    }
    // reach is non-decreasing and at least a+1 (no relation kills an arrow)
    let lo = reach
        .last()
        .copied()
        .unwrap_or(0)
        .max((a + 1).min(n))
        .max(a);
    for r in lo..=n {
        let c = count + (r - a + 1);
        // the remaining vertices contribute at least their minimal modules
        let rest: usize = (a + 1..=n).map(|v| if v < n { 2 } else { 1 }).sum();
        if c + rest > max_ind {
            break;
        }
        reach.push(r);
        models_rec(n, reach, c, max_ind, out);
        reach.pop();
    }
}

struct Closure {
    quotients: Vec<u64>,
    // (submodule, middle term) for each indecomposable taken as quotient
    extensions: Vec<Vec<(usize, usize)>>,
}

impl Closure {
    fn new(model: &AlgebraModel) -> Closure {
        let ind = &model.indecomposables;
        let quotients = ind
            .iter()
            .map(|&x| {
                AlgebraModel::quotients(x)
                    .map(|q| {
                        model
                            .index_of(q)
                            .expect("quotients of allowed modules are allowed")
                    })
                    .fold(0, |m, i| m | 1 << i)
            })
            .collect();
        let extensions = ind
            .iter()
            .map(|&x| {
                ind.iter()
                    .enumerate()
                    .filter_map(|(k, &y)| {
                        model
                            .ext_middle(x, y)
                            .map(|e| (k, model.index_of(e).unwrap()))
                    })
                    .collect()
            })
            .collect();
        Closure {
            quotients,
            extensions,
        }
    }

    /// Smallest set containing `m` closed under quotients and extension
    /// middle terms.
    fn close(&self, mut m: u64) -> u64 {
        loop {
            let mut next = m;
            for x in bits(m) {
                next |= self.quotients[x];
            }
            for x in bits(next) {
                for &(y, e) in &self.extensions[x] {
                    if next >> y & 1 == 1 {
                        next |= 1 << e;
                    }
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }
}

pub(crate) fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

fn mask_of(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn is_acyclic(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in arrows {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

/// Arrows `X → Y` between distinct bricks with `Hom(X,Y) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickQuiver {
    pub vertices: Vec<Interval>,
    pub arrows: Vec<(usize, usize)>,
    pub acyclic: bool,
}

/// Torsion classes ordered by inclusion. Element `i` is the class whose
/// members are the set bits of `classes[i]` (indices into the model's
/// indecomposables).
#[derive(Debug, Clone)]
pub struct TorsLattice {
    pub model: AlgebraModel,
    pub lattice: FiniteLattice,
    pub classes: Vec<u64>,
    /// Brick (index into the indecomposables) labelling each cover.
    pub cover_labels: BTreeMap<(usize, usize), usize>,
}

impl TorsLattice {
    pub fn element_bricks(&self, e: usize) -> Vec<Interval> {
        bits(self.classes[e])
            .map(|i| self.model.indecomposables[i])
            .collect()
    }

    pub fn cover_brick(&self, x: usize, y: usize) -> Option<Interval> {
        self.cover_labels
            .get(&(x, y))
            .map(|&i| self.model.indecomposables[i])
    }

    pub fn is_brick_splitting(&self, e: usize) -> bool {
        self.model.is_brick_splitting(self.classes[e])
    }
}
