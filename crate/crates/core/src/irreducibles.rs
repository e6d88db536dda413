//! Join- and meet-irreducible elements, the κ map and the structural
//! predicates (semidistributivity, distributivity, κ-lattice,
//! well-separation).

use crate::bitset::Bitset;
use crate::lattice::FiniteLattice;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("element {0} is not join-irreducible")]
    NotJoinIrreducible(usize),
    #[error("element {0} is not meet-irreducible")]
    NotMeetIrreducible(usize),
    /// The defining set has several maximal (or minimal) members.
    #[error("kappa undefined at {element}: candidates {candidates:?} are incomparable")]
    Undefined {
        element: usize,
        candidates: Vec<usize>,
    },
    #[error("kappa and its inverse disagree at {0}")]
    NotInverse(usize),
    #[error("{ji} join-irreducibles but {mi} meet-irreducibles")]
    CountMismatch { ji: usize, mi: usize },
}

/// Elements with exactly one lower cover (the bottom is excluded).
pub fn join_irreducibles(l: &FiniteLattice) -> Vec<usize> {
    (0..l.len())
        .filter(|&a| l.lower_covers(a).len() == 1)
        .collect()
}

/// Elements with exactly one upper cover (the top is excluded).
pub fn meet_irreducibles(l: &FiniteLattice) -> Vec<usize> {
    (0..l.len())
        .filter(|&a| l.upper_covers(a).len() == 1)
        .collect()
}

/// For each element `x`, the set of positions `p` with `items[p] ≤ x`.
pub fn below_rows(l: &FiniteLattice, items: &[usize]) -> Vec<Bitset> {
    (0..l.len())
        .map(|x| {
            Bitset::from_items(
                items.len(),
                (0..items.len()).filter(|&p| l.leq(items[p], x)),
            )
        })
        .collect()
}

/// `κ(j) = max {x : x ∧ j = j_*}`.
pub fn kappa(l: &FiniteLattice, j: usize) -> Result<usize, KappaError> {
    let j_star = match l.lower_covers(j) {
        [s] => *s,
        _ => return Err(KappaError::NotJoinIrreducible(j)),
    };
    let set = Bitset::from_items(l.len(), (0..l.len()).filter(|&x| l.meet(x, j) == j_star));
    extremum(l, j, &set, true)
}

/// `κ⁻¹(m) = min {y : y ∨ m = m^*}`.
pub fn kappa_inv(l: &FiniteLattice, m: usize) -> Result<usize, KappaError> {
    let m_star = match l.upper_covers(m) {
        [s] => *s,
        _ => return Err(KappaError::NotMeetIrreducible(m)),
    };
    let set = Bitset::from_items(l.len(), (0..l.len()).filter(|&y| l.join(y, m) == m_star));
    extremum(l, m, &set, false)
}

fn extremum(l: &FiniteLattice, at: usize, set: &Bitset, max: bool) -> Result<usize, KappaError> {
    let rows = |x: usize| if max { l.down_set(x) } else { l.up_set(x) };
    let best = set.iter().max_by_key(|&x| rows(x).len());
    if let Some(b) = best {
        if set.is_subset(rows(b)) {
            return Ok(b);
        }
    }
    // report the maximal (resp. minimal) members
    let candidates = set
        .iter()
        .filter(|&x| {
            set.iter()
                .all(|y| y == x || !(if max { l.leq(x, y) } else { l.leq(y, x) }))
        })
        .collect();
    Err(KappaError::Undefined {
        element: at,
        candidates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIrreducibleRecord {
    pub j: usize,
    pub j_star: usize,
    pub kappa: Result<usize, KappaError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetIrreducibleRecord {
    pub m: usize,
    pub m_star: usize,
    pub kappa_inv: Result<usize, KappaError>,
}

/// κ and κ⁻¹ evaluated wherever they are defined. Never fails: undefined
/// values are kept as errors so reports can degrade gracefully.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaData {
    pub join_irreducibles: Vec<JoinIrreducibleRecord>,
    pub meet_irreducibles: Vec<MeetIrreducibleRecord>,
}

impl KappaData {
    pub fn compute(l: &FiniteLattice) -> Self {
        let join_irreducibles = join_irreducibles(l)
            .into_iter()
            .map(|j| JoinIrreducibleRecord {
                j,
                j_star: l.lower_covers(j)[0],
                kappa: kappa(l, j),
            })
            .collect();
        let meet_irreducibles = meet_irreducibles(l)
            .into_iter()
            .map(|m| MeetIrreducibleRecord {
                m,
                m_star: l.upper_covers(m)[0],
                kappa_inv: kappa_inv(l, m),
            })
            .collect();
        KappaData {
            join_irreducibles,
            meet_irreducibles,
        }
    }

    /// First failure that keeps `κ` from being a bijection with inverse `κ⁻¹`.
    pub fn first_failure(&self) -> Option<KappaError> {
        for r in &self.join_irreducibles {
            if let Err(e) = &r.kappa {
                return Some(e.clone());
            }
        }
        for r in &self.meet_irreducibles {
            if let Err(e) = &r.kappa_inv {
                return Some(e.clone());
            }
        }
        if self.join_irreducibles.len() != self.meet_irreducibles.len() {
            return Some(KappaError::CountMismatch {
                ji: self.join_irreducibles.len(),
                mi: self.meet_irreducibles.len(),
            });
        }
        for r in &self.join_irreducibles {
            let m = *r.kappa.as_ref().unwrap();
            let back = self
                .meet_irreducibles
                .iter()
                .find(|s| s.m == m)
                .map(|s| s.kappa_inv.clone());
            if back != Some(Ok(r.j)) {
                return Some(KappaError::NotInverse(r.j));
            }
        }
        None
    }

    pub fn is_kappa_lattice(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// The κ bijection of a κ-lattice, indexed by position in the sorted list
/// of join-irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa {
    ji: Vec<usize>,
    mi: Vec<usize>,
    j_star: Vec<usize>,
    kappa: Vec<usize>,
    ji_pos: Vec<Option<usize>>,
    mi_pos: Vec<Option<usize>>,
    // position in `ji` of κ⁻¹(mi[q])
    inverse: Vec<usize>,
}

impl Kappa {
    pub fn new(l: &FiniteLattice) -> Result<Kappa, KappaError> {
        let data = KappaData::compute(l);
        if let Some(e) = data.first_failure() {
            return Err(e);
        }
        let ji: Vec<usize> = data.join_irreducibles.iter().map(|r| r.j).collect();
        let mi: Vec<usize> = data.meet_irreducibles.iter().map(|r| r.m).collect();
        let mut ji_pos = vec![None; l.len()];
        for (p, &j) in ji.iter().enumerate() {
            ji_pos[j] = Some(p);
        }
        let mut mi_pos = vec![None; l.len()];
        for (q, &m) in mi.iter().enumerate() {
            mi_pos[m] = Some(q);
        }
        let inverse = data
            .meet_irreducibles
            .iter()
            .map(|r| ji_pos[*r.kappa_inv.as_ref().unwrap()].unwrap())
            .collect();
        Ok(Kappa {
            j_star: data.join_irreducibles.iter().map(|r| r.j_star).collect(),
            kappa: data
                .join_irreducibles
                .iter()
                .map(|r| *r.kappa.as_ref().unwrap())
                .collect(),
            ji,
            mi,
            ji_pos,
            mi_pos,
            inverse,
        })
    }

    /// Join-irreducibles in increasing index order.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.ji
    }

    pub fn meet_irreducibles(&self) -> &[usize] {
        &self.mi
    }

    pub fn ji_position(&self, j: usize) -> Option<usize> {
        self.ji_pos.get(j).copied().flatten()
    }

    pub fn is_join_irreducible(&self, j: usize) -> bool {
        self.ji_position(j).is_some()
    }

    /// `κ(j)`; panics if `j` is not join-irreducible.
    pub fn kappa(&self, j: usize) -> usize {
        self.kappa[self.ji_pos[j].expect("not join-irreducible")]
    }

    /// `κ` by position in [`Self::join_irreducibles`].
    pub fn kappa_at(&self, p: usize) -> usize {
        self.kappa[p]
    }

    pub fn j_star(&self, j: usize) -> usize {
        self.j_star[self.ji_pos[j].expect("not join-irreducible")]
    }

    /// `κ⁻¹(m)`; panics if `m` is not meet-irreducible.
    pub fn kappa_inv(&self, m: usize) -> usize {
        self.ji[self.inverse[self.mi_pos[m].expect("not meet-irreducible")]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdLaw {
    /// `x∨y = x∨z ⇒ x∨(y∧z) = x∨y`
    Join,
    /// `x∧y = x∧z ⇒ x∧(y∨z) = x∧y`
    Meet,
}

/// A triple violating one of the semidistributive laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SdWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub law: SdLaw,
}

fn violates(l: &FiniteLattice, x: usize, y: usize, z: usize, law: SdLaw) -> bool {
    match law {
        SdLaw::Join => {
            let v = l.join(x, y);
            v == l.join(x, z) && l.join(x, l.meet(y, z)) != v
        }
        SdLaw::Meet => {
            let v = l.meet(x, y);
            v == l.meet(x, z) && l.meet(x, l.join(y, z)) != v
        }
    }
}

/// Whether some `y, z` violate the law at `x`.
///
/// For fixed `x` the elements with `x ∨ y = v` must be closed under meets;
/// for a finite class that is the same as containing the meet of the whole
/// class, which makes the scan quadratic overall.
fn fails_at(l: &FiniteLattice, x: usize, law: SdLaw, acc: &mut [u32]) -> bool {
    const NONE: u32 = u32::MAX;
    acc.iter_mut().for_each(|a| *a = NONE);
    type Op = fn(&FiniteLattice, usize, usize) -> usize;
    let (outer, inner): (Op, Op) = match law {
        SdLaw::Join => (FiniteLattice::join, FiniteLattice::meet),
        SdLaw::Meet => (FiniteLattice::meet, FiniteLattice::join),
    };
    for y in 0..l.len() {
        let v = outer(l, x, y);
        acc[v] = if acc[v] == NONE {
            y as u32
        } else {
            inner(l, acc[v] as usize, y) as u32
        };
    }
    acc.iter()
        .enumerate()
        .any(|(v, &a)| a != NONE && outer(l, x, a as usize) != v)
}

/// Lexicographically least `(x, y, z)` violating either semidistributive
/// law, or `None` if the lattice is semidistributive. Ties between the laws
/// go to the join law.
pub fn semidistributivity_witness(l: &FiniteLattice) -> Option<SdWitness> {
    let n = l.len();
    let mut acc = vec![0u32; n];
    for x in 0..n {
        if !fails_at(l, x, SdLaw::Join, &mut acc) && !fails_at(l, x, SdLaw::Meet, &mut acc) {
            continue;
        }
        for y in 0..n {
            for z in y + 1..n {
                for law in [SdLaw::Join, SdLaw::Meet] {
                    if violates(l, x, y, z, law) {
                        return Some(SdWitness { x, y, z, law });
                    }
                }
            }
        }
        unreachable!("law failed at {x} but no witness pair");
    }
    None
}

pub fn is_semidistributive(l: &FiniteLattice) -> bool {
    semidistributivity_witness(l).is_none()
}

/// Distributivity via join-irreducibles: `L` is distributive exactly when
/// `x ↦ {j ∈ JI : j ≤ x}` turns joins into unions (meets always become
/// intersections), i.e. when `L` embeds in a Boolean lattice.
pub fn is_distributive(l: &FiniteLattice) -> bool {
    let ji = join_irreducibles(l);
    let rows = below_rows(l, &ji);
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            let mut u = rows[a].clone();
            u.union_with(&rows[b]);
            if u != rows[l.join(a, b)] {
                return false;
            }
        }
    }
    true
}

/// Least pair `x ≰ y` with no join-irreducible `j ≤ x` such that
/// `y ≤ κ(j)`; `None` when well-separated.
pub fn well_separation_witness(l: &FiniteLattice, k: &Kappa) -> Option<(usize, usize)> {
    let ji = k.join_irreducibles();
    let below = below_rows(l, ji);
    let n = l.len();
    let under_kappa: Vec<Bitset> = (0..n)
        .map(|y| Bitset::from_items(ji.len(), (0..ji.len()).filter(|&p| l.leq(y, k.kappa_at(p)))))
        .collect();
    for (x, bx) in below.iter().enumerate() {
        for (y, uy) in under_kappa.iter().enumerate() {
            if !l.leq(x, y) && bx.is_disjoint(uy) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_well_separated(l: &FiniteLattice) -> Result<bool, KappaError> {
    let k = Kappa::new(l)?;
    Ok(well_separation_witness(l, &k).is_none())
}

pub fn is_kappa_lattice(l: &FiniteLattice) -> bool {
    KappaData::compute(l).is_kappa_lattice()
}
