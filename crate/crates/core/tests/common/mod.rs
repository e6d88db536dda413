//! Brute-force reference implementations. They only use the cover list of
//! a lattice and never call into the library's algorithms.
#![allow(dead_code)]

use kappalat::FiniteLattice;

pub struct Brute {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
}

impl Brute {
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Brute {
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Brute { n, leq }
    }

    pub fn of(l: &FiniteLattice) -> Brute {
        Brute::from_covers(l.len(), &l.covers())
    }

    fn greatest(&self, set: &[usize]) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&x| self.leq[x][m]))
    }

    fn least(&self, set: &[usize]) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&x| self.leq[m][x]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&x| self.leq[x][a] && self.leq[x][b])
            .collect();
        self.greatest(&lower)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&x| self.leq[a][x] && self.leq[b][x])
            .collect();
        self.least(&upper)
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.n)
            .all(|a| (0..self.n).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.meet(a, b).unwrap()
    }

    pub fn j(&self, a: usize, b: usize) -> usize {
        self.join(a, b).unwrap()
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| x != a && self.leq[x][a])
            .filter(|&x| !(0..self.n).any(|y| y != x && y != a && self.leq[x][y] && self.leq[y][a]))
            .collect()
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| x != a && self.leq[a][x])
            .filter(|&x| !(0..self.n).any(|y| y != x && y != a && self.leq[a][y] && self.leq[y][x]))
            .collect()
    }

    pub fn ji(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| self.lower_covers(a).len() == 1)
            .collect()
    }

    pub fn mi(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| self.upper_covers(a).len() == 1)
            .collect()
    }

    /// `max{x : x ∧ j = j_*}` if that set has a maximum.
    pub fn kappa(&self, j: usize) -> Option<usize> {
        let js = self.lower_covers(j)[0];
        let set: Vec<usize> = (0..self.n).filter(|&x| self.m(x, j) == js).collect();
        self.greatest(&set)
    }

    pub fn kappa_inv(&self, m: usize) -> Option<usize> {
        let ms = self.upper_covers(m)[0];
        let set: Vec<usize> = (0..self.n).filter(|&y| self.j(y, m) == ms).collect();
        self.least(&set)
    }

    pub fn is_sd(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.j(x, y) == self.j(x, z) && self.j(x, self.m(y, z)) != self.j(x, y) {
                        return false;
                    }
                    if self.m(x, y) == self.m(x, z) && self.m(x, self.j(y, z)) != self.m(x, y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| self.m(x, self.j(y, z)) == self.j(self.m(x, y), self.m(x, z)))
            })
        })
    }

    /// `(y ∨ t) ∧ z = y ∨ (t ∧ z)` for all `y ≤ z`.
    pub fn is_left_modular(&self, t: usize) -> bool {
        (0..self.n).all(|y| {
            (0..self.n)
                .filter(|&z| self.leq[y][z])
                .all(|z| self.m(self.j(y, t), z) == self.j(y, self.m(t, z)))
        })
    }

    pub fn length(&self) -> usize {
        // longest strict chain by repeated relaxation
        let mut best = vec![0usize; self.n];
        for _ in 0..self.n {
            for a in 0..self.n {
                for b in 0..self.n {
                    if a != b && self.leq[a][b] {
                        best[b] = best[b].max(best[a] + 1);
                    }
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn bottom(&self) -> usize {
        (0..self.n)
            .find(|&a| (0..self.n).all(|x| self.leq[a][x]))
            .unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.n)
            .find(|&a| (0..self.n).all(|x| self.leq[x][a]))
            .unwrap()
    }

    /// All bottom-to-top cover paths.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.bottom()];
        self.chains_rec(&mut path, &mut out);
        out
    }

    fn chains_rec(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == self.top() {
            out.push(path.clone());
            return;
        }
        for c in self.upper_covers(last) {
            path.push(c);
            self.chains_rec(path, out);
            path.pop();
        }
    }

    /// Every join-irreducible `j` labels some step `x < y` of the chain via
    /// `x ∨ j = y` and `y ∧ κ(j) = x`.
    pub fn is_extremal_chain(&self, chain: &[usize]) -> bool {
        self.ji().into_iter().all(|j| {
            let k = self.kappa(j).unwrap();
            chain
                .windows(2)
                .any(|w| self.j(w[0], j) == w[1] && self.m(w[1], k) == w[0])
        })
    }
}

/// Every lattice whose elements `0..n` are numbered along a linear
/// extension, once per labelled cover set.
pub fn all_lattices(n: usize) -> Vec<FiniteLattice> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let covers: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        // cheap filters: 0 is the only minimal and n-1 the only maximal element
        let has_lower = |b: usize| covers.iter().any(|&(_, y)| y == b);
        let has_upper = |a: usize| covers.iter().any(|&(x, _)| x == a);
        if (1..n).any(|b| !has_lower(b)) || (0..n - 1).any(|a| !has_upper(a)) {
            continue;
        }
        if let Ok(l) = FiniteLattice::from_covers(n, &covers, None) {
            out.push(l);
        }
    }
    out
}

pub fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u128) -> u128 {
    binomial(2 * n, n) / (n + 1)
}

/// `Hom(M[a,b], M[c,d]) ≠ 0` for interval modules, written out again.
pub fn hom(x: (usize, usize), y: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (x, y);
    c <= a && a <= d && d <= b
}

/// Torsion classes as the sets `T` with `T = ⊥(T^⊥)`, by scanning every
/// subset of `modules`.
pub fn torsion_classes_by_perp(modules: &[(usize, usize)]) -> Vec<u64> {
    let k = modules.len();
    let perp = |t: u64| -> u64 {
        (0..k)
            .filter(|&y| (0..k).all(|x| t >> x & 1 == 0 || !hom(modules[x], modules[y])))
            .fold(0, |m, y| m | 1 << y)
    };
    let left = |f: u64| -> u64 {
        (0..k)
            .filter(|&x| (0..k).all(|y| f >> y & 1 == 0 || !hom(modules[x], modules[y])))
            .fold(0, |m, x| m | 1 << x)
    };
    (0u64..1 << k).filter(|&t| left(perp(t)) == t).collect()
}
