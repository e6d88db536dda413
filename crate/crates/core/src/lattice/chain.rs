use super::{FiniteLattice, LatticeError};

/// Default cap on the number of maximal chains materialized at once.
pub const DEFAULT_MAX_CHAINS: usize = 1_000_000;

/// A strictly increasing sequence of elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    /// Number of steps in the chain.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_chain(&self, l: &FiniteLattice) -> bool {
        self.0.iter().all(|&a| a < l.len()) && self.0.windows(2).all(|w| l.lt(w[0], w[1]))
    }

    /// Bottom-to-top with every step a cover.
    pub fn is_maximal(&self, l: &FiniteLattice) -> bool {
        self.0.first() == Some(&l.bottom())
            && self.0.last() == Some(&l.top())
            && self.0.iter().all(|&a| a < l.len())
            && self.0.windows(2).all(|w| l.is_cover(w[0], w[1]))
    }

    /// Consecutive pairs of the chain.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Lazy enumeration of bottom-to-top cover paths in lexicographic order.
pub struct MaximalChains<'a> {
    lattice: &'a FiniteLattice,
    path: Vec<usize>,
    // next upper-cover position to try at each depth
    cursor: Vec<usize>,
    started: bool,
}

impl<'a> MaximalChains<'a> {
    pub fn new(lattice: &'a FiniteLattice) -> Self {
        MaximalChains {
            lattice,
            path: Vec::new(),
            cursor: Vec::new(),
            started: false,
        }
    }
}

impl Iterator for MaximalChains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        let l = self.lattice;
        if !self.started {
            self.started = true;
            self.path.push(l.bottom());
            self.cursor.push(0);
        } else if self.path.is_empty() {
            return None;
        } else {
            // backtrack from the previously returned top
            self.path.pop();
            self.cursor.pop();
        }
        while let Some(&last) = self.path.last() {
            if last == l.top() {
                return Some(Chain(self.path.clone()));
            }
            let depth = self.path.len() - 1;
            let k = self.cursor[depth];
            match l.upper_covers(last).get(k) {
                Some(&next) => {
                    self.cursor[depth] += 1;
                    self.path.push(next);
                    self.cursor.push(0);
                }
                None => {
                    self.path.pop();
                    self.cursor.pop();
                }
            }
        }
        None
    }
}

impl FiniteLattice {
    /// All maximal chains, lexicographically ordered. Fails once more than
    /// `max_chains` would be produced.
    pub fn maximal_chains(&self, max_chains: usize) -> Result<Vec<Chain>, LatticeError> {
        let mut out = Vec::new();
        for c in MaximalChains::new(self) {
            if out.len() == max_chains {
                return Err(LatticeError::ChainBudgetExceeded(max_chains));
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Number of maximal chains, by dynamic programming over the Hasse
    /// diagram (saturating).
    pub fn count_maximal_chains(&self) -> u128 {
        let mut count = vec![0u128; self.len()];
        count[self.bottom()] = 1;
        for a in self.linear_order() {
            let c = count[a];
            for &b in self.upper_covers(a) {
                count[b] = count[b].saturating_add(c);
            }
        }
        count[self.top()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (2, 3), (3, 4), (1, 4)], None).unwrap()
    }

    #[test]
    fn pentagon_chains() {
        let l = pentagon();
        let chains = l.maximal_chains(DEFAULT_MAX_CHAINS).unwrap();
        assert_eq!(chains, vec![Chain(vec![0, 1, 4]), Chain(vec![0, 2, 3, 4])]);
        assert!(chains.iter().all(|c| c.is_maximal(&l)));
        assert_eq!(l.count_maximal_chains(), 2);
    }

    #[test]
    fn chain_budget() {
        let l = pentagon();
        assert_eq!(
            l.maximal_chains(1),
            Err(LatticeError::ChainBudgetExceeded(1))
        );
    }

    #[test]
    fn single_element_chain() {
        let l = FiniteLattice::from_covers(1, &[], None).unwrap();
        let chains = l.maximal_chains(10).unwrap();
        assert_eq!(chains, vec![Chain(vec![0])]);
        assert_eq!(chains[0].length(), 0);
    }

    #[test]
    fn chain_predicates() {
        let l = pentagon();
        assert!(Chain(vec![0, 3]).is_chain(&l));
        assert!(!Chain(vec![0, 3]).is_maximal(&l));
        assert!(!Chain(vec![1, 2]).is_chain(&l));
    }
}
