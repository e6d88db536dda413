//! Finite lattice analysis: join- and meet-irreducibles and the κ map,
//! left modular elements, extremal chains, labelling quivers, and lattice
//! generators including torsion-class lattices of line-quiver Nakayama
//! algebras.

pub mod bitset;
pub mod generators;
pub mod irreducibles;
pub mod lattice;
pub mod modularity;
pub mod quiver;

pub use bitset::Bitset;
pub use irreducibles::{Kappa, KappaData, KappaError};
pub use lattice::{Chain, FiniteLattice, LatticeError};
