//! The target rings of the decomposition and the decomposition itself.

mod block;
mod certify;
mod decompose;
mod lattice;

pub use block::{block_ring, BlockRing, BlockSpec};
pub use certify::{certify_isomorphism, Certificate, CERT_EXHAUSTIVE_LIMIT, CERT_SAMPLE_PAIRS};
pub use decompose::{
    build_basis_sets, decompose, BasisSets, Decomposition, DecompositionReport, Factor, FactorElement, FactorReport,
    M2Factor, PositionLattice, PositionLatticeReport, Satellite, SubdirectElement, SubdirectFactor,
};
pub use lattice::{lattice_of, lattice_ring, Lattice, LatticeRing, LatticeSummary};
