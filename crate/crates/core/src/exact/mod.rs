//! Exact diagonalization of the full Hamiltonian on a truncated Fock space.

mod hamiltonian;
mod spectrum;

pub use hamiltonian::{build, build_with, Terms, TruncatedHamiltonian};
pub use spectrum::{
    converged_spectrum, converged_spectrum_default, eigensolve, match_levels, matched_spectrum,
    LevelMatch, SpectrumResult, DEFAULT_N_MAX_START, DEFAULT_TOL, EIGEN_MAX_ITERATIONS, MAX_DIM,
    MIN_MATCH_OVERLAP, RESIDUAL_TOL,
};
