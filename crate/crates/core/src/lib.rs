//! Spectrum, eigenstates, populations and Bloch–Siegert shifts of a two-level polar molecule
//! coupled to a single cavity mode,
//!
//! ```text
//! H = ω_c a†a + ½ω₀σ_z − λ(ασ_z + σ_x)(a† + a)
//! ```
//!
//! computed two ways: dressed-state perturbation theory around the Jaynes–Cummings
//! Hamiltonian ([`perturbation`]) and exact diagonalization on a truncated Fock space
//! ([`exact`]). Units are whatever the caller uses consistently (`ħ = 1`).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

/// Crate version, recorded in output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod error;
pub mod exact;
pub mod model;
pub mod molecules;
pub mod observables;
pub mod perturbation;

pub use error::{Error, Result};
pub use model::{BareState, Branch, DressedData, LevelLabel, SystemParams};
pub use molecules::MoleculeRecord;
pub use observables::{BsShift, Method, PopulationTable, Quantity, SweepRow, SweepSpec};
pub use perturbation::{EnergyBreakdown, PerturbationOrder, StateExpansion};
