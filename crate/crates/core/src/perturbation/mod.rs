//! Dressed-state perturbation theory for the permanent-dipole and counter-rotating couplings.
//!
//! Two independent routes are provided. [`closed`] evaluates the closed-form
//! second-order energies and wavefunction corrections directly from the mixing angles;
//! [`generic`] runs textbook Rayleigh–Schrödinger perturbation theory on matrix elements
//! obtained by operator algebra in the bare basis. The second is the oracle for the first.

mod closed;
mod coupling;
mod expansion;
mod generic;
mod validity;

pub use closed::{dsp_energy, e2_excited, e2_ground, psi1_excited, psi_ground, SecondOrderEnergy};
pub use coupling::{apply_v, vmat, vmat_channels, VChannels};
pub use expansion::{Channel, EnergyBreakdown, PerturbationOrder, StateExpansion, Term};
pub use generic::{generic_rs, generic_rs_with, required_cut, GenericResult};
pub use validity::{alpha_bound, validity_metrics, ValidityReport};
