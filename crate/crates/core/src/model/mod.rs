//! System parameters, the bare product basis and the dressed basis of the rotating-wave Hamiltonian.

mod basis;
mod dressed;
mod params;

pub use basis::{basis_dim, BareAmplitudes, BareState, Electronic};
pub use dressed::{
    dressed_data, dressed_vector, mixing_angle, reference_vector, unperturbed_energy, Branch,
    DressedData, LevelLabel,
};
pub use params::SystemParams;
