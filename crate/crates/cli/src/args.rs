use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cqed_core::LevelLabel;

use crate::grid::Grid;

#[derive(Debug, Parser)]
#[command(
    name = "cqed",
    version,
    about = "Spectra, populations and Bloch–Siegert shifts of a polar molecule in a cavity",
    args_override_self = true
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// key=value file supplying defaults for any long flag; flags on the command line win
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write CSV here instead of stdout
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Omit the generation-time line from the CSV header
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Molecule catalog (defaults to the bundled one)
    #[arg(long, global = true, env = "CQED_CATALOG", value_name = "FILE")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level energies over a parameter grid
    #[command(args_override_self = true)]
    Spectrum(SpectrumArgs),
    /// Bare-basis populations of one level
    #[command(args_override_self = true)]
    Populations(PopulationArgs),
    /// Bloch–Siegert shifts of the transitions from |g,0>
    #[command(args_override_self = true)]
    BsShift(ShiftArgs),
    /// Resonant shifts of the lowest transition for every catalog molecule
    #[command(args_override_self = true)]
    Table1(Table1Args),
    /// Any combination of quantities and levels over a grid
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Perturbative validity report at one point
    #[command(args_override_self = true)]
    Validate(ValidateArgs),
}

/// Model parameters. Energies are in units of ω_c unless a molecule is chosen, in which case
/// they are in cm⁻¹ and δ moves the cavity away from the fixed transition frequency.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Normalized coupling λ/ω_c [default: 0.05]
    #[arg(long, allow_hyphen_values = true, conflicts_with = "f_grid")]
    pub f: Option<f64>,
    /// Normalized permanent dipole difference [default: 0]
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["alpha_grid", "molecule"])]
    pub alpha: Option<f64>,
    /// Detuning ω₀ − ω_c [default: 0]
    #[arg(long, allow_hyphen_values = true, conflicts_with = "delta_grid")]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_name = "START:STOP:COUNT|LIST")]
    pub f_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "START:STOP:COUNT|LIST", conflicts_with = "molecule")]
    pub alpha_grid: Option<Grid>,
    #[arg(long, allow_hyphen_values = true, value_name = "START:STOP:COUNT|LIST")]
    pub delta_grid: Option<Grid>,
    /// Cavity frequency [default: 1]
    #[arg(long, conflicts_with = "molecule")]
    pub omega_c: Option<f64>,
    /// Catalog entry, by name or "name transition"
    #[arg(long)]
    pub molecule: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Dsp,
    Exact,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = EngineChoice::Dsp)]
    pub engine: EngineChoice,
    /// Perturbation order for wavefunctions
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub order: u8,
    /// First photon cutoff of the exact engine's doubling protocol
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub n_max_start: u64,
    /// Exact-engine eigenvalue tolerance, in units of ω_c
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be > 0, got {s}"))
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Comma list such as g0,0-,0+ [default: the seven lowest]
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<LevelLabel>>,
}

#[derive(Debug, Args)]
pub struct PopulationArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value = "g0")]
    pub level: LevelLabel,
    /// Report bare states up to this photon number [default: level photons + 3]
    #[arg(long)]
    pub max_photons: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Dressed indices of the upper levels
    #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
    pub k: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value_t = 0.05, value_parser = positive)]
    pub f: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<LevelLabel>>,
    /// Comma list of energy, bs_shift, bs_shift_pdm, bs_shift_crt, e2_pdm, e2_crt, pop_g0, pop_e1, ...
    #[arg(long, value_delimiter = ',', default_value = "energy")]
    pub quantities: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Highest dressed index included in the pair scan
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
}
