//! Jaynes–Cummings dressed basis: the exact eigenstates of the rotating-wave part of
//! the Hamiltonian, which serve as the unperturbed basis for everything downstream.

use std::fmt;
use std::str::FromStr;

use super::basis::{BareAmplitudes, BareState};
use super::params::SystemParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Minus => '-',
            Branch::Plus => '+',
        }
    }
}

/// An unperturbed level: the isolated ground state `|g,0⟩` or a dressed state `|φ_n^±⟩`.
///
/// Ordering puts `Ground` first, then dressed pairs by `n` with `−` before `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelLabel {
    Ground,
    Dressed { n: usize, branch: Branch },
}

impl LevelLabel {
    pub const fn dressed(n: usize, branch: Branch) -> Self {
        LevelLabel::Dressed { n, branch }
    }

    pub const fn plus(n: usize) -> Self {
        LevelLabel::Dressed {
            n,
            branch: Branch::Plus,
        }
    }

    pub const fn minus(n: usize) -> Self {
        LevelLabel::Dressed {
            n,
            branch: Branch::Minus,
        }
    }

    /// `|g,0⟩` and the dressed pairs `0..=n_max`, in label order.
    pub fn all_up_to(n_max: usize) -> Vec<LevelLabel> {
        let mut v = vec![LevelLabel::Ground];
        for n in 0..=n_max {
            v.push(LevelLabel::minus(n));
            v.push(LevelLabel::plus(n));
        }
        v
    }

    /// The seven lowest levels used throughout: `|g,0⟩` and `|φ_k^±⟩` for `k ≤ 2`.
    pub fn seven_lowest() -> Vec<LevelLabel> {
        Self::all_up_to(2)
    }

    /// Largest photon number appearing in the level's unperturbed state.
    pub fn max_photons(&self) -> usize {
        match self {
            LevelLabel::Ground => 0,
            LevelLabel::Dressed { n, .. } => n + 1,
        }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelLabel::Ground => write!(f, "g0"),
            LevelLabel::Dressed { n, branch } => write!(f, "{}{}", n, branch.symbol()),
        }
    }
}

impl FromStr for LevelLabel {
    type Err = Error;

    /// Accepts `g0` for the ground state and `<n>+` / `<n>-` for dressed levels.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("g0") || s.eq_ignore_ascii_case("g") {
            return Ok(LevelLabel::Ground);
        }
        let bad = || Error::InvalidParameter(format!("unrecognised level label '{s}'"));
        let (num, sign) = s.split_at(s.len().checked_sub(1).ok_or_else(bad)?);
        let n: usize = num.parse().map_err(|_| bad())?;
        match sign {
            "+" => Ok(LevelLabel::plus(n)),
            "-" => Ok(LevelLabel::minus(n)),
            _ => Err(bad()),
        }
    }
}

/// Mixing angle, Rabi frequency and energies of the `n`-th dressed pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedData {
    pub n: usize,
    pub theta: f64,
    pub rabi: f64,
    pub e_plus: f64,
    pub e_minus: f64,
}

impl DressedData {
    pub fn energy(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.e_plus,
            Branch::Minus => self.e_minus,
        }
    }
}

fn rabi(n: usize, p: &SystemParams) -> f64 {
    let d = p.delta();
    let l = p.lambda();
    (d * d + 4.0 * l * l * (n as f64 + 1.0)).sqrt()
}

/// `θ_n = atan2(2λ√(n+1), δ − Ω_nδ)`, which lies in `(π/2, π)` for `λ > 0`.
///
/// With this branch `sin θ_n |e,n⟩ + cos θ_n |g,n+1⟩` is the upper dressed state.
pub fn mixing_angle(n: usize, p: &SystemParams) -> Result<f64> {
    if p.lambda() == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let d = p.delta();
    let coupling = 2.0 * p.lambda() * (n as f64 + 1.0).sqrt();
    let om = rabi(n, p);
    // δ − Ω cancels badly for δ ≫ λ; use the conjugate form there.
    let denom = if d > 0.0 {
        -coupling * coupling / (d + om)
    } else {
        d - om
    };
    Ok(coupling.atan2(denom))
}

pub fn dressed_data(n: usize, p: &SystemParams) -> Result<DressedData> {
    let theta = mixing_angle(n, p)?;
    let om = rabi(n, p);
    let centre = p.omega_c() * (n as f64 + 0.5);
    Ok(DressedData {
        n,
        theta,
        rabi: om,
        e_plus: centre + 0.5 * om,
        e_minus: centre - 0.5 * om,
    })
}

/// Unperturbed energy of a level. Unlike [`dressed_data`] this is defined at `λ = 0`.
pub fn unperturbed_energy(label: LevelLabel, p: &SystemParams) -> f64 {
    match label {
        LevelLabel::Ground => -0.5 * p.omega_0(),
        LevelLabel::Dressed { n, branch } => {
            p.omega_c() * (n as f64 + 0.5) + 0.5 * branch.sign() * rabi(n, p)
        }
    }
}

fn check_cutoff(label: LevelLabel, n_max: usize) -> Result<()> {
    let needed = label.max_photons();
    if needed > n_max {
        return Err(Error::Truncation {
            what: format!("level {label}"),
            needed,
            cutoff: n_max,
        });
    }
    Ok(())
}

/// Unperturbed state of `label` over the bare basis truncated at `n_max` photons.
pub fn dressed_vector(label: LevelLabel, p: &SystemParams, n_max: usize) -> Result<BareAmplitudes> {
    check_cutoff(label, n_max)?;
    let mut v = BareAmplitudes::zeros(n_max);
    match label {
        LevelLabel::Ground => v.add(BareState::g(0), 1.0),
        LevelLabel::Dressed { n, branch } => {
            let (s, c) = mixing_angle(n, p)?.sin_cos();
            match branch {
                Branch::Plus => {
                    v.add(BareState::e(n), s);
                    v.add(BareState::g(n + 1), c);
                }
                Branch::Minus => {
                    v.add(BareState::e(n), c);
                    v.add(BareState::g(n + 1), -s);
                }
            }
        }
    }
    Ok(v)
}

/// Like [`dressed_vector`], but falls back to the decoupled bare state at `λ = 0`.
///
/// At zero coupling `|φ_n^+⟩` is the higher of `|e,n⟩` and `|g,n+1⟩`; at exact resonance
/// the `δ → 0⁺` limit (`|φ_n^+⟩ = |e,n⟩`) is used.
pub fn reference_vector(label: LevelLabel, p: &SystemParams, n_max: usize) -> Result<BareAmplitudes> {
    if p.lambda() > 0.0 || label == LevelLabel::Ground {
        return dressed_vector(label, p, n_max);
    }
    check_cutoff(label, n_max)?;
    let mut v = BareAmplitudes::zeros(n_max);
    if let LevelLabel::Dressed { n, branch } = label {
        let excited_is_upper = p.delta() >= 0.0;
        let state = match (branch, excited_is_upper) {
            (Branch::Plus, true) | (Branch::Minus, false) => BareState::e(n),
            _ => BareState::g(n + 1),
        };
        v.add(state, 1.0);
    }
    Ok(v)
}
