use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{dressed_vector, BareAmplitudes, LevelLabel, SystemParams};

/// Order of a perturbative correction; closed forms and the generic engine stop at 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerturbationOrder(u8);

impl PerturbationOrder {
    pub const ZERO: Self = PerturbationOrder(0);
    pub const FIRST: Self = PerturbationOrder(1);
    pub const SECOND: Self = PerturbationOrder(2);

    pub fn new(r: u8) -> Result<Self> {
        if r > 2 {
            return Err(Error::InvalidParameter(format!(
                "perturbation order must be 0, 1 or 2, got {r}"
            )));
        }
        Ok(PerturbationOrder(r))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for PerturbationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which part of the perturbation produced a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// The unperturbed amplitude itself.
    Rwa,
    /// Permanent-dipole coupling, `∝ α` per order.
    Pdm,
    /// Counter-rotating terms.
    Crt,
    /// Mixed second-order path through both couplings, `∝ α`.
    PdmCrt,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Rwa => "rwa",
            Channel::Pdm => "pdm",
            Channel::Crt => "crt",
            Channel::PdmCrt => "pdm_crt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub level: LevelLabel,
    pub order: u8,
    pub channel: Channel,
    pub amplitude: f64,
}

/// A (possibly corrected) state as coefficients over the unperturbed levels.
///
/// Coefficients are unnormalized (the unperturbed level keeps amplitude 1 at order 0).
/// Normalization happens only in [`StateExpansion::normalized_bare`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateExpansion {
    pub label: LevelLabel,
    pub order: PerturbationOrder,
    pub terms: Vec<Term>,
}

impl StateExpansion {
    pub fn unperturbed(label: LevelLabel) -> Self {
        StateExpansion {
            label,
            order: PerturbationOrder::ZERO,
            terms: vec![Term {
                level: label,
                order: 0,
                channel: Channel::Rwa,
                amplitude: 1.0,
            }],
        }
    }

    /// Records a contribution; exact zeros are dropped so selection rules stay visible.
    pub fn push(&mut self, level: LevelLabel, order: u8, channel: Channel, amplitude: f64) {
        if amplitude == 0.0 {
            return;
        }
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.level == level && t.order == order && t.channel == channel)
        {
            t.amplitude += amplitude;
        } else {
            self.terms.push(Term {
                level,
                order,
                channel,
                amplitude,
            });
        }
    }

    /// Total coefficient of `level`, summed over orders and channels.
    pub fn coefficient(&self, level: LevelLabel) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.level == level)
            .map(|t| t.amplitude)
            .sum()
    }

    pub fn coefficient_at(&self, level: LevelLabel, order: u8) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.level == level && t.order == order)
            .map(|t| t.amplitude)
            .sum()
    }

    pub fn channel_coefficient(&self, level: LevelLabel, order: u8, channel: Channel) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.level == level && t.order == order && t.channel == channel)
            .map(|t| t.amplitude)
            .sum()
    }

    pub fn levels(&self) -> BTreeSet<LevelLabel> {
        self.terms.iter().map(|t| t.level).collect()
    }

    /// Largest photon number reached by any level in the expansion.
    pub fn max_photons(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.level.max_photons())
            .max()
            .unwrap_or(0)
    }

    /// Unnormalized amplitudes over the bare basis truncated at `n_max` photons.
    pub fn to_bare(&self, p: &SystemParams, n_max: usize) -> Result<BareAmplitudes> {
        let mut out = BareAmplitudes::zeros(n_max);
        for level in self.levels() {
            let c = self.coefficient(level);
            let v = dressed_vector(level, p, n_max)?;
            for (s, a) in v.iter() {
                if a != 0.0 {
                    out.add(s, c * a);
                }
            }
        }
        Ok(out)
    }

    /// Unit-norm bare amplitudes on the smallest truncation holding every term.
    pub fn normalized_bare(&self, p: &SystemParams) -> Result<BareAmplitudes> {
        let n_max = self.max_photons().max(1);
        Ok(self.to_bare(p, n_max)?.normalized())
    }
}

/// Unperturbed energy plus first- and second-order corrections of one level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub label: LevelLabel,
    pub e0: f64,
    /// Identically zero: every term of the perturbation changes the photon number.
    pub e1: f64,
    pub e2_pdm: f64,
    pub e2_crt: f64,
}

impl EnergyBreakdown {
    pub fn e2(&self) -> f64 {
        self.e2_pdm + self.e2_crt
    }

    pub fn total(&self) -> f64 {
        self.e0 + self.e1 + self.e2_pdm + self.e2_crt
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn order_bounds() {
        assert!(PerturbationOrder::new(2).is_ok());
        assert!(PerturbationOrder::new(3).is_err());
    }

    #[test]
    fn unperturbed_expansion() {
        let s = StateExpansion::unperturbed(LevelLabel::plus(1));
        assert_eq!(s.terms.len(), 1);
        assert_eq!(s.coefficient(LevelLabel::plus(1)), 1.0);
        let p = SystemParams::normalized(0.05, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(s.normalized_bare(&p).unwrap().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn push_merges_and_drops_zeros() {
        let mut s = StateExpansion::unperturbed(LevelLabel::Ground);
        s.push(LevelLabel::plus(0), 1, Channel::Pdm, 0.25);
        s.push(LevelLabel::plus(0), 1, Channel::Pdm, 0.25);
        s.push(LevelLabel::minus(0), 1, Channel::Pdm, 0.0);
        assert_eq!(s.terms.len(), 2);
        assert_eq!(s.channel_coefficient(LevelLabel::plus(0), 1, Channel::Pdm), 0.5);
    }
}
