//! Closed-form dressed-state perturbation theory.
//!
//! Second-order energies of `|g,0⟩` and `|φ_k^±⟩`, the ground-state wavefunction through
//! second order, and first-order corrections of the dressed states, each split into the
//! permanent-dipole (PDM) and counter-rotating (CRT) channels.
//!
//! Terms that would reference a dressed pair with negative index (`θ_{k−1}` at `k = 0`,
//! `θ_{k−2}` at `k < 2`) are omitted; coupling to `|g,0⟩` is carried by the explicit
//! Kronecker-delta terms instead.

use super::expansion::{Channel, EnergyBreakdown, PerturbationOrder, StateExpansion};
use crate::error::{Error, Result};
use crate::model::{dressed_data, Branch, DressedData, LevelLabel, SystemParams};

/// Second-order energy split by channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderEnergy {
    /// `∝ α²`
    pub pdm: f64,
    pub crt: f64,
}

impl SecondOrderEnergy {
    pub fn total(&self) -> f64 {
        self.pdm + self.crt
    }
}

/// Dressed-pair data for indices `0..=n_max` plus the near-degeneracy guard.
struct Dressed<'a> {
    p: &'a SystemParams,
    pairs: Vec<DressedData>,
}

impl<'a> Dressed<'a> {
    fn new(p: &'a SystemParams, n_max: usize) -> Result<Self> {
        let pairs = (0..=n_max)
            .map(|n| dressed_data(n, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dressed { p, pairs })
    }

    fn sin(&self, n: usize) -> f64 {
        self.pairs[n].theta.sin()
    }

    fn cos(&self, n: usize) -> f64 {
        self.pairs[n].theta.cos()
    }

    fn eps(&self, n: usize, b: Branch) -> f64 {
        self.pairs[n].energy(b)
    }

    fn half_w0(&self) -> f64 {
        0.5 * self.p.omega_0()
    }

    fn guard(&self, value: f64, level: LevelLabel, other: LevelLabel) -> Result<f64> {
        if value.abs() < self.p.degeneracy_threshold() {
            return Err(Error::NearDegeneracy {
                level,
                other,
                gap: value,
            });
        }
        Ok(value)
    }

    /// `ω_0/2 + ε_n^b`, the gap between `|φ_n^b⟩` and `|g,0⟩`.
    fn ground_gap(&self, n: usize, b: Branch) -> Result<f64> {
        self.guard(
            self.half_w0() + self.eps(n, b),
            LevelLabel::Ground,
            LevelLabel::dressed(n, b),
        )
    }

    /// `ε_k^{bk} − ε_m^{bm}`.
    fn gap(&self, k: usize, bk: Branch, m: usize, bm: Branch) -> Result<f64> {
        self.guard(
            self.eps(k, bk) - self.eps(m, bm),
            LevelLabel::dressed(k, bk),
            LevelLabel::dressed(m, bm),
        )
    }
}

use Branch::{Minus, Plus};

/// Second-order energy of `|g,0⟩`.
pub fn e2_ground(p: &SystemParams) -> Result<SecondOrderEnergy> {
    let d = Dressed::new(p, 1)?;
    let l2 = p.lambda() * p.lambda();
    let (s0, c0, s1, c1) = (d.sin(0), d.cos(0), d.sin(1), d.cos(1));
    let pdm = -l2
        * p.alpha()
        * p.alpha()
        * (c0 * c0 / d.ground_gap(0, Plus)? + s0 * s0 / d.ground_gap(0, Minus)?);
    let crt = -l2 * (s1 * s1 / d.ground_gap(1, Plus)? + c1 * c1 / d.ground_gap(1, Minus)?);
    Ok(SecondOrderEnergy { pdm, crt })
}

/// Second-order energy of `|φ_k^branch⟩`.
pub fn e2_excited(k: usize, branch: Branch, p: &SystemParams) -> Result<SecondOrderEnergy> {
    let d = Dressed::new(p, k + 2)?;
    let l2 = p.lambda() * p.lambda();
    let a2 = p.alpha() * p.alpha();
    let kf = k as f64;
    let (r0, r1, r2) = (kf.sqrt(), (kf + 1.0).sqrt(), (kf + 2.0).sqrt());
    let (sk, ck) = (d.sin(k), d.cos(k));
    let (su, cu) = (d.sin(k + 1), d.cos(k + 1));
    let (s2, c2) = (d.sin(k + 2), d.cos(k + 2));
    let b = branch;

    let mut pdm = 0.0;
    let mut crt = 0.0;
    match b {
        Plus => {
            pdm += (r1 * sk * su - r2 * ck * cu).powi(2) / d.gap(k, b, k + 1, Plus)?;
            pdm += (r1 * sk * cu + r2 * ck * su).powi(2) / d.gap(k, b, k + 1, Minus)?;
            if k >= 1 {
                let (sl, cl) = (d.sin(k - 1), d.cos(k - 1));
                pdm += (r0 * sk * sl - r1 * ck * cl).powi(2) / d.gap(k, b, k - 1, Plus)?;
                pdm += (r0 * sk * cl + r1 * ck * sl).powi(2) / d.gap(k, b, k - 1, Minus)?;
            }
            if k == 0 {
                pdm += (r1 * ck).powi(2) / d.ground_gap(k, b)?;
            }

            crt += (kf + 2.0)
                * ck
                * ck
                * (s2 * s2 / d.gap(k, b, k + 2, Plus)? + c2 * c2 / d.gap(k, b, k + 2, Minus)?);
            if k >= 2 {
                let (sl, cl) = (d.sin(k - 2), d.cos(k - 2));
                crt += kf
                    * sk
                    * sk
                    * (cl * cl / d.gap(k, b, k - 2, Plus)? + sl * sl / d.gap(k, b, k - 2, Minus)?);
            }
            if k == 1 {
                crt += (r0 * sk).powi(2) / d.ground_gap(k, b)?;
            }
        }
        Minus => {
            pdm += (r1 * ck * su + r2 * sk * cu).powi(2) / d.gap(k, b, k + 1, Plus)?;
            pdm += (r1 * ck * cu - r2 * sk * su).powi(2) / d.gap(k, b, k + 1, Minus)?;
            if k >= 1 {
                let (sl, cl) = (d.sin(k - 1), d.cos(k - 1));
                pdm += (r0 * sl * ck + r1 * cl * sk).powi(2) / d.gap(k, b, k - 1, Plus)?;
                pdm += (r0 * cl * ck - r1 * sl * sk).powi(2) / d.gap(k, b, k - 1, Minus)?;
            }
            if k == 0 {
                pdm += (r1 * sk).powi(2) / d.ground_gap(k, b)?;
            }

            crt += (kf + 2.0)
                * sk
                * sk
                * (s2 * s2 / d.gap(k, b, k + 2, Plus)? + c2 * c2 / d.gap(k, b, k + 2, Minus)?);
            if k >= 2 {
                let (sl, cl) = (d.sin(k - 2), d.cos(k - 2));
                crt += kf
                    * ck
                    * ck
                    * (cl * cl / d.gap(k, b, k - 2, Plus)? + sl * sl / d.gap(k, b, k - 2, Minus)?);
            }
            if k == 1 {
                crt += (r0 * ck).powi(2) / d.ground_gap(k, b)?;
            }
        }
    }
    Ok(SecondOrderEnergy {
        pdm: l2 * a2 * pdm,
        crt: l2 * crt,
    })
}

/// Energy of `label` through second order from the closed forms.
pub fn dsp_energy(label: LevelLabel, p: &SystemParams) -> Result<EnergyBreakdown> {
    let (e0, e2) = match label {
        LevelLabel::Ground => (-0.5 * p.omega_0(), e2_ground(p)?),
        LevelLabel::Dressed { n, branch } => (dressed_data(n, p)?.energy(branch), e2_excited(n, branch, p)?),
    };
    Ok(EnergyBreakdown {
        label,
        e0,
        e1: 0.0,
        e2_pdm: e2.pdm,
        e2_crt: e2.crt,
    })
}

/// Ground-state wavefunction through `order`, coefficients over the dressed basis.
pub fn psi_ground(p: &SystemParams, order: PerturbationOrder) -> Result<StateExpansion> {
    let mut psi = StateExpansion::unperturbed(LevelLabel::Ground);
    psi.order = order;
    if order == PerturbationOrder::ZERO {
        return Ok(psi);
    }
    let d = Dressed::new(p, 3)?;
    let lam = p.lambda();
    let alpha = p.alpha();
    let (s0, c0) = (d.sin(0), d.cos(0));
    let (s1, c1) = (d.sin(1), d.cos(1));
    let d0p = d.ground_gap(0, Plus)?;
    let d0m = d.ground_gap(0, Minus)?;
    let d1p = d.ground_gap(1, Plus)?;
    let d1m = d.ground_gap(1, Minus)?;

    psi.push(LevelLabel::plus(0), 1, Channel::Pdm, -lam * alpha * c0 / d0p);
    psi.push(LevelLabel::minus(0), 1, Channel::Pdm, lam * alpha * s0 / d0m);
    psi.push(LevelLabel::plus(1), 1, Channel::Crt, lam * s1 / d1p);
    psi.push(LevelLabel::minus(1), 1, Channel::Crt, lam * c1 / d1m);
    if order == PerturbationOrder::FIRST {
        return Ok(psi);
    }

    let (s2, c2) = (d.sin(2), d.cos(2));
    let (s3, c3) = (d.sin(3), d.cos(3));
    let d2p = d.ground_gap(2, Plus)?;
    let d2m = d.ground_gap(2, Minus)?;
    let d3p = d.ground_gap(3, Plus)?;
    let d3m = d.ground_gap(3, Minus)?;
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let l2 = lam * lam;

    // dipole channel, ∝ α²
    let a2 = -l2 * alpha * alpha;
    psi.push(
        LevelLabel::plus(1),
        2,
        Channel::Pdm,
        a2 / d1p * (c0 * (s0 * s1 - r2 * c0 * c1) / d0p - s0 * (c0 * s1 + r2 * s0 * c1) / d0m),
    );
    psi.push(
        LevelLabel::minus(1),
        2,
        Channel::Pdm,
        a2 / d1m * (c0 * (s0 * c1 + r2 * c0 * s1) / d0p - s0 * (c0 * c1 - r2 * s0 * s1) / d0m),
    );
    psi.push(
        LevelLabel::Ground,
        2,
        Channel::Pdm,
        a2 * 0.5 * ((c0 / d0p).powi(2) + (s0 / d0m).powi(2)),
    );

    // counter-rotating channel
    let q = 1.0 / d1p - 1.0 / d1m;
    let lead = -l2 * (-r3 * s1 * c1);
    psi.push(LevelLabel::plus(3), 2, Channel::Crt, lead * s3 / d3p * q);
    psi.push(LevelLabel::minus(3), 2, Channel::Crt, lead * c3 / d3m * q);
    psi.push(
        LevelLabel::Ground,
        2,
        Channel::Crt,
        -l2 * 0.5 * ((s1 / d1p).powi(2) + (c1 / d1m).powi(2)),
    );

    // mixed channel, ∝ α
    let m = -l2 * alpha;
    psi.push(
        LevelLabel::plus(0),
        2,
        Channel::PdmCrt,
        -m / d0p * (s1 / d1p * (s1 * s0 - r2 * c1 * c0) + c1 / d1m * (c1 * s0 + r2 * s1 * c0)),
    );
    psi.push(
        LevelLabel::minus(0),
        2,
        Channel::PdmCrt,
        -m / d0m * (s1 / d1p * (s1 * c0 + r2 * c1 * s0) + c1 / d1m * (c1 * c0 - r2 * s1 * s0)),
    );
    let s_zero = c0 * c0 / d0p + s0 * s0 / d0m;
    psi.push(
        LevelLabel::plus(2),
        2,
        Channel::PdmCrt,
        m / d2p
            * (r2 * s2 * s_zero
                - (s1 * (r2 * s1 * s2 - r3 * c1 * c2) / d1p
                    + c1 * (r2 * c1 * s2 + r3 * s1 * c2) / d1m)),
    );
    psi.push(
        LevelLabel::minus(2),
        2,
        Channel::PdmCrt,
        m / d2m
            * (r2 * c2 * s_zero
                - (s1 * (r2 * s1 * c2 + r3 * c1 * s2) / d1p
                    + c1 * (r2 * c1 * c2 - r3 * s1 * s2) / d1m)),
    );
    Ok(psi)
}

/// First-order wavefunction of `|φ_k^branch⟩`.
///
/// The photon-number overlaps in the general sums collapse to Kronecker deltas, leaving
/// the neighbours `k ± 1` (dipole channel), `k ± 2` (counter-rotating channel) and `|g,0⟩`
/// for `k = 0` (dipole) or `k = 1` (counter-rotating).
pub fn psi1_excited(k: usize, branch: Branch, p: &SystemParams) -> Result<StateExpansion> {
    let d = Dressed::new(p, k + 2)?;
    let lam = p.lambda();
    let la = lam * p.alpha();
    let kf = k as f64;
    let (r0, r1, r2) = (kf.sqrt(), (kf + 1.0).sqrt(), (kf + 2.0).sqrt());
    let (sk, ck) = (d.sin(k), d.cos(k));
    let b = branch;
    let mut psi = StateExpansion::unperturbed(LevelLabel::dressed(k, b));
    psi.order = PerturbationOrder::FIRST;

    // dipole channel: neighbours m = k ± 1 with weights
    //   a_m = √(k+1)[m=k+1] + √k[m=k−1],  b_m = √(k+2)[m=k+1] + √(k+1)[m=k−1]
    let mut neighbours = vec![(k + 1, r1, r2)];
    if k >= 1 {
        neighbours.push((k - 1, r0, r1));
    }
    for (m, am, bm) in neighbours {
        let (sm, cm) = (d.sin(m), d.cos(m));
        let (to_plus, to_minus) = match b {
            Plus => (sm * sk * am - cm * ck * bm, cm * sk * am + sm * ck * bm),
            Minus => (sm * ck * am + cm * sk * bm, cm * ck * am - sm * sk * bm),
        };
        psi.push(LevelLabel::plus(m), 1, Channel::Pdm, -la * to_plus / d.gap(k, b, m, Plus)?);
        psi.push(LevelLabel::minus(m), 1, Channel::Pdm, -la * to_minus / d.gap(k, b, m, Minus)?);
    }
    if k == 0 {
        let g = d.ground_gap(k, b)?;
        let c = match b {
            Plus => la * r1 * ck / g,
            Minus => -la * r1 * sk / g,
        };
        psi.push(LevelLabel::Ground, 1, Channel::Pdm, c);
    }

    // counter-rotating channel: m = k + 2, m = k − 2 and |g,0⟩ at k = 1
    let m = k + 2;
    let (sm, cm) = (d.sin(m), d.cos(m));
    let (to_plus, to_minus) = match b {
        Plus => (-lam * r2 * sm * ck, -lam * r2 * cm * ck),
        Minus => (lam * r2 * sm * sk, lam * r2 * cm * sk),
    };
    psi.push(LevelLabel::plus(m), 1, Channel::Crt, to_plus / d.gap(k, b, m, Plus)?);
    psi.push(LevelLabel::minus(m), 1, Channel::Crt, to_minus / d.gap(k, b, m, Minus)?);
    if k >= 2 {
        let m = k - 2;
        let (sm, cm) = (d.sin(m), d.cos(m));
        let (to_plus, to_minus) = match b {
            Plus => (-lam * r0 * cm * sk, lam * r0 * sm * sk),
            Minus => (-lam * r0 * cm * ck, lam * r0 * sm * ck),
        };
        psi.push(LevelLabel::plus(m), 1, Channel::Crt, to_plus / d.gap(k, b, m, Plus)?);
        psi.push(LevelLabel::minus(m), 1, Channel::Crt, to_minus / d.gap(k, b, m, Minus)?);
    }
    if k == 1 {
        let g = d.ground_gap(k, b)?;
        let c = match b {
            Plus => -lam * r0 * sk / g,
            Minus => -lam * r0 * ck / g,
        };
        psi.push(LevelLabel::Ground, 1, Channel::Crt, c);
    }
    Ok(psi)
}
