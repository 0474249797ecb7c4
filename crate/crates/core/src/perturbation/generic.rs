//! Rayleigh–Schrödinger perturbation theory over the truncated dressed basis.
//!
//! Standard non-degenerate formulas with the state normalized to second order
//! (the unperturbed level carries `−½Σ|c⁽¹⁾|²` at order 2).

use super::coupling::{CouplingTable, VChannels};
use super::expansion::{Channel, PerturbationOrder, StateExpansion};
use crate::error::{Error, Result};
use crate::model::{unperturbed_energy, LevelLabel, SystemParams};

#[derive(Debug, Clone, PartialEq)]
pub struct GenericResult {
    pub label: LevelLabel,
    pub e0: f64,
    pub e1: f64,
    /// Full second-order energy.
    pub e2: f64,
    pub e2_pdm: f64,
    pub e2_crt: f64,
    pub state: StateExpansion,
}

/// Smallest dressed cutoff for which the sums at `order` are exact: `V` connects dressed
/// indices differing by at most two, and `|g,0⟩` behaves like index −1.
pub fn required_cut(label: LevelLabel, order: PerturbationOrder) -> usize {
    let base: i64 = match label {
        LevelLabel::Ground => -1,
        LevelLabel::Dressed { n, .. } => n as i64,
    };
    (base + 2 * order.get() as i64).max(base).max(0) as usize
}

pub fn generic_rs(
    label: LevelLabel,
    p: &SystemParams,
    order: PerturbationOrder,
    n_cut: usize,
) -> Result<GenericResult> {
    generic_rs_with(label, p, order, n_cut, VChannels::ALL)
}

/// Generic engine restricted to a subset of the perturbation.
pub fn generic_rs_with(
    label: LevelLabel,
    p: &SystemParams,
    order: PerturbationOrder,
    n_cut: usize,
    channels: VChannels,
) -> Result<GenericResult> {
    let needed = required_cut(label, order);
    if n_cut < needed {
        return Err(Error::Truncation {
            what: format!("order-{order} sums for {label}"),
            needed,
            cutoff: n_cut,
        });
    }
    if p.lambda() == 0.0 {
        return Err(Error::DegenerateCoupling);
    }

    let labels = LevelLabel::all_up_to(n_cut);
    let table = CouplingTable::new(&labels, p, channels)?;
    let me = labels
        .iter()
        .position(|&l| l == label)
        .expect("label inside cutoff");
    let e0 = unperturbed_energy(label, p);
    let energies: Vec<f64> = labels.iter().map(|&l| unperturbed_energy(l, p)).collect();
    let thr = p.degeneracy_threshold();
    let gap = |m: usize, numerator: f64| -> Result<f64> {
        let d = e0 - energies[m];
        if numerator != 0.0 && d.abs() < thr {
            return Err(Error::NearDegeneracy {
                level: label,
                other: labels[m],
                gap: d,
            });
        }
        Ok(d)
    };

    let e1 = table.total(me, me);
    let mut state = StateExpansion::unperturbed(label);
    state.order = order;

    // first order
    let mut c1_pdm = vec![0.0; labels.len()];
    let mut c1_crt = vec![0.0; labels.len()];
    let (mut e2, mut e2_pdm, mut e2_crt) = (0.0, 0.0, 0.0);
    for m in 0..labels.len() {
        if m == me {
            continue;
        }
        let (vp, vc) = (table.pdm[m][me], table.crt[m][me]);
        let v = vp + vc;
        let d = gap(m, v)?;
        if v == 0.0 {
            continue;
        }
        e2 += v * v / d;
        e2_pdm += vp * vp / d;
        e2_crt += vc * vc / d;
        c1_pdm[m] = vp / d;
        c1_crt[m] = vc / d;
    }

    if order >= PerturbationOrder::FIRST {
        for m in 0..labels.len() {
            state.push(labels[m], 1, Channel::Pdm, c1_pdm[m]);
            state.push(labels[m], 1, Channel::Crt, c1_crt[m]);
        }
    }

    if order >= PerturbationOrder::SECOND {
        for m in 0..labels.len() {
            if m == me {
                continue;
            }
            let (mut pp, mut cc, mut mixed) = (0.0, 0.0, 0.0);
            for n in 0..labels.len() {
                if n == me {
                    continue;
                }
                let (vp, vc) = (table.pdm[m][n], table.crt[m][n]);
                pp += vp * c1_pdm[n];
                cc += vc * c1_crt[n];
                mixed += vp * c1_crt[n] + vc * c1_pdm[n];
            }
            // − E⁽¹⁾ c⁽¹⁾_m; E⁽¹⁾ vanishes here but the term belongs to the formula
            pp -= e1 * c1_pdm[m];
            cc -= e1 * c1_crt[m];
            if pp == 0.0 && cc == 0.0 && mixed == 0.0 {
                continue;
            }
            let d = gap(m, 1.0)?;
            state.push(labels[m], 2, Channel::Pdm, pp / d);
            state.push(labels[m], 2, Channel::Crt, cc / d);
            state.push(labels[m], 2, Channel::PdmCrt, mixed / d);
        }
        let sq = |c: &[f64]| c.iter().map(|x| x * x).sum::<f64>();
        let cross: f64 = c1_pdm.iter().zip(&c1_crt).map(|(a, b)| a * b).sum();
        state.push(label, 2, Channel::Pdm, -0.5 * sq(&c1_pdm));
        state.push(label, 2, Channel::Crt, -0.5 * sq(&c1_crt));
        state.push(label, 2, Channel::PdmCrt, -cross);
    }

    Ok(GenericResult {
        label,
        e0,
        e1,
        e2,
        e2_pdm,
        e2_crt,
        state,
    })
}
