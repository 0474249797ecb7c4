//! Perturbative validity checks: the largest coupling-to-gap ratio among dressed levels and
//! the two heuristic bounds on `f` and `α`.

use super::coupling::{CouplingTable, VChannels};
use crate::error::Result;
use crate::model::{unperturbed_energy, LevelLabel, SystemParams};

/// Heuristic upper bound on `f` below which the expansion is trusted.
pub const F_BOUND: f64 = 0.4;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    /// `max |V_mn / (ε_m − ε_n)|` over coupled pairs.
    pub max_ratio: f64,
    /// Pair attaining `max_ratio`; `None` when nothing couples.
    pub worst_pair: Option<(LevelLabel, LevelLabel)>,
    pub alpha_bound: f64,
    /// `f < 0.4`
    pub f_ok: bool,
    /// `|α| < alpha_bound`
    pub alpha_ok: bool,
}

impl ValidityReport {
    pub fn all_ok(&self) -> bool {
        self.f_ok && self.alpha_ok && self.max_ratio < 1.0
    }
}

/// `2/((2+√3) f) − 2`; unbounded at `f = 0`.
pub fn alpha_bound(f: f64) -> f64 {
    if f == 0.0 {
        return f64::INFINITY;
    }
    2.0 / ((2.0 + 3f64.sqrt()) * f) - 2.0
}

/// Scan every pair among `|g,0⟩` and `|φ_n^±⟩`, `n ≤ k_max`.
///
/// At `λ = 0` nothing couples and the ratio is zero. A coupled pair with zero gap reports
/// an infinite ratio.
pub fn validity_metrics(p: &SystemParams, k_max: usize) -> Result<ValidityReport> {
    let bound = alpha_bound(p.f());
    let mut report = ValidityReport {
        max_ratio: 0.0,
        worst_pair: None,
        alpha_bound: bound,
        f_ok: p.f() < F_BOUND,
        alpha_ok: p.alpha().abs() < bound,
    };
    if p.lambda() == 0.0 {
        return Ok(report);
    }
    let labels = LevelLabel::all_up_to(k_max);
    let energies: Vec<f64> = labels.iter().map(|&l| unperturbed_energy(l, p)).collect();
    let table = CouplingTable::new(&labels, p, VChannels::ALL)?;
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            let v = table.total(i, j);
            if v == 0.0 {
                continue;
            }
            let ratio = (v / (energies[i] - energies[j])).abs();
            if ratio > report.max_ratio {
                report.max_ratio = ratio;
                report.worst_pair = Some((labels[i], labels[j]));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn alpha_bound_value() {
        assert_relative_eq!(alpha_bound(0.05), 8.717967697244909, max_relative = 1e-14);
        assert!(alpha_bound(0.0).is_infinite());
    }

    #[test]
    fn resonant_ratio() {
        let p = SystemParams::normalized(0.05, 1.0, 0.0).unwrap();
        let r = validity_metrics(&p, 5).unwrap();
        assert_relative_eq!(r.max_ratio, 0.15297839890939668, max_relative = 1e-10);
        assert_eq!(r.worst_pair, Some((LevelLabel::plus(4), LevelLabel::minus(5))));
        assert!(r.f_ok && r.alpha_ok);
    }

    #[test]
    fn vanishing_coupling() {
        let p = SystemParams::normalized(0.05, 1.0, 0.0).unwrap().with_lambda(0.0).unwrap();
        let r = validity_metrics(&p, 5).unwrap();
        assert_eq!(r.max_ratio, 0.0);
        let tiny = SystemParams::normalized(1e-8, 1.0, 0.0).unwrap();
        assert!(validity_metrics(&tiny, 5).unwrap().max_ratio < 1e-6);
    }

    #[test]
    fn flags_are_strict() {
        let p = SystemParams::normalized(0.4, 0.0, 0.0).unwrap();
        assert!(!validity_metrics(&p, 1).unwrap().f_ok);
        let p = SystemParams::normalized(0.05, alpha_bound(0.05), 0.0).unwrap();
        assert!(!validity_metrics(&p, 1).unwrap().alpha_ok);
    }
}
