use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;

use super::hamiltonian::{build, TruncatedHamiltonian};
use crate::error::{Error, Result};
use crate::model::{reference_vector, unperturbed_energy, BareAmplitudes, LevelLabel, SystemParams};

/// Largest matrix the dense solver accepts.
pub const MAX_DIM: usize = 4096;
/// Iteration budget handed to the symmetric QR solver.
pub const EIGEN_MAX_ITERATIONS: usize = 100_000;
/// Relative residual bound `‖Hv − Ev‖ ≤ RESIDUAL_TOL·‖H‖_F` checked on every pair.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Default convergence tolerance, in units of `ω_c`.
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_N_MAX_START: usize = 16;
/// Overlap below which a level assignment is refused.
pub const MIN_MATCH_OVERLAP: f64 = 0.5;
const TIE_OVERLAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelMatch {
    pub index: usize,
    pub overlap: f64,
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<BareAmplitudes>,
    pub n_max_used: usize,
    /// Set by [`converged_spectrum`] once the doubling protocol accepted `n_max_used`.
    pub converged: bool,
    /// Change of the tracked levels in the last doubling step, if one was made.
    pub last_delta: Option<f64>,
    pub max_residual: f64,
    pub matched_labels: BTreeMap<LevelLabel, LevelMatch>,
}

impl SpectrumResult {
    pub fn energy_of(&self, label: LevelLabel) -> Option<f64> {
        self.matched_labels.get(&label).map(|m| self.eigenvalues[m.index])
    }

    pub fn vector_of(&self, label: LevelLabel) -> Option<&BareAmplitudes> {
        self.matched_labels.get(&label).map(|m| &self.eigenvectors[m.index])
    }
}

/// Full dense eigendecomposition with a per-pair residual check.
pub fn eigensolve(h: &TruncatedHamiltonian) -> Result<SpectrumResult> {
    let dim = h.dim();
    if dim > MAX_DIM {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} exceeds dense limit {MAX_DIM}"
        )));
    }
    let eig = SymmetricEigen::try_new(h.matrix.clone(), f64::EPSILON, EIGEN_MAX_ITERATIONS)
        .ok_or(Error::Eigensolver {
            dim,
            residual: f64::NAN,
        })?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let h_norm = h.frobenius_norm();
    let mut eigenvalues = Vec::with_capacity(dim);
    let mut eigenvectors = Vec::with_capacity(dim);
    let mut max_residual = 0.0f64;
    for i in order {
        let e = eig.eigenvalues[i];
        let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        // Deterministic sign: largest component positive.
        let lead = v
            .iter()
            .copied()
            .fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
        if lead < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let v = BareAmplitudes::from_vec(v);
        let hv = h.apply(&v);
        let r = hv
            .as_slice()
            .iter()
            .zip(v.as_slice())
            .map(|(a, b)| (a - e * b).powi(2))
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(r);
        eigenvalues.push(e);
        eigenvectors.push(v);
    }
    if max_residual > RESIDUAL_TOL * h_norm.max(f64::MIN_POSITIVE) {
        return Err(Error::Eigensolver {
            dim,
            residual: max_residual,
        });
    }
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
        n_max_used: h.n_max,
        converged: false,
        last_delta: None,
        max_residual,
        matched_labels: BTreeMap::new(),
    })
}

/// Doubles the photon cutoff from `n_max_start` until the lowest `n_levels` eigenvalues
/// move by less than `tol` between consecutive cutoffs. The smaller cutoff of the final
/// pair is accepted and its spectrum returned.
pub fn converged_spectrum(
    p: &SystemParams,
    n_levels: usize,
    tol: f64,
    n_max_start: usize,
) -> Result<SpectrumResult> {
    if n_levels == 0 {
        return Err(Error::InvalidParameter("n_levels must be >= 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be > 0".into()));
    }
    let mut n_max = n_max_start.max(1).max(n_levels.div_ceil(2));
    let mut current = eigensolve(&build(p, n_max)?)?;
    let mut last_delta = f64::INFINITY;
    loop {
        let next_n = 2 * n_max;
        if 2 * (next_n + 1) > MAX_DIM {
            return Err(Error::NonConvergence { n_max, last_delta });
        }
        let next = eigensolve(&build(p, next_n)?)?;
        let delta = current.eigenvalues[..n_levels]
            .iter()
            .zip(&next.eigenvalues[..n_levels])
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if delta < tol {
            current.converged = true;
            current.last_delta = Some(delta);
            return Ok(current);
        }
        last_delta = delta;
        n_max = next_n;
        current = next;
    }
}

/// [`converged_spectrum`] with tolerance `1e-10·ω_c` and a starting cutoff of 16 photons.
pub fn converged_spectrum_default(p: &SystemParams, n_levels: usize) -> Result<SpectrumResult> {
    converged_spectrum(p, n_levels, DEFAULT_TOL * p.omega_c(), DEFAULT_N_MAX_START)
}

/// Assigns each label the eigenvector with the largest overlap with its unperturbed state.
///
/// Labels are processed in ascending unperturbed energy and each claims its best
/// unclaimed eigenvector; overlaps equal within 1e-9 go to the lower eigenvalue.
pub fn match_levels(
    mut s: SpectrumResult,
    p: &SystemParams,
    labels: &[LevelLabel],
) -> Result<SpectrumResult> {
    let mut ordered: Vec<LevelLabel> = labels.to_vec();
    ordered.sort_by(|a, b| {
        unperturbed_energy(*a, p)
            .total_cmp(&unperturbed_energy(*b, p))
            .then(a.cmp(b))
    });
    ordered.dedup();

    let mut claimed = vec![false; s.eigenvalues.len()];
    let mut matched = BTreeMap::new();
    for label in ordered {
        let reference = reference_vector(label, p, s.n_max_used)?;
        let mut best: Option<LevelMatch> = None;
        for (i, v) in s.eigenvectors.iter().enumerate() {
            if claimed[i] {
                continue;
            }
            let overlap = v.dot(&reference).abs();
            // ascending eigenvalues: strict improvement needed to displace a lower index
            if best.is_none_or(|b| overlap > b.overlap + TIE_OVERLAP) {
                best = Some(LevelMatch { index: i, overlap });
            }
        }
        let best = best.ok_or(Error::AmbiguousMatch { label, overlap: 0.0 })?;
        if best.overlap < MIN_MATCH_OVERLAP {
            return Err(Error::AmbiguousMatch {
                label,
                overlap: best.overlap,
            });
        }
        claimed[best.index] = true;
        matched.insert(label, best);
    }
    s.matched_labels = matched;
    Ok(s)
}

/// Converged spectrum with the given labels matched.
///
/// Convergence is tracked on every eigenvalue up to the highest requested level (counted
/// by unperturbed energy, plus one), so matched energies are converged even when the
/// labels are sparse.
pub fn matched_spectrum(
    p: &SystemParams,
    labels: &[LevelLabel],
    tol: f64,
    n_max_start: usize,
) -> Result<SpectrumResult> {
    let top = labels.iter().map(|l| l.max_photons()).max().unwrap_or(0);
    let ceiling = labels
        .iter()
        .map(|&l| unperturbed_energy(l, p))
        .fold(f64::NEG_INFINITY, f64::max);
    let below = LevelLabel::all_up_to(top + 2)
        .into_iter()
        .filter(|&l| unperturbed_energy(l, p) <= ceiling)
        .count();
    let n_levels = (below + 1).max(labels.len()).max(1);
    let s = converged_spectrum(p, n_levels, tol, n_max_start.max(top))?;
    match_levels(s, p, labels)
}
