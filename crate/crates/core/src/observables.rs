//! Quantities derived from the engines: bare-basis populations, Bloch–Siegert shifts and
//! parameter sweeps.

use std::collections::BTreeMap;

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{matched_spectrum, SpectrumResult, DEFAULT_N_MAX_START, DEFAULT_TOL};
use crate::model::{
    dressed_data, reference_vector, unperturbed_energy, BareAmplitudes, BareState, Electronic, Branch, LevelLabel, SystemParams,
};
use crate::perturbation::{
    dsp_energy, e2_excited, e2_ground, generic_rs, psi1_excited, psi_ground, required_cut,
    validity_metrics, PerturbationOrder, StateExpansion,
};

/// Coupling ratio above which populations are still produced but flagged in the log.
pub const WARN_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dsp,
    Exact,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dsp => "dsp",
            Method::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationTable {
    pub level: LevelLabel,
    pub entries: BTreeMap<BareState, f64>,
    /// `None` for exact eigenvectors.
    pub order: Option<PerturbationOrder>,
    pub method: Method,
    pub normalized: bool,
}

impl PopulationTable {
    fn from_amplitudes(
        level: LevelLabel,
        v: &BareAmplitudes,
        order: Option<PerturbationOrder>,
        method: Method,
    ) -> Self {
        let v = v.normalized();
        let entries = v.iter().map(|(s, a)| (s, a * a)).collect();
        PopulationTable {
            level,
            entries,
            order,
            method,
            normalized: true,
        }
    }

    /// Zero for states outside the table.
    pub fn probability(&self, s: BareState) -> f64 {
        self.entries.get(&s).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Largest absolute difference over the union of both supports.
    pub fn max_difference(&self, other: &PopulationTable) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|&s| (self.probability(s) - other.probability(s)).abs())
            .fold(0.0, f64::max)
    }
}

/// Corrected state of `level` through `order`, in intermediate normalization.
///
/// Ground and first-order dressed states come from the closed forms; second-order dressed
/// states come from the generic engine.
pub fn corrected_state(
    level: LevelLabel,
    p: &SystemParams,
    order: PerturbationOrder,
) -> Result<StateExpansion> {
    match level {
        LevelLabel::Ground => psi_ground(p, order),
        _ if order == PerturbationOrder::ZERO => Ok(StateExpansion::unperturbed(level)),
        LevelLabel::Dressed { n, branch } if order == PerturbationOrder::FIRST => {
            psi1_excited(n, branch, p)
        }
        _ => Ok(generic_rs(level, p, order, required_cut(level, order))?.state),
    }
}

/// Bare-basis probabilities of the perturbatively corrected `level`.
///
/// Refuses when some coupling-to-gap ratio near the level reaches 1 and logs a warning
/// above [`WARN_RATIO`]. At `λ = 0` the bare eigenstate is returned.
pub fn populations(
    level: LevelLabel,
    p: &SystemParams,
    order: PerturbationOrder,
) -> Result<PopulationTable> {
    if p.lambda() == 0.0 {
        let v = reference_vector(level, p, level.max_photons().max(1))?;
        return Ok(PopulationTable::from_amplitudes(level, &v, Some(order), Method::Dsp));
    }
    let report = validity_metrics(p, level.max_photons() + 2)?;
    if report.max_ratio >= 1.0 {
        return Err(Error::Breakdown {
            ratio: report.max_ratio,
        });
    }
    if report.max_ratio > WARN_RATIO {
        warn!(
            "coupling ratio {:.3} near {level} exceeds {WARN_RATIO}; populations may be inaccurate",
            report.max_ratio
        );
    }
    let psi = corrected_state(level, p, order)?;
    let v = psi.to_bare(p, psi.max_photons().max(1))?;
    Ok(PopulationTable::from_amplitudes(level, &v, Some(order), Method::Dsp))
}

/// Labels whose greedy matching fixes the eigenvector of `level`.
fn matching_set(levels: &[LevelLabel]) -> Vec<LevelLabel> {
    let top = levels
        .iter()
        .filter_map(|l| match l {
            LevelLabel::Dressed { n, .. } => Some(*n),
            LevelLabel::Ground => None,
        })
        .max();
    match top {
        Some(n) => LevelLabel::all_up_to(n),
        None => vec![LevelLabel::Ground],
    }
}

/// Convergence settings for the exact engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSettings {
    /// Eigenvalue tolerance in units of `ω_c`.
    pub tol: f64,
    pub n_max_start: usize,
}

impl Default for ExactSettings {
    fn default() -> Self {
        ExactSettings {
            tol: DEFAULT_TOL,
            n_max_start: DEFAULT_N_MAX_START,
        }
    }
}

/// Converged exact spectrum with `levels` (and everything below them) matched.
pub fn exact_spectrum_with(
    p: &SystemParams,
    levels: &[LevelLabel],
    settings: ExactSettings,
) -> Result<SpectrumResult> {
    matched_spectrum(
        p,
        &matching_set(levels),
        settings.tol * p.omega_c(),
        settings.n_max_start,
    )
}

/// [`exact_spectrum_with`] at the default tolerance `1e-10·ω_c`.
pub fn exact_spectrum(p: &SystemParams, levels: &[LevelLabel]) -> Result<SpectrumResult> {
    exact_spectrum_with(p, levels, ExactSettings::default())
}

/// Bare-basis probabilities of the exact eigenvector matched to `level`.
pub fn exact_populations(level: LevelLabel, p: &SystemParams) -> Result<PopulationTable> {
    Ok(exact_population_tables(p, &[level])?.remove(0))
}

/// [`exact_populations`] for several levels from a single diagonalization.
pub fn exact_population_tables(p: &SystemParams, levels: &[LevelLabel]) -> Result<Vec<PopulationTable>> {
    let s = exact_spectrum(p, levels)?;
    Ok(levels
        .iter()
        .map(|&l| {
            let v = s.vector_of(l).expect("requested level is matched");
            PopulationTable::from_amplitudes(l, v, None, Method::Exact)
        })
        .collect())
}

/// Shift of the transition `|g,0⟩ → upper` away from its unperturbed value `ε_k^± + ω₀/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsShift {
    pub upper: LevelLabel,
    pub lower: LevelLabel,
    pub total: f64,
    /// Channel split; only available for [`Method::Dsp`].
    pub pdm_part: Option<f64>,
    pub crt_part: Option<f64>,
    pub method: Method,
}

pub fn bs_shift_dsp(k: usize, branch: Branch, p: &SystemParams) -> Result<BsShift> {
    let upper = e2_excited(k, branch, p)?;
    let lower = e2_ground(p)?;
    let pdm = upper.pdm - lower.pdm;
    let crt = upper.crt - lower.crt;
    Ok(BsShift {
        upper: LevelLabel::dressed(k, branch),
        lower: LevelLabel::Ground,
        total: pdm + crt,
        pdm_part: Some(pdm),
        crt_part: Some(crt),
        method: Method::Dsp,
    })
}

/// Same shift from the converged exact spectrum; zero at `λ = 0`.
pub fn bs_shift_exact(k: usize, branch: Branch, p: &SystemParams) -> Result<BsShift> {
    let upper = LevelLabel::dressed(k, branch);
    let total = if p.lambda() == 0.0 {
        0.0
    } else {
        let s = exact_spectrum(p, &[upper])?;
        let e_up = s.energy_of(upper).expect("matched");
        let e_g = s.energy_of(LevelLabel::Ground).expect("matched");
        let reference = dressed_data(k, p)?.energy(branch) + 0.5 * p.omega_0();
        (e_up - e_g) - reference
    };
    Ok(BsShift {
        upper,
        lower: LevelLabel::Ground,
        total,
        pdm_part: None,
        crt_part: None,
        method: Method::Exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    /// Level energy through second order, or the exact eigenvalue.
    Energy,
    BsShift,
    BsShiftPdm,
    BsShiftCrt,
    E2Pdm,
    E2Crt,
    /// Probability of one bare state in the (corrected or exact) level.
    Population(BareState),
}

impl Quantity {
    pub fn name(&self) -> String {
        match self {
            Quantity::Energy => "energy".into(),
            Quantity::BsShift => "bs_shift".into(),
            Quantity::BsShiftPdm => "bs_shift_pdm".into(),
            Quantity::BsShiftCrt => "bs_shift_crt".into(),
            Quantity::E2Pdm => "e2_pdm".into(),
            Quantity::E2Crt => "e2_crt".into(),
            Quantity::Population(s) => {
                let e = match s.electronic {
                    Electronic::G => 'g',
                    Electronic::E => 'e',
                };
                format!("pop_{e}{}", s.photons)
            }
        }
    }

    /// Whether `method` defines this quantity for `level`.
    pub fn applies(&self, level: LevelLabel, method: Method) -> bool {
        let dressed = matches!(level, LevelLabel::Dressed { .. });
        match self {
            Quantity::Energy | Quantity::Population(_) => true,
            Quantity::BsShift => dressed,
            Quantity::BsShiftPdm | Quantity::BsShiftCrt => dressed && method == Method::Dsp,
            Quantity::E2Pdm | Quantity::E2Crt => method == Method::Dsp,
        }
    }
}

/// Which frequency stays fixed while `δ = ω₀ − ω_c` is swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    /// `ω_c` fixed, `ω₀ = ω_c + δ`.
    Cavity(f64),
    /// `ω₀` fixed, `ω_c = ω₀ − δ`; `f` is still relative to `ω_c`.
    Transition(f64),
}

impl Frame {
    pub fn params(self, f: f64, alpha: f64, delta: f64) -> Result<SystemParams> {
        match self {
            Frame::Cavity(wc) => SystemParams::from_f(wc, wc + delta, f, alpha),
            Frame::Transition(w0) => SystemParams::from_f(w0 - delta, w0, f, alpha),
        }
    }
}

/// Grid over `f`, `α`, `δ`; `δ` is absolute (same units as the frame).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub f: Vec<f64>,
    pub alpha: Vec<f64>,
    pub delta: Vec<f64>,
    pub frame: Frame,
    pub order: PerturbationOrder,
    pub exact: ExactSettings,
}

impl SweepSpec {
    /// Single point with `ω_c = 1`.
    pub fn point(f: f64, alpha: f64, delta: f64) -> Self {
        SweepSpec {
            f: vec![f],
            alpha: vec![alpha],
            delta: vec![delta],
            frame: Frame::Cavity(1.0),
            order: PerturbationOrder::SECOND,
            exact: ExactSettings::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.f.len() * self.alpha.len() * self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in row order: `f` outermost, `δ` innermost.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len());
        for &f in &self.f {
            for &a in &self.alpha {
                for &d in &self.delta {
                    out.push((f, a, d));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub f: f64,
    pub alpha: f64,
    pub delta: f64,
    pub level: LevelLabel,
    pub quantity: Quantity,
    pub method: Method,
    pub value: Option<f64>,
    /// Machine-readable error code when `value` is absent.
    pub error: Option<&'static str>,
    /// Photon cutoff accepted by the exact engine.
    pub n_max: Option<usize>,
}

fn dsp_value(q: Quantity, level: LevelLabel, p: &SystemParams, order: PerturbationOrder) -> Result<f64> {
    let shift = |l: LevelLabel| match l {
        LevelLabel::Dressed { n, branch } => bs_shift_dsp(n, branch, p),
        LevelLabel::Ground => unreachable!("shift quantities skip the ground level"),
    };
    Ok(match q {
        Quantity::Energy => dsp_energy(level, p)?.total(),
        Quantity::E2Pdm => dsp_energy(level, p)?.e2_pdm,
        Quantity::E2Crt => dsp_energy(level, p)?.e2_crt,
        Quantity::BsShift => shift(level)?.total,
        Quantity::BsShiftPdm => shift(level)?.pdm_part.unwrap_or(0.0),
        Quantity::BsShiftCrt => shift(level)?.crt_part.unwrap_or(0.0),
        Quantity::Population(s) => populations(level, p, order)?.probability(s),
    })
}

fn exact_value(q: Quantity, level: LevelLabel, p: &SystemParams, s: &SpectrumResult) -> f64 {
    let energy = |l| s.energy_of(l).expect("matched");
    match q {
        Quantity::Energy => energy(level),
        Quantity::BsShift => {
            let reference = unperturbed_energy(level, p) + 0.5 * p.omega_0();
            energy(level) - energy(LevelLabel::Ground) - reference
        }
        Quantity::Population(b) => {
            let v = s.vector_of(level).expect("matched").normalized();
            let a = if b.photons <= v.n_max() { v.get(b) } else { 0.0 };
            a * a
        }
        _ => unreachable!("quantity not defined for the exact engine"),
    }
}

fn sweep_point(
    (f, alpha, delta): (f64, f64, f64),
    spec: &SweepSpec,
    quantities: &[Quantity],
    levels: &[LevelLabel],
    methods: &[Method],
) -> Vec<SweepRow> {
    let params = spec.frame.params(f, alpha, delta);
    let exact = if methods.contains(&Method::Exact) {
        Some(params.clone().and_then(|p| exact_spectrum_with(&p, levels, spec.exact)))
    } else {
        None
    };
    let mut rows = Vec::new();
    for &level in levels {
        for &q in quantities {
            for &m in methods {
                if !q.applies(level, m) {
                    continue;
                }
                let mut row = SweepRow {
                    f,
                    alpha,
                    delta,
                    level,
                    quantity: q,
                    method: m,
                    value: None,
                    error: None,
                    n_max: None,
                };
                let result = match (&params, m) {
                    (Err(e), _) => Err(e.clone()),
                    (Ok(p), Method::Dsp) => dsp_value(q, level, p, spec.order),
                    (Ok(p), Method::Exact) => match exact.as_ref().expect("exact requested") {
                        Ok(s) => {
                            row.n_max = Some(s.n_max_used);
                            Ok(exact_value(q, level, p, s))
                        }
                        Err(e) => Err(e.clone()),
                    },
                };
                match result {
                    Ok(v) => row.value = Some(v),
                    Err(e) => row.error = Some(e.code()),
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Evaluate every quantity for every level and method at each grid point.
///
/// Points run in parallel; rows come back in grid order, then level, quantity and method
/// in the order given. Failures are recorded per row and never abort the sweep.
pub fn sweep(
    spec: &SweepSpec,
    quantities: &[Quantity],
    levels: &[LevelLabel],
    methods: &[Method],
) -> Vec<SweepRow> {
    spec.points()
        .into_par_iter()
        .map(|pt| sweep_point(pt, spec, quantities, levels, methods))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
