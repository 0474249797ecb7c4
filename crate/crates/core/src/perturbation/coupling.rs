//! Matrix elements of `V = −λ[α σ_z (a† + a) + a† σ₊ + a σ₋]` between unperturbed levels,
//! computed by acting with the operators on bare-basis expansions.

use crate::error::Result;
use crate::model::{dressed_vector, BareAmplitudes, BareState, Electronic, LevelLabel, SystemParams};

/// Selects the parts of `V` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VChannels {
    pub pdm: bool,
    pub crt: bool,
}

impl VChannels {
    pub const ALL: VChannels = VChannels {
        pdm: true,
        crt: true,
    };
    pub const PDM: VChannels = VChannels {
        pdm: true,
        crt: false,
    };
    pub const CRT: VChannels = VChannels {
        pdm: false,
        crt: true,
    };
}

/// `V|ψ⟩` on a truncation one photon larger than the input's.
pub fn apply_v(psi: &BareAmplitudes, p: &SystemParams, channels: VChannels) -> BareAmplitudes {
    let mut out = BareAmplitudes::zeros(psi.n_max() + 1);
    let lam = p.lambda();
    for (s, amp) in psi.iter() {
        if amp == 0.0 {
            continue;
        }
        let n = s.photons;
        let up = (n as f64 + 1.0).sqrt();
        let down = (n as f64).sqrt();
        if channels.pdm {
            let sz = match s.electronic {
                Electronic::G => -1.0,
                Electronic::E => 1.0,
            };
            let c = -lam * p.alpha() * sz * amp;
            let raised = BareState {
                photons: n + 1,
                ..s
            };
            out.add(raised, c * up);
            if n > 0 {
                let lowered = BareState {
                    photons: n - 1,
                    ..s
                };
                out.add(lowered, c * down);
            }
        }
        if channels.crt {
            match s.electronic {
                // a† σ₊ |g,n⟩ = √(n+1) |e,n+1⟩
                Electronic::G => out.add(BareState::e(n + 1), -lam * up * amp),
                // a σ₋ |e,n⟩ = √n |g,n−1⟩
                Electronic::E => {
                    if n > 0 {
                        out.add(BareState::g(n - 1), -lam * down * amp)
                    }
                }
            }
        }
    }
    out
}

pub fn vmat_channels(
    bra: LevelLabel,
    ket: LevelLabel,
    p: &SystemParams,
    channels: VChannels,
) -> Result<f64> {
    let n_max = bra.max_photons().max(ket.max_photons());
    let ket_v = dressed_vector(ket, p, n_max)?;
    let bra_v = dressed_vector(bra, p, n_max + 1)?;
    Ok(bra_v.dot(&apply_v(&ket_v, p, channels)))
}

/// `⟨bra|V|ket⟩`.
pub fn vmat(bra: LevelLabel, ket: LevelLabel, p: &SystemParams) -> Result<f64> {
    vmat_channels(bra, ket, p, VChannels::ALL)
}

/// Channel-resolved coupling matrix over a fixed list of levels.
pub(crate) struct CouplingTable {
    pub pdm: Vec<Vec<f64>>,
    pub crt: Vec<Vec<f64>>,
}

impl CouplingTable {
    pub fn new(labels: &[LevelLabel], p: &SystemParams, channels: VChannels) -> Result<Self> {
        let n_max = labels.iter().map(|l| l.max_photons()).max().unwrap_or(0);
        let kets: Vec<BareAmplitudes> = labels
            .iter()
            .map(|&l| dressed_vector(l, p, n_max))
            .collect::<Result<_>>()?;
        let bras: Vec<BareAmplitudes> = kets.iter().map(|k| k.resized(n_max + 1)).collect();
        let matrix = |on: bool, ch: VChannels| -> Vec<Vec<f64>> {
            let mut m = vec![vec![0.0; labels.len()]; labels.len()];
            if !on {
                return m;
            }
            for (j, ket) in kets.iter().enumerate() {
                let vk = apply_v(ket, p, ch);
                for (i, bra) in bras.iter().enumerate() {
                    m[i][j] = bra.dot(&vk);
                }
            }
            m
        };
        Ok(CouplingTable {
            pdm: matrix(channels.pdm, VChannels::PDM),
            crt: matrix(channels.crt, VChannels::CRT),
        })
    }

    pub fn total(&self, i: usize, j: usize) -> f64 {
        self.pdm[i][j] + self.crt[i][j]
    }
}
