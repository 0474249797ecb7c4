use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{basis_dim, BareAmplitudes, BareState, SystemParams};

/// Which coupling terms to include when building the truncated Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Terms {
    /// `−λ(a σ₊ + a† σ₋)`
    pub rotating: bool,
    /// `−λ(a† σ₊ + a σ₋)`
    pub counter_rotating: bool,
    /// `−λα σ_z (a† + a)`
    pub pdm: bool,
}

impl Terms {
    pub const FULL: Terms = Terms {
        rotating: true,
        counter_rotating: true,
        pdm: true,
    };

    /// The Jaynes–Cummings part only.
    pub const ROTATING: Terms = Terms {
        rotating: true,
        counter_rotating: false,
        pdm: false,
    };

    /// Standard quantum Rabi model (no permanent-dipole coupling).
    pub const RABI: Terms = Terms {
        rotating: true,
        counter_rotating: true,
        pdm: false,
    };
}

/// Dense real symmetric Hamiltonian on photon numbers `0..=n_max`.
#[derive(Debug, Clone)]
pub struct TruncatedHamiltonian {
    pub n_max: usize,
    pub params: SystemParams,
    pub matrix: DMatrix<f64>,
}

impl TruncatedHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, bra: BareState, ket: BareState) -> f64 {
        self.matrix[(bra.index(), ket.index())]
    }

    pub fn apply(&self, v: &BareAmplitudes) -> BareAmplitudes {
        let x = nalgebra::DVector::from_column_slice(v.as_slice());
        BareAmplitudes::from_vec((&self.matrix * x).as_slice().to_vec())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }
}

pub fn build(p: &SystemParams, n_max: usize) -> Result<TruncatedHamiltonian> {
    build_with(p, n_max, Terms::FULL)
}

pub fn build_with(p: &SystemParams, n_max: usize, terms: Terms) -> Result<TruncatedHamiltonian> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be >= 1".into()));
    }
    let dim = basis_dim(n_max);
    let mut m = DMatrix::<f64>::zeros(dim, dim);
    let (wc, w0) = (p.omega_c(), p.omega_0());
    for n in 0..=n_max {
        for s in [BareState::g(n), BareState::e(n)] {
            m[(s.index(), s.index())] = s.energy(wc, w0);
        }
    }
    let lam = p.lambda();
    let lam_alpha = lam * p.alpha();
    let mut set = |a: BareState, b: BareState, v: f64| {
        m[(a.index(), b.index())] = v;
        m[(b.index(), a.index())] = v;
    };
    for n in 0..n_max {
        let s = (n as f64 + 1.0).sqrt();
        if terms.pdm {
            // σ_z = −1 on |g⟩, +1 on |e⟩, with the overall −λα
            set(BareState::g(n + 1), BareState::g(n), lam_alpha * s);
            set(BareState::e(n + 1), BareState::e(n), -lam_alpha * s);
        }
        if terms.rotating {
            set(BareState::e(n), BareState::g(n + 1), -lam * s);
        }
        if terms.counter_rotating {
            set(BareState::e(n + 1), BareState::g(n), -lam * s);
        }
    }
    Ok(TruncatedHamiltonian {
        n_max,
        params: *p,
        matrix: m,
    })
}
