use std::fmt;

/// Electronic level of the two-level molecule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Electronic {
    G,
    E,
}

/// Product state `|electronic, photons⟩`.
///
/// The truncated basis interleaves the two electronic levels per photon number:
/// `index(g,n) = 2n`, `index(e,n) = 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BareState {
    pub electronic: Electronic,
    pub photons: usize,
}

impl BareState {
    pub const fn g(photons: usize) -> Self {
        BareState {
            electronic: Electronic::G,
            photons,
        }
    }

    pub const fn e(photons: usize) -> Self {
        BareState {
            electronic: Electronic::E,
            photons,
        }
    }

    pub fn index(&self) -> usize {
        match self.electronic {
            Electronic::G => 2 * self.photons,
            Electronic::E => 2 * self.photons + 1,
        }
    }

    pub fn from_index(index: usize) -> Self {
        let photons = index / 2;
        if index.is_multiple_of(2) {
            BareState::g(photons)
        } else {
            BareState::e(photons)
        }
    }

    /// Unperturbed energy `n ω_c ∓ ω_0/2`.
    pub fn energy(&self, omega_c: f64, omega_0: f64) -> f64 {
        let n = self.photons as f64;
        match self.electronic {
            Electronic::G => n * omega_c - 0.5 * omega_0,
            Electronic::E => n * omega_c + 0.5 * omega_0,
        }
    }
}

impl Ord for BareState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for BareState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BareState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.electronic {
            Electronic::G => 'g',
            Electronic::E => 'e',
        };
        write!(f, "|{},{}>", s, self.photons)
    }
}

/// Dimension of the truncated basis with photon numbers `0..=n_max`.
pub fn basis_dim(n_max: usize) -> usize {
    2 * (n_max + 1)
}

/// Amplitudes over the truncated bare basis, in [`BareState::index`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct BareAmplitudes {
    n_max: usize,
    amps: Vec<f64>,
}

impl BareAmplitudes {
    pub fn zeros(n_max: usize) -> Self {
        BareAmplitudes {
            n_max,
            amps: vec![0.0; basis_dim(n_max)],
        }
    }

    /// Panics if the length is not `2(n_max+1)` for some `n_max`.
    pub fn from_vec(amps: Vec<f64>) -> Self {
        assert!(
            !amps.is_empty() && amps.len().is_multiple_of(2),
            "bare amplitude vector must have even, nonzero length"
        );
        BareAmplitudes {
            n_max: amps.len() / 2 - 1,
            amps,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.amps
    }

    /// Amplitude of `s`, zero outside the truncation.
    pub fn get(&self, s: BareState) -> f64 {
        self.amps.get(s.index()).copied().unwrap_or(0.0)
    }

    /// Panics if `s` lies outside the truncation.
    pub fn add(&mut self, s: BareState, value: f64) {
        self.amps[s.index()] += value;
    }

    pub fn dot(&self, other: &BareAmplitudes) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> BareAmplitudes {
        let n = self.norm();
        BareAmplitudes {
            n_max: self.n_max,
            amps: self.amps.iter().map(|a| a / n).collect(),
        }
    }

    /// Same state on a (possibly) larger truncation; panics if it would drop nonzero entries.
    pub fn resized(&self, n_max: usize) -> BareAmplitudes {
        let mut out = BareAmplitudes::zeros(n_max);
        for (i, &a) in self.amps.iter().enumerate() {
            if i < out.amps.len() {
                out.amps[i] = a;
            } else {
                assert!(a == 0.0, "resize would drop a nonzero amplitude");
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (BareState, f64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(|(i, &a)| (BareState::from_index(i), a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_layout() {
        assert_eq!(BareState::g(0).index(), 0);
        assert_eq!(BareState::e(0).index(), 1);
        assert_eq!(BareState::g(3).index(), 6);
        assert_eq!(BareState::e(3).index(), 7);
        assert_eq!(basis_dim(4), 10);
    }

    proptest! {
        #[test]
        fn index_is_bijective(i in 0usize..10_000) {
            prop_assert_eq!(BareState::from_index(i).index(), i);
        }
    }
}
