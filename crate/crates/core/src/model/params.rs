use crate::error::{Error, Result};

/// Physical parameters of one model instance, in a single consistent energy unit (ħ = 1).
///
/// Detuning and normalized coupling are derived on demand, so they can never drift
/// out of sync with the stored frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    omega_c: f64,
    omega_0: f64,
    lambda: f64,
    alpha: f64,
}

impl SystemParams {
    pub fn new(omega_c: f64, omega_0: f64, lambda: f64, alpha: f64) -> Result<Self> {
        let p = SystemParams {
            omega_c,
            omega_0,
            lambda,
            alpha,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds parameters from the normalized coupling `f = λ/ω_c`.
    pub fn from_f(omega_c: f64, omega_0: f64, f: f64, alpha: f64) -> Result<Self> {
        Self::new(omega_c, omega_0, f * omega_c, alpha)
    }

    /// `ω_c = 1` with the molecular frequency set by the detuning `δ = ω_0 − ω_c`.
    pub fn normalized(f: f64, alpha: f64, delta: f64) -> Result<Self> {
        Self::from_f(1.0, 1.0 + delta, f, alpha)
    }

    fn validate(&self) -> Result<()> {
        let all_finite = [self.omega_c, self.omega_0, self.lambda, self.alpha]
            .iter()
            .all(|x| x.is_finite());
        if !all_finite {
            return Err(Error::InvalidParameter("non-finite parameter".into()));
        }
        if self.omega_c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega_c must be > 0, got {}",
                self.omega_c
            )));
        }
        if self.omega_0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega_0 must be > 0, got {}",
                self.omega_0
            )));
        }
        if self.lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be >= 0, got {}",
                self.lambda
            )));
        }
        Ok(())
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn omega_0(&self) -> f64 {
        self.omega_0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Detuning `ω_0 − ω_c`.
    pub fn delta(&self) -> f64 {
        self.omega_0 - self.omega_c
    }

    /// Normalized coupling `λ/ω_c`.
    pub fn f(&self) -> f64 {
        self.lambda / self.omega_c
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega_0, lambda, self.alpha)
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega_0, self.lambda, alpha)
    }

    pub fn with_omega_0(self, omega_0: f64) -> Result<Self> {
        Self::new(self.omega_c, omega_0, self.lambda, self.alpha)
    }

    /// Keeps `ω_c` fixed and moves `ω_0` to realise the requested detuning.
    pub fn with_delta(self, delta: f64) -> Result<Self> {
        self.with_omega_0(self.omega_c + delta)
    }

    /// Denominators smaller than this are treated as degenerate.
    pub(crate) fn degeneracy_threshold(&self) -> f64 {
        1e-9 * self.omega_c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p = SystemParams::new(2.0, 2.5, 0.1, 0.3).unwrap();
        assert_eq!(p.delta(), 0.5);
        assert_eq!(p.f(), 0.05);
        let q = p.with_omega_0(1.5).unwrap();
        assert_eq!(q.delta(), 1.5 - 2.0);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(SystemParams::new(0.0, 1.0, 0.1, 0.0).is_err());
        assert!(SystemParams::new(1.0, -1.0, 0.1, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, -0.1, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, f64::NAN, 0.0).is_err());
        // δ = −ω_c would put ω_0 at zero
        assert!(SystemParams::normalized(0.05, 1.0, -1.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 0.0, 0.0).is_ok());
    }
}
