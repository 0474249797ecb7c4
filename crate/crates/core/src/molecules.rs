//! Molecule catalog and unit conversions.
//!
//! Record files are comma-separated with a header row
//! `name,transition,mu_gg,mu_ee,mu_ge,omega0_cm` and `#` comment lines. Dipoles are in
//! Debye, frequencies in cm⁻¹.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::observables::{bs_shift_dsp, BsShift};
use crate::Branch;

/// 1 D in C·m.
pub const DEBYE: f64 = 3.33564e-30;
/// 1 cm⁻¹ in J.
pub const WAVENUMBER: f64 = 1.986445e-23;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.8541878128e-12;

pub const HEADER: [&str; 6] = ["name", "transition", "mu_gg", "mu_ee", "mu_ge", "omega0_cm"];

const BUILTIN: &str = include_str!("../data/molecules.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub name: String,
    pub transition: String,
    pub mu_gg: f64,
    pub mu_ee: f64,
    pub mu_ge: f64,
    pub omega0_cm: f64,
}

impl MoleculeRecord {
    pub fn new(
        name: impl Into<String>,
        transition: impl Into<String>,
        mu_gg: f64,
        mu_ee: f64,
        mu_ge: f64,
        omega0_cm: f64,
    ) -> Result<Self> {
        let r = MoleculeRecord {
            name: name.into(),
            transition: transition.into(),
            mu_gg,
            mu_ee,
            mu_ge,
            omega0_cm,
        };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.mu_gg, self.mu_ee, self.mu_ge, self.omega0_cm]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidRecord(format!("{}: non-finite field", self.id())));
        }
        if self.mu_ge <= 0.0 {
            return Err(Error::InvalidRecord(format!("{}: mu_ge must be > 0", self.id())));
        }
        if self.omega0_cm <= 0.0 {
            return Err(Error::InvalidRecord(format!("{}: omega0 must be > 0", self.id())));
        }
        Ok(())
    }

    /// `name (transition)`, or just the name when the transition is empty.
    pub fn id(&self) -> String {
        if self.transition.is_empty() {
            self.name.clone()
        } else {
            format!("{} {}", self.name, self.transition)
        }
    }

    /// `(μ_ee − μ_gg) / (2μ_ge)`
    pub fn alpha(&self) -> Result<f64> {
        derive_alpha(self)
    }
}

pub fn derive_alpha(r: &MoleculeRecord) -> Result<f64> {
    if !(r.mu_ge > 0.0) {
        return Err(Error::InvalidRecord(format!("{}: mu_ge must be > 0", r.id())));
    }
    Ok((r.mu_ee - r.mu_gg) / (2.0 * r.mu_ge))
}

/// `λ = μ_ge √(ω_c / (2ε₀V))` with ħω_c the photon energy, returned in cm⁻¹.
pub fn coupling_from_cavity(mu_ge_debye: f64, omega_c_cm: f64, volume_m3: f64) -> Result<f64> {
    if !(mu_ge_debye >= 0.0) || !mu_ge_debye.is_finite() {
        return Err(Error::InvalidParameter(format!("mu_ge must be >= 0, got {mu_ge_debye}")));
    }
    if !(omega_c_cm > 0.0) || !omega_c_cm.is_finite() {
        return Err(Error::InvalidParameter(format!("omega_c must be > 0, got {omega_c_cm}")));
    }
    if !(volume_m3 > 0.0) || !volume_m3.is_finite() {
        return Err(Error::InvalidParameter(format!("volume must be > 0, got {volume_m3}")));
    }
    let photon_energy = omega_c_cm * WAVENUMBER;
    let field = (photon_energy / (2.0 * EPSILON_0 * volume_m3)).sqrt();
    Ok(mu_ge_debye * DEBYE * field / WAVENUMBER)
}

/// Mode volume giving coupling `lambda_cm`; inverse of [`coupling_from_cavity`].
pub fn volume_for_coupling(mu_ge_debye: f64, omega_c_cm: f64, lambda_cm: f64) -> Result<f64> {
    if !(lambda_cm > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be > 0, got {lambda_cm}")));
    }
    let unit = coupling_from_cavity(mu_ge_debye, omega_c_cm, 1.0)?;
    Ok((unit / lambda_cm).powi(2))
}

/// Model parameters in cm⁻¹: `ω₀` from the record, `ω_c = ω₀ − δ`, `λ = f ω_c`.
pub fn params_for(r: &MoleculeRecord, f: f64, delta_cm: f64) -> Result<SystemParams> {
    if !(f > 0.0) {
        return Err(Error::InvalidParameter(format!("f must be > 0, got {f}")));
    }
    let omega_c = r.omega0_cm - delta_cm;
    if !(omega_c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "detuning {delta_cm} cm^-1 leaves omega_c = {omega_c} <= 0"
        )));
    }
    SystemParams::from_f(omega_c, r.omega0_cm, f, r.alpha()?)
}

pub fn read_catalog<R: Read>(reader: R) -> Result<Vec<MoleculeRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Catalog(format!(
            "expected header {}, found {}",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let num = |j: usize| -> Result<f64> {
            row[j].parse().map_err(|_| {
                Error::InvalidRecord(format!("row {}: {} = {:?} is not a number", i + 1, HEADER[j], &row[j]))
            })
        };
        out.push(MoleculeRecord::new(&row[0], &row[1], num(2)?, num(3)?, num(4)?, num(5)?)?);
    }
    Ok(out)
}

pub fn load_catalog(path: &Path) -> Result<Vec<MoleculeRecord>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    read_catalog(file)
}

pub fn write_catalog<W: Write>(records: &[MoleculeRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record([
            r.name.clone(),
            r.transition.clone(),
            r.mu_gg.to_string(),
            r.mu_ee.to_string(),
            r.mu_ge.to_string(),
            r.omega0_cm.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::Catalog(e.to_string()))
}

/// The four bundled records: SrF and three diphenyl transitions.
pub fn builtin_catalog() -> Vec<MoleculeRecord> {
    read_catalog(BUILTIN.as_bytes()).expect("bundled catalog parses")
}

/// Look up by name, or by `name transition` when the name alone is ambiguous.
pub fn find<'a>(records: &'a [MoleculeRecord], query: &str) -> Result<&'a MoleculeRecord> {
    let q = query.trim();
    let exact: Vec<_> = records.iter().filter(|r| r.id() == q).collect();
    if let [one] = exact[..] {
        return Ok(one);
    }
    let by_name: Vec<_> = records.iter().filter(|r| r.name == q).collect();
    match by_name[..] {
        [one] => Ok(one),
        [] => Err(Error::InvalidParameter(format!("unknown molecule {q:?}"))),
        _ => Err(Error::InvalidParameter(format!(
            "molecule {q:?} is ambiguous; use one of: {}",
            by_name.iter().map(|r| r.id()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRow {
    pub record: MoleculeRecord,
    pub alpha: f64,
    pub params: SystemParams,
    /// Lowest transition `|g,0⟩ → |φ₀⁻⟩`, in cm⁻¹.
    pub shift: BsShift,
}

/// Bloch–Siegert shifts of the lowest transition at resonance and coupling `f`, in cm⁻¹.
pub fn resonant_shifts(records: &[MoleculeRecord], f: f64) -> Result<Vec<ShiftRow>> {
    records
        .iter()
        .map(|r| {
            let params = params_for(r, f, 0.0)?;
            Ok(ShiftRow {
                record: r.clone(),
                alpha: r.alpha()?,
                shift: bs_shift_dsp(0, Branch::Minus, &params)?,
                params,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn srf() -> MoleculeRecord {
        builtin_catalog().into_iter().next().unwrap()
    }

    #[test]
    fn builtin_rows() {
        let c = builtin_catalog();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].name, "SrF");
        assert_eq!(c[3].transition, "(1-7)");
        assert_eq!(c[2].omega0_cm, 38500.0);
    }

    #[test]
    fn alpha_values() {
        let c = builtin_catalog();
        assert_eq!(format!("{:.3}", c[0].alpha().unwrap()), "-0.114");
        assert_eq!(format!("{:.3}", c[2].alpha().unwrap()), "0.297");
        assert_eq!(format!("{:.3}", c[3].alpha().unwrap()), "0.504");
        let flat = MoleculeRecord::new("x", "", 1.0, 1.0, 2.0, 100.0).unwrap();
        assert_eq!(flat.alpha().unwrap(), 0.0);
    }

    #[test]
    fn invalid_records_rejected() {
        assert!(MoleculeRecord::new("x", "", 1.0, 2.0, 0.0, 100.0).is_err());
        assert!(MoleculeRecord::new("x", "", 1.0, 2.0, 1.0, -1.0).is_err());
        let mut r = srf();
        r.mu_ge = -1.0;
        assert!(matches!(derive_alpha(&r), Err(Error::InvalidRecord(_))));
    }

    #[test]
    fn coupling_scaling() {
        assert_eq!(coupling_from_cavity(0.0, 1.52e4, 1e-26).unwrap(), 0.0);
        let base = coupling_from_cavity(6.227, 1.52e4, 1e-26).unwrap();
        assert_relative_eq!(coupling_from_cavity(12.454, 1.52e4, 1e-26).unwrap(), 2.0 * base, max_relative = 1e-15);
        assert_relative_eq!(coupling_from_cavity(6.227, 1.52e4, 4e-26).unwrap(), 0.5 * base, max_relative = 1e-15);
        assert!(coupling_from_cavity(-1.0, 1.52e4, 1e-26).is_err());
        assert!(coupling_from_cavity(1.0, 0.0, 1e-26).is_err());
        assert!(coupling_from_cavity(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn srf_cavity_volume() {
        let v = volume_for_coupling(6.227, 1.52e4, 760.0).unwrap();
        assert_relative_eq!(v, 3.227581448516034e-26, max_relative = 1e-12);
        assert_relative_eq!(coupling_from_cavity(6.227, 1.52e4, v).unwrap(), 760.0, max_relative = 1e-14);
    }

    #[test]
    fn resonant_params() {
        let p = params_for(&srf(), 0.05, 0.0).unwrap();
        assert_eq!(p.omega_c(), 15200.0);
        assert_eq!(p.omega_0(), 15200.0);
        assert_relative_eq!(p.lambda(), 760.0, max_relative = 1e-15);
        let p = params_for(&srf(), 0.05, 200.0).unwrap();
        assert_eq!(p.omega_c(), 15000.0);
        assert!(params_for(&srf(), 0.05, 15200.0).is_err());
        assert!(params_for(&srf(), 0.0, 0.0).is_err());
    }

    #[test]
    fn lookup() {
        let c = builtin_catalog();
        assert_eq!(find(&c, "SrF").unwrap().name, "SrF");
        assert_eq!(find(&c, "diphenyl (1-4)").unwrap().transition, "(1-4)");
        assert!(find(&c, "diphenyl").is_err());
        assert!(find(&c, "benzene").is_err());
    }

    #[test]
    fn bad_header() {
        let text = "name,mu_gg\nx,1\n";
        assert!(matches!(read_catalog(text.as_bytes()), Err(Error::Catalog(_))));
        let text = "name,transition,mu_gg,mu_ee,mu_ge,omega0_cm\nx,t,1,abc,1,1\n";
        assert!(matches!(read_catalog(text.as_bytes()), Err(Error::InvalidRecord(_))));
    }
}
