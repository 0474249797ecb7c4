use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use cqed_core::model::{BareState, Branch, LevelLabel};
use cqed_core::molecules::{builtin_catalog, find, load_catalog, MoleculeRecord};
use cqed_core::observables::{sweep, ExactSettings, Frame};
use cqed_core::perturbation::{validity_metrics, PerturbationOrder};
use cqed_core::{Method, Quantity, SweepSpec};

use crate::args::{Cli, Command, EngineArgs, EngineChoice, ModelArgs};
use crate::report::{Report, Row};
use crate::{ConfigError, RowErrors};

/// Model parameters after defaults and catalog lookup.
struct Model {
    source: String,
    frame: Frame,
    f: Vec<f64>,
    alpha: Vec<f64>,
    delta: Vec<f64>,
    unit: &'static str,
}

impl Model {
    fn describe(&self) -> Vec<String> {
        let frame = match self.frame {
            Frame::Cavity(wc) => format!("omega_c = {wc} fixed, omega_0 = omega_c + delta"),
            Frame::Transition(w0) => format!("omega_0 = {w0} cm^-1 fixed, omega_c = omega_0 - delta"),
        };
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        vec![
            format!("source: {}", self.source),
            format!("frame: {frame}; energies in {}", self.unit),
            format!("f: {}", list(&self.f)),
            format!("alpha: {}", list(&self.alpha)),
            format!("delta: {}", list(&self.delta)),
        ]
    }
}

fn catalog(path: Option<&Path>) -> Result<Vec<MoleculeRecord>, ConfigError> {
    match path {
        Some(p) => load_catalog(p).map_err(|e| ConfigError(e.to_string())),
        None => Ok(builtin_catalog()),
    }
}

fn check_grid(name: &str, v: &[f64], min: f64) -> Result<(), ConfigError> {
    match v.iter().find(|x| !x.is_finite() || **x < min) {
        Some(x) => Err(ConfigError(format!("{name} = {x} is out of range (must be >= {min})"))),
        None => Ok(()),
    }
}

fn resolve(m: &ModelArgs, catalog_path: Option<&Path>) -> Result<Model, ConfigError> {
    let f = m.f_grid.clone().map(|g| g.0).unwrap_or_else(|| vec![m.f.unwrap_or(0.05)]);
    let delta = m
        .delta_grid
        .clone()
        .map(|g| g.0)
        .unwrap_or_else(|| vec![m.delta.unwrap_or(0.0)]);
    check_grid("f", &f, 0.0)?;
    check_grid("delta", &delta, f64::NEG_INFINITY)?;
    if let Some(name) = &m.molecule {
        let records = catalog(catalog_path)?;
        let r = find(&records, name).map_err(|e| ConfigError(e.to_string()))?;
        let alpha = r.alpha().map_err(|e| ConfigError(e.to_string()))?;
        return Ok(Model {
            source: r.id(),
            frame: Frame::Transition(r.omega0_cm),
            f,
            alpha: vec![alpha],
            delta,
            unit: "cm^-1",
        });
    }
    let alpha = m
        .alpha_grid
        .clone()
        .map(|g| g.0)
        .unwrap_or_else(|| vec![m.alpha.unwrap_or(0.0)]);
    check_grid("alpha", &alpha, f64::NEG_INFINITY)?;
    let wc = m.omega_c.unwrap_or(1.0);
    if !(wc > 0.0 && wc.is_finite()) {
        return Err(ConfigError(format!("omega-c = {wc} must be > 0")));
    }
    Ok(Model {
        source: "model".into(),
        frame: Frame::Cavity(wc),
        f,
        alpha,
        delta,
        unit: "omega_c",
    })
}

fn methods(e: EngineChoice) -> Vec<Method> {
    match e {
        EngineChoice::Dsp => vec![Method::Dsp],
        EngineChoice::Exact => vec![Method::Exact],
        EngineChoice::Both => vec![Method::Dsp, Method::Exact],
    }
}

fn spec(model: &Model, e: &EngineArgs) -> SweepSpec {
    SweepSpec {
        f: model.f.clone(),
        alpha: model.alpha.clone(),
        delta: model.delta.clone(),
        frame: model.frame,
        order: PerturbationOrder::new(e.order).expect("clap bounds the order"),
        exact: ExactSettings {
            tol: e.tol,
            n_max_start: e.n_max_start as usize,
        },
    }
}

fn quantity(name: &str) -> Result<Quantity, ConfigError> {
    let q = match name.trim() {
        "energy" => Quantity::Energy,
        "bs_shift" => Quantity::BsShift,
        "bs_shift_pdm" => Quantity::BsShiftPdm,
        "bs_shift_crt" => Quantity::BsShiftCrt,
        "e2_pdm" => Quantity::E2Pdm,
        "e2_crt" => Quantity::E2Crt,
        other => {
            let bad = || ConfigError(format!("unknown quantity '{other}'"));
            let rest = other.strip_prefix("pop_").ok_or_else(bad)?;
            let (kind, n) = rest.split_at(1.min(rest.len()));
            let n: usize = n.parse().map_err(|_| bad())?;
            match kind {
                "g" => Quantity::Population(BareState::g(n)),
                "e" => Quantity::Population(BareState::e(n)),
                _ => return Err(bad()),
            }
        }
    };
    Ok(q)
}

fn header(cli: &Cli, command: &str) -> Vec<String> {
    let mut h = vec![format!(
        "cqed {} (cqed-core {})",
        env!("CARGO_PKG_VERSION"),
        cqed_core::VERSION
    )];
    if !cli.global.no_timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        h.push(format!("generated: unix time {secs}"));
    }
    h.push(format!("command: {command}"));
    h
}

fn engine_lines(e: &EngineArgs) -> Vec<String> {
    vec![
        format!("engine: {:?}; perturbation order {}", e.engine, e.order).to_lowercase(),
        format!(
            "exact engine: tol {:e}*omega_c, n_max doubling from {}",
            e.tol, e.n_max_start
        ),
    ]
}

fn rows(model: &Model, spec: &SweepSpec, q: &[Quantity], levels: &[LevelLabel], m: &[Method]) -> Vec<Row> {
    sweep(spec, q, levels, m)
        .into_iter()
        .map(|r| Row {
            source: model.source.clone(),
            unit: if matches!(r.quantity, Quantity::Population(_)) { "1" } else { model.unit },
            inner: r,
        })
        .collect()
}

fn grid_report(
    cli: &Cli,
    command: &str,
    m: &ModelArgs,
    e: &EngineArgs,
    quantities: &[Quantity],
    levels: &[LevelLabel],
) -> anyhow::Result<Report> {
    let model = resolve(m, cli.global.catalog.as_deref())?;
    let mut h = header(cli, command);
    h.extend(model.describe());
    h.extend(engine_lines(e));
    let levels_line: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    h.push(format!("levels: {}", levels_line.join(",")));
    let spec = spec(&model, e);
    Ok(Report {
        header: h,
        rows: rows(&model, &spec, quantities, levels, &methods(e.engine)),
    })
}

fn table1(cli: &Cli, e: &EngineArgs, f: f64) -> anyhow::Result<Report> {
    let records = catalog(cli.global.catalog.as_deref())?;
    let mut h = header(cli, "table1");
    h.push(format!(
        "resonant shifts of g0 -> 0- at f = {f}, omega_c = omega_0; energies in cm^-1"
    ));
    h.extend(engine_lines(e));
    let mut out = Vec::new();
    for r in &records {
        let alpha = r.alpha().map_err(|e| ConfigError(e.to_string()))?;
        let model = Model {
            source: r.id(),
            frame: Frame::Transition(r.omega0_cm),
            f: vec![f],
            alpha: vec![alpha],
            delta: vec![0.0],
            unit: "cm^-1",
        };
        out.extend(rows(
            &model,
            &spec(&model, e),
            &[Quantity::BsShiftPdm, Quantity::BsShiftCrt, Quantity::BsShift],
            &[LevelLabel::minus(0)],
            &methods(e.engine),
        ));
    }
    Ok(Report { header: h, rows: out })
}

fn validate(cli: &Cli, m: &ModelArgs, k_max: usize) -> anyhow::Result<Vec<String>> {
    let model = resolve(m, cli.global.catalog.as_deref())?;
    let mut lines = Vec::new();
    for &f in &model.f {
        for &alpha in &model.alpha {
            for &delta in &model.delta {
                let p = model
                    .frame
                    .params(f, alpha, delta)
                    .map_err(|e| ConfigError(e.to_string()))?;
                let r = validity_metrics(&p, k_max)?;
                let ok = |b: bool| if b { "ok" } else { "violated" };
                lines.push(format!("point: f={f} alpha={alpha} delta={delta}"));
                lines.push(format!("  f < 0.4: {}", ok(r.f_ok)));
                lines.push(format!(
                    "  alpha bound: {:.3} (|alpha| = {}: {})",
                    r.alpha_bound,
                    alpha.abs(),
                    ok(r.alpha_ok)
                ));
                let pair = r
                    .worst_pair
                    .map(|(a, b)| format!(" between {a} and {b}"))
                    .unwrap_or_default();
                lines.push(format!(
                    "  max coupling ratio: {:.6}{pair} (levels up to k = {k_max})",
                    r.max_ratio
                ));
            }
        }
    }
    Ok(lines)
}

fn emit(cli: &Cli, write: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>) -> anyhow::Result<()> {
    match &cli.global.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| anyhow::anyhow!("cannot create {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> anyhow::Result<()> {
    let report = match &cli.command {
        Command::Spectrum(a) => {
            let levels = a.levels.clone().unwrap_or_else(LevelLabel::seven_lowest);
            grid_report(cli, "spectrum", &a.model, &a.engine, &[Quantity::Energy], &levels)?
        }
        Command::Populations(a) => {
            let top = a.max_photons.unwrap_or(a.level.max_photons() + 3);
            let q: Vec<Quantity> = (0..=top)
                .flat_map(|n| [Quantity::Population(BareState::g(n)), Quantity::Population(BareState::e(n))])
                .collect();
            grid_report(cli, "populations", &a.model, &a.engine, &q, &[a.level])?
        }
        Command::BsShift(a) => {
            let levels: Vec<LevelLabel> = a
                .k
                .iter()
                .flat_map(|&k| [LevelLabel::dressed(k, Branch::Minus), LevelLabel::dressed(k, Branch::Plus)])
                .collect();
            let q = [Quantity::BsShift, Quantity::BsShiftPdm, Quantity::BsShiftCrt];
            grid_report(cli, "bs-shift", &a.model, &a.engine, &q, &levels)?
        }
        Command::Sweep(a) => {
            let levels = a.levels.clone().unwrap_or_else(LevelLabel::seven_lowest);
            let q = a
                .quantities
                .iter()
                .map(|s| quantity(s))
                .collect::<Result<Vec<_>, _>>()?;
            grid_report(cli, "sweep", &a.model, &a.engine, &q, &levels)?
        }
        Command::Table1(a) => table1(cli, &a.engine, a.f)?,
        Command::Validate(a) => {
            let lines = validate(cli, &a.model, a.k_max)?;
            return emit(cli, |w| {
                for l in &lines {
                    writeln!(w, "{l}")?;
                }
                Ok(())
            });
        }
    };
    emit(cli, |w| report.write(w))?;
    match report.first_error() {
        Some(code) => Err(RowErrors {
            count: report.error_count(),
            code,
        }
        .into()),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantity_names_round_trip() {
        for name in ["energy", "bs_shift", "bs_shift_pdm", "bs_shift_crt", "e2_pdm", "e2_crt", "pop_g0", "pop_e12"] {
            assert_eq!(quantity(name).unwrap().name(), name);
        }
        for bad in ["pop_", "pop_x1", "pop_g", "energies"] {
            assert!(quantity(bad).is_err(), "{bad}");
        }
    }
}
