//! CSV output: a `#` comment block describing the run, then one self-describing row per value.

use std::io::Write;

use cqed_core::{Method, SweepRow};

pub const COLUMNS: [&str; 10] = [
    "source", "f", "alpha", "delta", "level", "quantity", "engine", "value", "unit", "error",
];

#[derive(Debug, Clone)]
pub struct Row {
    pub source: String,
    pub unit: &'static str,
    pub inner: SweepRow,
}

impl Row {
    fn fields(&self) -> [String; 10] {
        let r = &self.inner;
        [
            self.source.clone(),
            r.f.to_string(),
            r.alpha.to_string(),
            r.delta.to_string(),
            r.level.to_string(),
            r.quantity.name(),
            r.method.name().to_string(),
            r.value.map(|v| v.to_string()).unwrap_or_default(),
            self.unit.to_string(),
            r.error.unwrap_or("").to_string(),
        ]
    }
}

pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.inner.error.is_some()).count()
    }

    pub fn first_error(&self) -> Option<&'static str> {
        self.rows.iter().find_map(|r| r.inner.error)
    }

    /// Range of photon cutoffs accepted by the exact engine.
    pub fn cutoff_range(&self) -> Option<(usize, usize)> {
        let cuts = self
            .rows
            .iter()
            .filter(|r| r.inner.method == Method::Exact)
            .filter_map(|r| r.inner.n_max);
        cuts.fold(None, |acc, n| match acc {
            None => Some((n, n)),
            Some((lo, hi)) => Some((lo.min(n), hi.max(n))),
        })
    }

    pub fn write<W: Write>(&self, mut out: W) -> anyhow::Result<()> {
        for line in &self.header {
            writeln!(out, "# {line}")?;
        }
        if let Some((lo, hi)) = self.cutoff_range() {
            writeln!(out, "# exact cutoff accepted: n_max {lo}..{hi}")?;
        }
        writeln!(out, "# rows: {}, with errors: {}", self.rows.len(), self.error_count())?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for r in &self.rows {
            w.write_record(r.fields())?;
        }
        w.flush()?;
        Ok(())
    }
}
