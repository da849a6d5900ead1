//! Per-trial result rows and their CSV and JSON encodings.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Column order of every report.
pub const COLUMNS: [&str; 9] =
    ["prior", "mode", "strategy", "sampling_filter", "generator", "noise", "trial", "mse_db", "mean_mse_db"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub prior: String,
    pub mode: String,
    pub strategy: String,
    pub sampling_filter: String,
    pub generator: String,
    /// Noise variance.
    pub noise: f64,
    /// `None` on summary rows.
    pub trial: Option<usize>,
    pub mse_db: f64,
    /// Mean of `mse_db` over the trials of the row's method group.
    pub mean_mse_db: f64,
}

impl Row {
    fn group_key(&self) -> (String, String, String, String, String, u64) {
        (
            self.prior.clone(),
            self.mode.clone(),
            self.strategy.clone(),
            self.sampling_filter.clone(),
            self.generator.clone(),
            self.noise.to_bits(),
        )
    }
}

/// One row per method group, in order of first appearance, with `trial`
/// empty and `mse_db` equal to the group mean.
pub fn summarize(rows: &[Row]) -> Vec<Row> {
    let mut seen = std::collections::HashSet::new();
    rows.iter()
        .filter(|r| seen.insert(r.group_key()))
        .map(|r| Row { trial: None, mse_db: r.mean_mse_db, ..r.clone() })
        .collect()
}

/// Fills `mean_mse_db` of every row with its group mean.
pub fn fill_means(rows: &mut [Row]) {
    let mut sums: BTreeMap<_, (f64, usize)> = BTreeMap::new();
    for r in rows.iter() {
        let e = sums.entry(r.group_key()).or_insert((0.0, 0));
        e.0 += r.mse_db;
        e.1 += 1;
    }
    for r in rows.iter_mut() {
        let (s, c) = sums[&r.group_key()];
        r.mean_mse_db = s / c as f64;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows plus free-form provenance such as graph parameters and conventions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

/// CSV holds only the rows (header always present); JSON holds metadata too.
pub fn emit_report<W: Write>(report: &Report, format: Format, mut w: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(&mut w);
            wr.write_record(COLUMNS)?;
            for r in &report.rows {
                wr.serialize(r)?;
            }
            wr.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, report)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn parse_report<R: Read>(r: R, format: Format) -> Result<Report> {
    match format {
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(r);
            let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
            if header != COLUMNS {
                return Err(Error::Format(format!("unexpected columns {header:?}")));
            }
            let rows = rd.deserialize().collect::<std::result::Result<Vec<Row>, _>>()?;
            Ok(Report { metadata: BTreeMap::new(), rows })
        }
        Format::Json => Ok(serde_json::from_reader(r)?),
    }
}
