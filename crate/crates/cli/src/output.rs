use std::io::{self, Write};

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// One command result, renderable as a JSON document or a CSV table.
pub struct Output {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub code: u8,
}

impl Output {
    pub fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            header,
            rows,
            code: 0,
        }
    }

    pub fn write(&self, format: Format) -> Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn kind(e: &anyhow::Error) -> &'static str {
    use capax::error::Error;
    match e.downcast_ref::<Error>() {
        Some(Error::Domain(_)) => "domain",
        Some(Error::Parse { .. }) => "parse",
        Some(Error::InvalidProfile(_)) => "invalid_profile",
        Some(Error::WrongKind { .. }) => "wrong_kind",
        Some(Error::InfiniteVolume) => "infinite_volume",
        Some(Error::NoCommonPeriod) => "no_common_period",
        Some(Error::DimensionMismatch(..)) => "dimension_mismatch",
        Some(Error::Unsupported(_)) => "unsupported",
        None if e.downcast_ref::<io::Error>().is_some() => "io",
        None => "input",
    }
}

/// Writes `{"error": {"kind": ..., "message": ...}}` to standard output.
pub fn print_error(e: &anyhow::Error) {
    let doc = json!({ "error": { "kind": kind(e), "message": format!("{e:#}") } });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("plain JSON")
    );
}
