//! Rendering of results in the three output formats.

use std::io::Write;

use serde::Serialize;

use crate::Failure;
use hypermaps::permcount::CountTable;

/// Pretty JSON through `serde_json::Value`, so keys are sorted and re-serializing
/// parsed output reproduces it byte for byte.
pub fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = serde_json::to_string_pretty(&v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn counts_human(out: &mut dyn Write, table: &CountTable) -> Result<(), Failure> {
    for (spec, v, p) in table.iter() {
        let b: Vec<String> = spec.b.iter().map(u32::to_string).collect();
        writeln!(out, "M[a={}] g={} b=({}) = {}  [{}]", spec.a, spec.g, b.join(","), v, p)?;
    }
    Ok(())
}

pub fn counts_csv(out: &mut dyn Write, table: &CountTable) -> Result<(), Failure> {
    table.write_csv(out).map_err(Failure::from)
}

pub fn counts_json(out: &mut dyn Write, table: &CountTable) -> Result<(), Failure> {
    json(out, &table.records())
}

/// Writes plain rows as CSV.
pub fn csv_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}
