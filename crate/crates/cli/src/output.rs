use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// An artifact with a JSON form (the whole value) and a CSV form (one
/// record per row of its main table).
pub trait Artifact: Serialize {
    type Row: Serialize;
    fn rows(&self) -> Vec<Self::Row>;
}

pub fn emit<A: Artifact>(artifact: &A, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, artifact)?;
            sink.write_all(b"\n")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            for (i, row) in artifact.rows().iter().enumerate() {
                let serde_json::Value::Object(fields) = serde_json::to_value(row)? else {
                    unreachable!("rows are structs");
                };
                if i == 0 {
                    w.write_record(fields.keys())?;
                }
                w.write_record(fields.values().map(cell))?;
            }
            w.flush()?;
        }
    }
    sink.flush()?;
    Ok(())
}

// Same number text as the JSON encoding.
fn cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
