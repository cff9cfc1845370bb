use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// Bumped whenever a command's columns change.
pub const SCHEMA_VERSION: u32 = 1;

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// CSV with a `# satotate <command> v<N>` comment line, or a JSON array.
pub fn emit<R: Serialize>(command: &str, rows: &[R], out: &OutputArgs) -> Result<(), CliError> {
    let mut w = sink(out.out.as_deref())?;
    match out.format {
        Format::Csv => {
            writeln!(w, "# satotate {command} v{SCHEMA_VERSION}")?;
            let mut csv = csv::Writer::from_writer(&mut w);
            for r in rows {
                csv.serialize(r)?;
            }
            csv.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}
