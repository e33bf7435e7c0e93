use std::io::Write;

use serde_json::Value;

use crate::args::Format;

/// Everything a command produces: a JSON document, one flat table for CSV
/// and a human-readable rendering.
pub struct Artifact {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    /// Set when a mathematical check failed; the artifact is still emitted.
    pub failure: Option<String>,
}

impl Artifact {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>, text: String) -> Self {
        Artifact { json, header: header.iter().map(|s| s.to_string()).collect(), rows, text, failure: None }
    }

    pub fn failing_if(mut self, failure: Option<String>) -> Self {
        self.failure = failure;
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<(), crate::CliError> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Format::Text => {
                write!(out, "{}", self.text)?;
                if !self.text.ends_with('\n') {
                    writeln!(out)?;
                }
            }
        }
        Ok(())
    }
}

/// Aligned columns for text output.
pub fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}
