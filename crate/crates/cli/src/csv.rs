//! Minimal CSV emission: fixed header, 17 significant digits, `nan` for gaps.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "nan".to_string()
    }
}

pub fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), number)
}

pub fn write_table(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}
