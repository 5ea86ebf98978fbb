//! Report envelopes and atomic output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// Tabular body of a CSV report.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    version: &'a str,
    catalog_hash: String,
    config: Value,
    result: Value,
}

fn render_csv(command: &str, config: &Value, table: &Table) -> std::io::Result<Vec<u8>> {
    let mut out = Vec::new();
    writeln!(out, "# command: {command}")?;
    writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# catalog_hash: {}", squeezelab::specfile::catalog_hash())?;
    writeln!(out, "# config: {config}")?;
    let mut w = csv::Writer::from_writer(&mut out);
    w.write_record(&table.header)?;
    for r in &table.rows {
        w.write_record(r)?;
    }
    w.flush()?;
    drop(w);
    Ok(out)
}

pub fn render(command: &str, config: &impl Serialize, result: &impl Serialize, table: impl FnOnce() -> Table, format: Format) -> std::io::Result<Vec<u8>> {
    let config = serde_json::to_value(config)?;
    match format {
        Format::Json => {
            let env = Envelope {
                command,
                version: env!("CARGO_PKG_VERSION"),
                catalog_hash: squeezelab::specfile::catalog_hash(),
                config,
                result: serde_json::to_value(result)?,
            };
            let mut out = serde_json::to_vec_pretty(&env)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => render_csv(command, &config, &table()),
    }
}

/// Writes to a sibling temporary file and renames it into place, or to
/// stdout when no path is given.
pub fn emit(bytes: &[u8], out: Option<&Path>) -> std::io::Result<()> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes)?;
        return stdout.flush();
    };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = std::fs::File::create(&tmp).and_then(|mut f| {
        f.write_all(bytes)?;
        f.sync_all()
    });
    if let Err(e) = result.and_then(|_| std::fs::rename(&tmp, path)) {
        let _ = std::fs::remove_file(&tmp);
        return Err(e);
    }
    Ok(())
}
