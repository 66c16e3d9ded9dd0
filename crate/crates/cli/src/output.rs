//! Output formats: a manifest header block plus either a flat key/value
//! report or whitespace/comma-separated columns. Everything written here
//! parses back losslessly through the readers below.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-oriented aligned text.
    Table,
    /// Comma-separated values.
    Csv,
    /// Flat `key value` lines.
    Kv,
}

/// Provenance header embedded in every output file.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub command: String,
    pub generated: String,
    pub config_sha256: String,
    /// Resolved parameters in SI units.
    pub parameters: Vec<(String, f64)>,
}

impl Manifest {
    pub fn new(command: &str, config_toml: &str, parameters: Vec<(String, f64)>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config_toml.as_bytes());
        Self {
            command: command.to_string(),
            generated: timestamp(),
            config_sha256: format!("{:x}", hasher.finalize()),
            parameters,
        }
    }

    /// `# key: value` comment block.
    pub fn comment_block(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool: lambda-eit {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# generated: {}", self.generated);
        let _ = writeln!(out, "# config-sha256: {}", self.config_sha256);
        for (key, value) in &self.parameters {
            let _ = writeln!(out, "# param {key}: {value:.12e}");
        }
        out
    }
}

/// RFC 3339 UTC timestamp; honors SOURCE_DATE_EPOCH for reproducible output.
fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    now.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// A flat key/value report.
pub fn render_kv(manifest: &Manifest, entries: &[(String, String)], format: Format) -> String {
    let mut out = manifest.comment_block();
    let sep = match format {
        Format::Csv => ",",
        _ => " ",
    };
    let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (key, value) in entries {
        match format {
            Format::Table => {
                let _ = writeln!(out, "{key:<width$} {value}");
            }
            _ => {
                let _ = writeln!(out, "{key}{sep}{value}");
            }
        }
    }
    out
}

/// Columnar data with a named header row.
pub fn render_columns(
    manifest: &Manifest,
    header: &[&str],
    rows: &[Vec<f64>],
    format: Format,
) -> String {
    let mut out = manifest.comment_block();
    match format {
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for row in rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        _ => {
            let _ = writeln!(out, "# columns: {}", header.join(" "));
            for row in rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v: >20.12e}")).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
    }
    out
}

/// Parse a key/value report back (table, csv or kv renderings alike).
pub fn parse_kv(text: &str) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = match line.split_once(',') {
            Some(pair) => pair,
            None => match line.split_once(char::is_whitespace) {
                Some(pair) => pair,
                None => continue,
            },
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    map
}

/// Parse the `# param name: value` lines of a manifest block.
pub fn parse_manifest_params(text: &str) -> BTreeMap<String, f64> {
    let mut map = BTreeMap::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# param ") {
            if let Some((key, value)) = rest.split_once(':') {
                if let Ok(v) = value.trim().parse::<f64>() {
                    map.insert(key.trim().to_string(), v);
                }
            }
        }
    }
    map
}

/// Parse columnar output back into (header, rows). Accepts both the
/// whitespace and csv renderings.
pub fn parse_columns(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(columns) = line.strip_prefix("# columns:") {
            header = columns.split_whitespace().map(str::to_string).collect();
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = if line.contains(',') {
            line.split(',').collect()
        } else {
            line.split_whitespace().collect()
        };
        match cells.iter().map(|c| c.trim().parse::<f64>()).collect() {
            Ok(row) => rows.push(row),
            // The csv header row lands here; adopt it if none seen yet.
            Err(_) if header.is_empty() => {
                header = cells.iter().map(|c| c.trim().to_string()).collect();
            }
            Err(_) => {}
        }
    }
    (header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> Manifest {
        Manifest::new("test", "[atom]\n", vec![("x_m".into(), 1.25e-3)])
    }

    #[test]
    fn kv_round_trips_in_every_format() {
        let entries = vec![
            ("chi".to_string(), "1.234567890123e-2".to_string()),
            ("delta_n".to_string(), "-7.2e-3".to_string()),
        ];
        for format in [Format::Table, Format::Csv, Format::Kv] {
            let text = render_kv(&manifest(), &entries, format);
            let parsed = parse_kv(&text);
            assert_eq!(parsed.get("chi").unwrap(), "1.234567890123e-2");
            assert_eq!(parsed.get("delta_n").unwrap(), "-7.2e-3");
        }
    }

    #[test]
    fn columns_round_trip_in_both_renderings() {
        let rows = vec![vec![1.0, -2.5e-7], vec![3.25, 4.0e12]];
        for format in [Format::Table, Format::Csv] {
            let text = render_columns(&manifest(), &["a", "b"], &rows, format);
            let (header, parsed) = parse_columns(&text);
            assert_eq!(header, vec!["a", "b"]);
            assert_eq!(parsed, rows, "{format:?}");
        }
    }

    #[test]
    fn manifest_params_parse_back() {
        let text = manifest().comment_block();
        let params = parse_manifest_params(&text);
        assert_eq!(params.get("x_m").copied(), Some(1.25e-3));
    }

    #[test]
    fn source_date_epoch_pins_the_timestamp() {
        // Not set in this process: format sanity only.
        let stamp = timestamp();
        assert!(stamp.ends_with('Z') && stamp.contains('T'), "{stamp}");
    }
}
