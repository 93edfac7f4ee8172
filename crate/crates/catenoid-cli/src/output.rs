//! Output envelope and serialization helpers. Every command emits the same
//! top-level JSON shape so downstream tooling can dispatch on `command`:
//! { command, inputs, results, meta }. Output is deterministic: identical
//! inputs and tool version produce byte-identical bytes.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub rel_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<f64>,
}

impl Meta {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION"),
            rel_tol,
            grid_n: None,
            band: None,
        }
    }

    pub fn with_grid(mut self, n: usize) -> Self {
        self.grid_n = Some(n);
        self
    }

    pub fn with_band(mut self, band: f64) -> Self {
        self.band = Some(band);
        self
    }
}

#[derive(Serialize)]
pub struct Envelope<I: Serialize, R: Serialize> {
    pub command: &'static str,
    pub inputs: I,
    pub results: R,
    pub meta: Meta,
}

pub fn render<I: Serialize, R: Serialize>(envelope: &Envelope<I, R>) -> String {
    let mut text = serde_json::to_string_pretty(envelope).expect("serializable envelope");
    text.push('\n');
    text
}

/// 17 significant digits, '.' decimal separator, locale independent.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write `content` to the path, surfacing I/O problems for exit code 4.
pub fn write_file(path: &Path, content: &str) -> std::io::Result<()> {
    let mut file = File::create(path)?;
    file.write_all(content.as_bytes())
}
